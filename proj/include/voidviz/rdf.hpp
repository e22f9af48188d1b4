#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace voidviz {

namespace iri_const {
inline constexpr std::string_view xsd_string =
    "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view xsd_integer =
    "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view xsd_decimal =
    "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view xsd_double =
    "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view xsd_boolean =
    "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view rdf_type =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view rdf_lang_string =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace iri_const

enum class TermKind { Iri, Blank, Literal };

// An RDF term. `value` holds the IRI string, the blank node label, or the
// literal lexical form depending on `kind`. Datatype and language are only
// meaningful for literals; a literal with a language tag always has the
// rdf:langString datatype.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::string datatype;
  std::string language;

  static Term iri(std::string v) {
    return Term{TermKind::Iri, std::move(v), {}, {}};
  }
  static Term blank(std::string label) {
    return Term{TermKind::Blank, std::move(label), {}, {}};
  }
  static Term literal(std::string lexical,
                      std::string datatype = std::string(iri_const::xsd_string),
                      std::string language = {}) {
    if (!language.empty()) datatype = std::string(iri_const::rdf_lang_string);
    return Term{TermKind::Literal, std::move(lexical), std::move(datatype),
                std::move(language)};
  }

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_blank() const { return kind == TermKind::Blank; }
  bool is_literal() const { return kind == TermKind::Literal; }

  bool operator==(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  bool operator==(const Triple&) const = default;
};

namespace detail {
inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace detail

struct TermHash {
  std::size_t operator()(const Term& t) const {
    std::size_t h = static_cast<std::size_t>(t.kind);
    h = detail::hash_mix(h, std::hash<std::string>{}(t.value));
    if (t.kind == TermKind::Literal) {
      h = detail::hash_mix(h, std::hash<std::string>{}(t.datatype));
      h = detail::hash_mix(h, std::hash<std::string>{}(t.language));
    }
    return h;
  }
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    TermHash th;
    std::size_t h = th(t.subject);
    h = detail::hash_mix(h, th(t.predicate));
    h = detail::hash_mix(h, th(t.object));
    return h;
  }
};

using PrefixMap = std::map<std::string, std::string>;

// A deduplicated triple collection preserving first-insertion order, plus
// the prefix map in effect at the end of the parse that produced it.
class Graph {
 public:
  // Returns false when the triple was already present.
  bool insert(Triple t) {
    if (!seen_.insert(t).second) return false;
    triples_.push_back(std::move(t));
    return true;
  }

  bool contains(const Triple& t) const { return seen_.count(t) != 0; }

  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }

  bool operator==(const Graph& other) const {
    return triples_ == other.triples_;
  }

 private:
  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> seen_;
  PrefixMap prefixes_;
};

enum class Severity { Error, Warning };

// Positioned parser message. Line and column are 1-based; columns count
// Unicode scalar values, not bytes.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::size_t line = 1;
  std::size_t column = 1;
  std::string message;
};

}  // namespace voidviz
