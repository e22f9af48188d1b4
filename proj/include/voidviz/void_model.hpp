#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voidviz/rdf.hpp"

// VoID interpretation of an RDF graph: datasets become circles, linksets
// become arrows. Everything here is a pure transformation; all failure
// modes downgrade to warnings so one odd linkset never hides the rest of
// the diagram.

namespace voidviz {

namespace vocab {
inline constexpr std::string_view dataset = "http://rdfs.org/ns/void#Dataset";
inline constexpr std::string_view linkset = "http://rdfs.org/ns/void#Linkset";
inline constexpr std::string_view triples = "http://rdfs.org/ns/void#triples";
inline constexpr std::string_view subset = "http://rdfs.org/ns/void#subset";
inline constexpr std::string_view target = "http://rdfs.org/ns/void#target";
inline constexpr std::string_view subjects_target =
    "http://rdfs.org/ns/void#subjectsTarget";
inline constexpr std::string_view objects_target =
    "http://rdfs.org/ns/void#objectsTarget";
inline constexpr std::string_view dcterms_title =
    "http://purl.org/dc/terms/title";
inline constexpr std::string_view rdfs_label =
    "http://www.w3.org/2000/01/rdf-schema#label";
}  // namespace vocab

struct DatasetNode {
  std::string iri;
  std::string label;
  std::optional<std::uint64_t> triples;
  bool declared = true;

  bool operator==(const DatasetNode&) const = default;
};

struct LinkEdge {
  std::string source;
  std::string target;
  std::optional<std::uint64_t> triples;
  bool directed = true;
  std::string origin;  // linkset resource; "_:label" for anonymous linksets

  bool operator==(const LinkEdge&) const = default;
};

struct DiagramModel {
  std::vector<DatasetNode> nodes;  // sorted by IRI
  std::vector<LinkEdge> edges;     // sorted by (source, target, origin)
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string term_key(const Term& t) {
  return t.is_blank() ? "_:" + t.value : t.value;
}

inline bool is_type_triple(const Triple& t, std::string_view class_iri) {
  return t.predicate.is_iri() && t.predicate.value == iri_const::rdf_type &&
         t.object.is_iri() && t.object.value == class_iri;
}

}  // namespace detail

struct ResourceClassification {
  std::vector<std::string> datasets;  // IRIs, sorted
  std::vector<Term> linksets;         // IRI or blank, sorted by display key
  std::vector<std::string> warnings;

  bool is_linkset_iri(std::string_view iri) const {
    for (const Term& l : linksets)
      if (l.is_iri() && l.value == iri) return true;
    return false;
  }
};

// Splits typed resources into circles and arrows. A resource typed both
// void:Dataset and void:Linkset is a linkset only.
inline ResourceClassification classify_resources(const Graph& g) {
  ResourceClassification out;
  std::set<std::string> dataset_iris;
  std::set<std::string> blank_datasets;
  std::map<std::string, Term> linksets;  // keyed for deterministic order

  bool saw_empty_iri_dataset = false;
  for (const Triple& t : g.triples()) {
    if (detail::is_type_triple(t, vocab::linkset)) {
      if ((t.subject.is_iri() && !t.subject.value.empty()) ||
          t.subject.is_blank())
        linksets.emplace(detail::term_key(t.subject), t.subject);
    } else if (detail::is_type_triple(t, vocab::dataset)) {
      if (t.subject.is_iri()) {
        if (t.subject.value.empty())
          saw_empty_iri_dataset = true;
        else
          dataset_iris.insert(t.subject.value);
      } else if (t.subject.is_blank()) {
        blank_datasets.insert(t.subject.value);
      }
    }
  }
  if (saw_empty_iri_dataset)
    out.warnings.push_back(
        "skipping dataset with empty IRI (relative reference without base)");

  for (const auto& [key, term] : linksets) {
    dataset_iris.erase(key);
    out.linksets.push_back(term);
  }
  for (const std::string& label : blank_datasets) {
    if (!linksets.count("_:" + label))
      out.warnings.push_back("skipping blank node dataset _:" + label +
                             " (cannot be referenced or labeled)");
  }
  out.datasets.assign(dataset_iris.begin(), dataset_iris.end());
  return out;
}

struct EdgeResolution {
  std::optional<LinkEdge> edge;
  std::vector<std::string> warnings;
};

// Resolves one linkset into an arrow. Priority: explicit
// subjectsTarget/objectsTarget, then the two-target form with a
// void:subset parent picking the source, then lexicographic order
// without an arrowhead.
inline EdgeResolution resolve_edge(const Graph& g, const Term& linkset,
                                   const ResourceClassification& cls) {
  EdgeResolution out;
  const std::string key = detail::term_key(linkset);

  auto skip = [&](const std::string& reason) {
    out.warnings.push_back("skipping linkset " + key + ": " + reason);
  };

  auto usable_endpoint = [&](const std::string& iri) {
    return !cls.is_linkset_iri(iri);
  };

  std::vector<std::string> subjects_targets;
  std::vector<std::string> objects_targets;
  std::vector<std::string> plain_targets;
  std::size_t non_iri_targets = 0;
  auto target_iri = [](const Term& t) {
    return t.is_iri() && !t.value.empty();
  };
  for (const Triple& t : g.triples()) {
    if (t.subject != linkset || !t.predicate.is_iri()) continue;
    const std::string& p = t.predicate.value;
    if (p == vocab::subjects_target) {
      if (target_iri(t.object))
        subjects_targets.push_back(t.object.value);
      else
        ++non_iri_targets;
    } else if (p == vocab::objects_target) {
      if (target_iri(t.object))
        objects_targets.push_back(t.object.value);
      else
        ++non_iri_targets;
    } else if (p == vocab::target) {
      if (target_iri(t.object))
        plain_targets.push_back(t.object.value);
      else
        ++non_iri_targets;
    }
  }

  auto make_edge = [&](const std::string& source, const std::string& target,
                       bool directed) {
    if (source == target) {
      skip("self-loop (source and target are the same dataset)");
      return;
    }
    if (!usable_endpoint(source) || !usable_endpoint(target)) {
      skip("a target is itself a linkset");
      return;
    }
    out.edge = LinkEdge{source, target, std::nullopt, directed, key};
  };

  if (subjects_targets.size() == 1 && objects_targets.size() == 1) {
    make_edge(subjects_targets[0], objects_targets[0], true);
    return out;
  }

  std::set<std::string> distinct(plain_targets.begin(), plain_targets.end());
  if (distinct.size() == 2) {
    auto it = distinct.begin();
    const std::string a = *it++;
    const std::string b = *it;
    if (!usable_endpoint(a) || !usable_endpoint(b)) {
      skip("a target is itself a linkset");
      return out;
    }
    // A dataset declaring the linkset as its void:subset is the source.
    std::set<std::string> parents;
    for (const Triple& t : g.triples()) {
      if (t.subject.is_iri() && t.predicate.is_iri() &&
          t.predicate.value == vocab::subset && t.object == linkset &&
          (t.subject.value == a || t.subject.value == b))
        parents.insert(t.subject.value);
    }
    if (!parents.empty()) {
      const std::string& source = *parents.begin();
      const std::string& target = source == a ? b : a;
      make_edge(source, target, true);
    } else {
      make_edge(a, b, false);
    }
    return out;
  }

  if (non_iri_targets > 0)
    skip("targets must be IRIs (found blank node or literal targets)");
  else if (distinct.size() < 2)
    skip("fewer than two resolvable targets (found " +
         std::to_string(distinct.size()) + ")");
  else
    skip("more than two void:target values (found " +
         std::to_string(distinct.size()) + ")");
  return out;
}

struct TripleCount {
  std::optional<std::uint64_t> count;
  std::vector<std::string> warnings;
};

// Largest valid void:triples value for a resource. Non-integer or
// negative literals are ignored with a warning.
inline TripleCount read_triple_count(const Graph& g, const Term& resource) {
  TripleCount out;
  std::vector<std::uint64_t> valid;
  std::set<std::string> invalid;
  for (const Triple& t : g.triples()) {
    if (t.subject != resource || !t.predicate.is_iri() ||
        t.predicate.value != vocab::triples || !t.object.is_literal())
      continue;
    const std::string& lex = t.object.value;
    std::size_t i = 0;
    bool negative = false;
    if (i < lex.size() && (lex[i] == '+' || lex[i] == '-')) {
      negative = lex[i] == '-';
      ++i;
    }
    bool digits = i < lex.size();
    std::uint64_t value = 0;
    bool overflow = false;
    for (; i < lex.size(); ++i) {
      if (lex[i] < '0' || lex[i] > '9') {
        digits = false;
        break;
      }
      if (value > (std::numeric_limits<std::uint64_t>::max() - (lex[i] - '0')) / 10)
        overflow = true;
      else
        value = value * 10 + static_cast<std::uint64_t>(lex[i] - '0');
    }
    if (!digits) {
      invalid.insert(lex);
      continue;
    }
    if (negative && value > 0) {
      invalid.insert(lex);
      continue;
    }
    valid.push_back(overflow ? std::numeric_limits<std::uint64_t>::max()
                             : value);
  }
  const std::string key = detail::term_key(resource);
  for (const std::string& lex : invalid)
    out.warnings.push_back("ignoring void:triples value \"" + lex + "\" on " +
                           key + " (not a nonnegative integer)");
  if (!valid.empty()) {
    out.count = *std::max_element(valid.begin(), valid.end());
    if (valid.size() > 1)
      out.warnings.push_back("multiple void:triples values on " + key +
                             "; using the maximum");
  }
  return out;
}

// Display label: dcterms:title, rdfs:label, IRI fragment, last path
// segment, then the IRI itself. Ties among literals break toward the
// code-point-smallest lexical form.
inline std::string resolve_label(const Graph& g, const std::string& iri) {
  std::optional<std::string> title;
  std::optional<std::string> label;
  for (const Triple& t : g.triples()) {
    if (!t.subject.is_iri() || t.subject.value != iri ||
        !t.predicate.is_iri() || !t.object.is_literal() ||
        t.object.value.empty())
      continue;
    if (t.predicate.value == vocab::dcterms_title) {
      if (!title || t.object.value < *title) title = t.object.value;
    } else if (t.predicate.value == vocab::rdfs_label) {
      if (!label || t.object.value < *label) label = t.object.value;
    }
  }
  if (title) return *title;
  if (label) return *label;

  std::size_t hash = iri.find_last_of('#');
  if (hash != std::string::npos && hash + 1 < iri.size())
    return iri.substr(hash + 1);

  std::string s = iri;
  if (!s.empty() && s.back() == '/') s.pop_back();
  std::size_t path_from = 0;
  std::size_t scheme_sep = s.find("://");
  if (scheme_sep != std::string::npos) path_from = scheme_sep + 3;
  std::size_t slash = s.find_last_of('/');
  if (slash != std::string::npos && slash >= path_from && slash + 1 < s.size())
    return s.substr(slash + 1);

  return iri;
}

// Builds the full diagram model: declared datasets plus implicit edge
// endpoints as circles, merged linkset edges as arrows, all canonically
// ordered so identical triple sets give identical models.
inline DiagramModel extract_model(const Graph& g) {
  DiagramModel model;
  ResourceClassification cls = classify_resources(g);
  model.warnings = cls.warnings;

  std::vector<LinkEdge> raw_edges;
  for (const Term& linkset : cls.linksets) {
    EdgeResolution r = resolve_edge(g, linkset, cls);
    for (auto& w : r.warnings) model.warnings.push_back(std::move(w));
    if (r.edge) {
      TripleCount tc = read_triple_count(g, linkset);
      for (auto& w : tc.warnings) model.warnings.push_back(std::move(w));
      r.edge->triples = tc.count;
      raw_edges.push_back(std::move(*r.edge));
    }
  }

  // Merge parallel same-direction edges.
  std::map<std::pair<std::string, std::string>, LinkEdge> merged;
  for (const LinkEdge& e : raw_edges) {
    auto [it, inserted] = merged.emplace(std::make_pair(e.source, e.target), e);
    if (inserted) continue;
    LinkEdge& m = it->second;
    if (e.triples) m.triples = m.triples.value_or(0) + *e.triples;
    m.directed = m.directed || e.directed;
    m.origin = std::min(m.origin, e.origin);
  }

  std::set<std::string> node_iris(cls.datasets.begin(), cls.datasets.end());
  for (const auto& [key, e] : merged) {
    node_iris.insert(e.source);
    node_iris.insert(e.target);
    model.edges.push_back(e);
  }

  std::set<std::string> declared(cls.datasets.begin(), cls.datasets.end());
  for (const std::string& iri : node_iris) {
    DatasetNode node;
    node.iri = iri;
    node.label = resolve_label(g, iri);
    node.declared = declared.count(iri) != 0;
    TripleCount tc = read_triple_count(g, Term::iri(iri));
    node.triples = tc.count;
    for (auto& w : tc.warnings) model.warnings.push_back(std::move(w));
    model.nodes.push_back(std::move(node));
  }

  // node_iris and merged are ordered containers, so nodes and edges are
  // already canonically sorted; edges only need the origin tiebreak when
  // keys collide, which the merge step removed.
  return model;
}

}  // namespace voidviz
