#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voidviz/iri.hpp"
#include "voidviz/rdf.hpp"

// Turtle / N-Triples reader for VoID descriptions, plus a canonical
// N-Triples serializer. The Turtle subset covers prefixes and base
// (both @-style and SPARQL-style), comments, 'a', ';' and ',' lists,
// labeled and anonymous blank nodes with property lists, numeric and
// boolean shorthand, short and long strings with datatype or language
// suffixes. Collections and graph braces are rejected.

namespace voidviz {

enum class Format { Turtle, NTriples };

struct ParseResult {
  Graph graph;
  std::vector<Diagnostic> diagnostics;

  bool ok() const {
    for (const auto& d : diagnostics)
      if (d.severity == Severity::Error) return false;
    return true;
  }
};

struct StringResult {
  bool ok = true;
  std::string value;
  std::string error;
};

namespace detail {

inline char32_t decode_utf8(std::string_view s, std::size_t pos,
                            std::size_t& len) {
  unsigned char b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  std::size_t need = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    len = 1;
    return 0xFFFD;
  }
  for (std::size_t i = 1; i <= need; ++i) {
    if (pos + i >= s.size()) {
      len = 1;
      return 0xFFFD;
    }
    unsigned char b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      len = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  len = need + 1;
  return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline bool is_pn_chars_base(char32_t c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= 0x00C0 && c <= 0x00D6) || (c >= 0x00D8 && c <= 0x00F6) ||
         (c >= 0x00F8 && c <= 0x02FF) || (c >= 0x0370 && c <= 0x037D) ||
         (c >= 0x037F && c <= 0x1FFF) || (c >= 0x200C && c <= 0x200D) ||
         (c >= 0x2070 && c <= 0x218F) || (c >= 0x2C00 && c <= 0x2FEF) ||
         (c >= 0x3001 && c <= 0xD7FF) || (c >= 0xF900 && c <= 0xFDCF) ||
         (c >= 0xFDF0 && c <= 0xFFFD) || (c >= 0x10000 && c <= 0xEFFFF);
}

inline bool is_pn_chars_u(char32_t c) { return is_pn_chars_base(c) || c == '_'; }

inline bool is_pn_chars(char32_t c) {
  return is_pn_chars_u(c) || c == '-' || (c >= '0' && c <= '9') ||
         c == 0x00B7 || (c >= 0x0300 && c <= 0x036F) ||
         (c >= 0x203F && c <= 0x2040);
}

inline bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
         (c >= 'A' && c <= 'F');
}

inline unsigned hex_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
  return static_cast<unsigned>(c - 'A' + 10);
}

inline bool is_local_esc(char c) {
  return c == '_' || c == '~' || c == '.' || c == '-' || c == '!' ||
         c == '$' || c == '&' || c == '\'' || c == '(' || c == ')' ||
         c == '*' || c == '+' || c == ',' || c == ';' || c == '=' ||
         c == '/' || c == '?' || c == '#' || c == '@' || c == '%';
}

// Characters an IRI term may never contain once escapes are decoded.
inline bool is_forbidden_iri_char(char32_t c) {
  return c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
         c == '}' || c == '|' || c == '^' || c == '`' || c == '\\';
}

// Decodes the escape sequence starting at body[i] (which is '\\').
// When iri_mode is set only \uXXXX and \UXXXXXXXX are accepted.
inline bool decode_escape(std::string_view body, std::size_t& i,
                          std::string& out, std::string& error,
                          bool iri_mode = false) {
  if (i + 1 >= body.size()) {
    error = "truncated escape sequence";
    return false;
  }
  char e = body[i + 1];
  if (e == 'u' || e == 'U') {
    std::size_t digits = (e == 'u') ? 4 : 8;
    if (i + 2 + digits > body.size()) {
      error = "truncated escape sequence";
      return false;
    }
    char32_t cp = 0;
    for (std::size_t k = 0; k < digits; ++k) {
      char h = body[i + 2 + k];
      if (!is_hex(h)) {
        error = "bad hex digit in escape sequence";
        return false;
      }
      cp = (cp << 4) | hex_value(h);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      error = "escape sequence is not a Unicode scalar value";
      return false;
    }
    append_utf8(out, cp);
    i += 2 + digits;
    return true;
  }
  if (iri_mode) {
    error = std::string("unknown escape '\\") + e + "' in IRI";
    return false;
  }
  switch (e) {
    case 't': out += '\t'; break;
    case 'b': out += '\b'; break;
    case 'n': out += '\n'; break;
    case 'r': out += '\r'; break;
    case 'f': out += '\f'; break;
    case '"': out += '"'; break;
    case '\'': out += '\''; break;
    case '\\': out += '\\'; break;
    default:
      error = std::string("unknown escape '\\") + e + "'";
      return false;
  }
  i += 2;
  return true;
}

}  // namespace detail

// Resolves \t \b \n \r \f \" \' \\ \uXXXX \UXXXXXXXX in a quoted-string
// body (without the surrounding quotes).
inline StringResult unescape_string(std::string_view body) {
  StringResult r;
  r.value.reserve(body.size());
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '\\') {
      if (!detail::decode_escape(body, i, r.value, r.error)) {
        r.ok = false;
        r.value.clear();
        return r;
      }
    } else {
      r.value += body[i];
      ++i;
    }
  }
  return r;
}

// Expands `prefix:local` against a prefix map, undoing PN_LOCAL
// backslash escapes in the local part.
inline StringResult expand_prefixed_name(const PrefixMap& prefixes,
                                         std::string_view pname) {
  StringResult r;
  std::size_t colon = pname.find(':');
  if (colon == std::string_view::npos) {
    r.ok = false;
    r.error = "not a prefixed name (missing ':')";
    return r;
  }
  std::string prefix(pname.substr(0, colon));
  auto it = prefixes.find(prefix);
  if (it == prefixes.end()) {
    r.ok = false;
    r.error = "undefined prefix '" + prefix + ":'";
    return r;
  }
  r.value = it->second;
  std::string_view local = pname.substr(colon + 1);
  std::size_t i = 0;
  while (i < local.size()) {
    if (local[i] == '\\') {
      if (i + 1 < local.size() && detail::is_local_esc(local[i + 1])) {
        r.value += local[i + 1];
        i += 2;
      } else {
        r.ok = false;
        r.value.clear();
        r.error = "malformed local-name escape";
        return r;
      }
    } else {
      r.value += local[i];
      ++i;
    }
  }
  return r;
}

inline Format detect_format(std::string_view text,
                            std::optional<std::string_view> filename_hint =
                                std::nullopt) {
  if (filename_hint) {
    if (filename_hint->ends_with(".ttl")) return Format::Turtle;
    if (filename_hint->ends_with(".nt")) return Format::NTriples;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find_first_of("\r\n", pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                       : eol - pos);
    std::size_t at = line.find_first_not_of(" \t");
    if (at != std::string_view::npos) {
      std::string_view rest = line.substr(at);
      if (rest.starts_with("@prefix") || rest.starts_with("@base") ||
          rest.starts_with("PREFIX") || rest.starts_with("BASE"))
        return Format::Turtle;
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    if (text[eol] == '\r' && pos < text.size() && text[pos] == '\n') ++pos;
  }
  return Format::NTriples;
}

namespace detail {

struct ParseAbort {
  Diagnostic diag;
};

class DocumentParser {
 public:
  DocumentParser(std::string_view text, Format format,
                 std::optional<std::string_view> base)
      : text_(text), format_(format) {
    if (base) base_ = std::string(*base);
  }

  ParseResult run() {
    ParseResult result;
    try {
      while (true) {
        skip_ws();
        if (eof()) break;
        statement();
      }
    } catch (const ParseAbort& abort) {
      diagnostics_.push_back(abort.diag);
    }
    result.graph = std::move(graph_);
    result.graph.prefixes() = prefixes_;
    result.diagnostics = std::move(diagnostics_);
    return result;
  }

 private:
  std::string_view text_;
  Format format_;
  std::optional<std::string> base_;
  Graph graph_;
  PrefixMap prefixes_;
  std::vector<Diagnostic> diagnostics_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::uint64_t genid_ = 0;
  int bnode_depth_ = 0;

  static constexpr int kMaxBnodeDepth = 256;

  // --- cursor ------------------------------------------------------------

  bool eof() const { return pos_ >= text_.size(); }

  char peek(std::size_t off = 0) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  char32_t peek_cp(std::size_t* len = nullptr) const {
    if (eof()) {
      if (len) *len = 0;
      return 0;
    }
    std::size_t l = 0;
    char32_t cp = decode_utf8(text_, pos_, l);
    if (len) *len = l;
    return cp;
  }

  // Consumes one code point or one line break ("\r\n" counts as one).
  void advance() {
    if (eof()) return;
    char c = text_[pos_];
    if (c == '\r') {
      ++pos_;
      if (!eof() && text_[pos_] == '\n') ++pos_;
      ++line_;
      col_ = 1;
    } else if (c == '\n') {
      ++pos_;
      ++line_;
      col_ = 1;
    } else {
      std::size_t len = 0;
      decode_utf8(text_, pos_, len);
      pos_ += len;
      ++col_;
    }
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!eof() && peek() != '\r' && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(std::size_t line, std::size_t col,
                         std::string message) {
    throw ParseAbort{Diagnostic{Severity::Error, line, col,
                                std::move(message)}};
  }

  [[noreturn]] void fail_here(std::string message) {
    fail(line_, col_, std::move(message));
  }

  void warn(std::size_t line, std::size_t col, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Severity::Warning, line, col, std::move(message)});
  }

  bool turtle() const { return format_ == Format::Turtle; }

  // --- statements ----------------------------------------------------------

  void statement() {
    if (turtle() && peek() == '@') {
      at_directive();
      return;
    }
    if (turtle() && match_keyword_ci("PREFIX")) {
      sparql_prefix();
      return;
    }
    if (turtle() && match_keyword_ci("BASE")) {
      sparql_base();
      return;
    }
    bool bare_ok = false;
    Term subject = parse_subject(bare_ok);
    skip_ws();
    if (bare_ok && peek() == '.') {
      advance();
      return;  // [ ... ] .
    }
    predicate_object_list(subject, '.');
    skip_ws();
    if (peek() != '.')
      fail_here("expected '.' at end of statement");
    advance();
  }

  // True when the next token is the given keyword followed by a
  // non-name character (so `PREFIX:x` still lexes as a prefixed name).
  bool match_keyword(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    if (text_.compare(pos_, kw.size(), kw) != 0) return false;
    return keyword_boundary(pos_ + kw.size());
  }

  // SPARQL-style directives are case-insensitive.
  bool match_keyword_ci(std::string_view kw) const {
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (to_lower(text_[pos_ + i]) != to_lower(kw[i])) return false;
    return keyword_boundary(pos_ + kw.size());
  }

  bool keyword_boundary(std::size_t after) const {
    if (after >= text_.size()) return true;
    if (text_[after] == ':') return false;
    std::size_t len = 0;
    char32_t cp = decode_utf8(text_, after, len);
    return !is_pn_chars(cp);
  }

  void consume_keyword(std::string_view kw) {
    for (std::size_t i = 0; i < kw.size(); ++i) advance();
  }

  void at_directive() {
    std::size_t dline = line_, dcol = col_;
    advance();  // '@'
    std::string word;
    while (!eof() && peek() >= 'a' && peek() <= 'z') {
      word += peek();
      advance();
    }
    if (word == "prefix") {
      prefix_directive(true);
    } else if (word == "base") {
      base_directive(true);
    } else {
      fail(dline, dcol, "unknown directive '@" + word + "'");
    }
  }

  void sparql_prefix() {
    consume_keyword("PREFIX");
    prefix_directive(false);
  }

  void sparql_base() {
    consume_keyword("BASE");
    base_directive(false);
  }

  void prefix_directive(bool dot_terminated) {
    skip_ws();
    std::size_t pline = line_, pcol = col_;
    std::string prefix = scan_pname_prefix();
    if (eof() || peek() != ':')
      fail(pline, pcol, "expected ':' after prefix name");
    advance();
    skip_ws();
    if (peek() != '<') fail_here("expected IRI in prefix declaration");
    std::string ns = parse_iriref();
    prefixes_[prefix] = ns;
    if (dot_terminated) {
      skip_ws();
      if (peek() != '.') fail_here("expected '.' after @prefix directive");
      advance();
    }
  }

  void base_directive(bool dot_terminated) {
    skip_ws();
    if (peek() != '<') fail_here("expected IRI in base declaration");
    std::string iri = parse_iriref();
    base_ = iri;
    if (dot_terminated) {
      skip_ws();
      if (peek() != '.') fail_here("expected '.' after @base directive");
      advance();
    }
  }

  // --- terms ---------------------------------------------------------------

  Term parse_subject(bool& was_property_list) {
    was_property_list = false;
    skip_ws();
    if (eof()) fail_here("expected subject");
    char c = peek();
    if (c == '<') return Term::iri(parse_iriref());
    if (c == '_' && peek(1) == ':') return parse_blank_label();
    if (c == '[') {
      if (!turtle())
        fail_here("blank node property lists are not allowed in N-Triples");
      Term b = parse_bnode_property_list();
      was_property_list = true;
      return b;
    }
    if (c == '(') fail_here("collections are not supported");
    if (c == '"' || c == '\'' || c == '+' || c == '-' ||
        (c >= '0' && c <= '9') || (c == '.' && peek(1) >= '0' && peek(1) <= '9'))
      fail_here("literal not allowed in subject position");
    if (!turtle()) fail_here("expected IRI or blank node as subject");
    return Term::iri(parse_pname());
  }

  Term parse_predicate() {
    skip_ws();
    if (eof()) fail_here("expected predicate");
    char c = peek();
    if (turtle() && c == 'a' && match_keyword("a")) {
      advance();
      return Term::iri(std::string(iri_const::rdf_type));
    }
    if (c == '<') return Term::iri(parse_iriref());
    if (c == '_')
      fail_here("blank node not allowed in predicate position");
    if (c == '"' || c == '\'' || (c >= '0' && c <= '9'))
      fail_here("literal not allowed in predicate position");
    if (!turtle()) fail_here("expected IRI as predicate");
    return Term::iri(parse_pname());
  }

  Term parse_object() {
    skip_ws();
    if (eof()) fail_here("expected object");
    char c = peek();
    if (c == '<') return Term::iri(parse_iriref());
    if (c == '_' && peek(1) == ':') return parse_blank_label();
    if (c == '[') {
      if (!turtle())
        fail_here("blank node property lists are not allowed in N-Triples");
      return parse_bnode_property_list();
    }
    if (c == '(') fail_here("collections are not supported");
    if (c == '"' || c == '\'') return parse_rdf_literal();
    if (turtle()) {
      if (c == '+' || c == '-' || (c >= '0' && c <= '9') ||
          (c == '.' && peek(1) >= '0' && peek(1) <= '9'))
        return parse_numeric_literal();
      if (match_keyword("true")) {
        consume_keyword("true");
        return Term::literal("true", std::string(iri_const::xsd_boolean));
      }
      if (match_keyword("false")) {
        consume_keyword("false");
        return Term::literal("false", std::string(iri_const::xsd_boolean));
      }
      return Term::iri(parse_pname());
    }
    fail_here("expected IRI, blank node, or literal as object");
  }

  void predicate_object_list(const Term& subject, char terminator) {
    while (true) {
      Term predicate = parse_predicate();
      object_list(subject, predicate);
      skip_ws();
      bool saw_semicolon = false;
      while (peek() == ';') {
        if (!turtle())
          fail_here("predicate lists are not allowed in N-Triples");
        saw_semicolon = true;
        advance();
        skip_ws();
      }
      if (!saw_semicolon) return;
      if (eof() || peek() == terminator || peek() == '.') return;
    }
  }

  void object_list(const Term& subject, const Term& predicate) {
    while (true) {
      Term object = parse_object();
      graph_.insert(Triple{subject, predicate, object});
      skip_ws();
      if (turtle() && peek() == ',') {
        advance();
        continue;
      }
      return;
    }
  }

  Term parse_bnode_property_list() {
    if (++bnode_depth_ > kMaxBnodeDepth)
      fail_here("blank node property lists nested too deeply");
    advance();  // '['
    Term node = Term::blank("genid-" + std::to_string(++genid_));
    skip_ws();
    if (peek() == ']') {
      advance();
      --bnode_depth_;
      return node;
    }
    predicate_object_list(node, ']');
    skip_ws();
    if (peek() != ']') fail_here("expected ']'");
    advance();
    --bnode_depth_;
    return node;
  }

  Term parse_blank_label() {
    std::size_t tline = line_, tcol = col_;
    advance();  // '_'
    advance();  // ':'
    std::string label;
    std::size_t len = 0;
    char32_t cp = peek_cp(&len);
    if (!(is_pn_chars_u(cp) || (cp >= '0' && cp <= '9')))
      fail(tline, tcol, "malformed blank node label");
    while (!eof()) {
      cp = peek_cp(&len);
      if (is_pn_chars(cp)) {
        label.append(text_.substr(pos_, len));
        advance();
      } else if (cp == '.') {
        // '.' is allowed inside a label but never at its end.
        std::size_t save = pos_ + len;
        if (save < text_.size()) {
          std::size_t l2 = 0;
          char32_t next = decode_utf8(text_, save, l2);
          if (is_pn_chars(next)) {
            label += '.';
            advance();
            continue;
          }
        }
        break;
      } else {
        break;
      }
    }
    if (label.empty()) fail(tline, tcol, "malformed blank node label");
    return Term::blank(label);
  }

  std::string parse_iriref() {
    std::size_t tline = line_, tcol = col_;
    advance();  // '<'
    std::string raw;
    while (true) {
      if (eof() || peek() == '\r' || peek() == '\n')
        fail(tline, tcol, "unterminated IRI");
      char c = peek();
      if (c == '>') {
        advance();
        break;
      }
      if (c == '\\') {
        std::size_t eline = line_, ecol = col_;
        std::string err;
        std::size_t i = pos_;
        std::size_t before = i;
        if (!decode_escape(text_, i, raw, err, /*iri_mode=*/true))
          fail(eline, ecol, "malformed escape: " + err);
        for (std::size_t k = before; k < i; ++k) advance();
      } else {
        std::size_t len = 0;
        peek_cp(&len);
        raw.append(text_.substr(pos_, len));
        advance();
      }
    }
    std::size_t len = 0;
    for (std::size_t i = 0; i < raw.size(); i += len) {
      char32_t cp = decode_utf8(raw, i, len);
      if (is_forbidden_iri_char(cp))
        fail(tline, tcol, "invalid character in IRI");
    }
    return resolve_against_base(raw, tline, tcol);
  }

  std::string resolve_against_base(const std::string& iri, std::size_t tline,
                                   std::size_t tcol) {
    if (has_scheme(iri)) return iri;
    if (base_) return resolve_iri(*base_, iri);
    warn(tline, tcol, "relative IRI <" + iri + "> kept verbatim (no base IRI)");
    return iri;
  }

  std::string scan_pname_prefix() {
    std::string prefix;
    std::size_t len = 0;
    char32_t cp = peek_cp(&len);
    if (!is_pn_chars_base(cp)) return prefix;  // empty prefix
    prefix.append(text_.substr(pos_, len));
    advance();
    while (!eof()) {
      cp = peek_cp(&len);
      if (is_pn_chars(cp)) {
        prefix.append(text_.substr(pos_, len));
        advance();
      } else if (cp == '.') {
        std::size_t save = pos_ + len;
        if (save < text_.size()) {
          std::size_t l2 = 0;
          char32_t next = decode_utf8(text_, save, l2);
          if (is_pn_chars(next) || next == '.') {
            prefix += '.';
            advance();
            continue;
          }
        }
        break;
      } else {
        break;
      }
    }
    return prefix;
  }

  std::string parse_pname() {
    std::size_t tline = line_, tcol = col_;
    std::string raw = scan_pname_prefix();
    if (eof() || peek() != ':')
      fail(tline, tcol, "expected prefixed name");
    raw += ':';
    advance();
    // PN_LOCAL, keeping backslash escapes raw for expand_prefixed_name.
    bool first = true;
    while (!eof()) {
      std::size_t len = 0;
      char32_t cp = peek_cp(&len);
      bool ok_char;
      if (first)
        ok_char = is_pn_chars_u(cp) || cp == ':' || (cp >= '0' && cp <= '9');
      else
        ok_char = is_pn_chars(cp) || cp == ':';
      if (ok_char) {
        raw.append(text_.substr(pos_, len));
        advance();
        first = false;
        continue;
      }
      if (cp == '%') {
        if (!(is_hex(peek(1)) && is_hex(peek(2))))
          fail_here("malformed percent encoding in local name");
        raw += peek();
        advance();
        raw += peek();
        advance();
        raw += peek();
        advance();
        first = false;
        continue;
      }
      if (cp == '\\') {
        if (eof() || !is_local_esc(peek(1)))
          fail_here("malformed escape in local name");
        raw += '\\';
        advance();
        raw += peek();
        advance();
        first = false;
        continue;
      }
      if (cp == '.' && !first) {
        std::size_t save = pos_ + len;
        if (save < text_.size()) {
          std::size_t l2 = 0;
          char32_t next = decode_utf8(text_, save, l2);
          if (is_pn_chars(next) || next == ':' || next == '%' ||
              next == '\\' || next == '.') {
            raw += '.';
            advance();
            continue;
          }
        }
        break;
      }
      break;
    }
    StringResult expanded = expand_prefixed_name(prefixes_, raw);
    if (!expanded.ok) fail(tline, tcol, expanded.error);
    return expanded.value;
  }

  Term parse_rdf_literal() {
    std::size_t tline = line_, tcol = col_;
    std::string lexical = parse_quoted_body();
    // optional language tag or datatype
    if (peek() == '@') {
      advance();
      std::string lang;
      if (!((peek() >= 'a' && peek() <= 'z') || (peek() >= 'A' && peek() <= 'Z')))
        fail_here("malformed language tag");
      while ((peek() >= 'a' && peek() <= 'z') ||
             (peek() >= 'A' && peek() <= 'Z')) {
        lang += to_lower(peek());
        advance();
      }
      while (peek() == '-') {
        lang += '-';
        advance();
        if (!is_alnum(peek())) fail_here("malformed language tag");
        while (is_alnum(peek())) {
          lang += to_lower(peek());
          advance();
        }
      }
      return Term::literal(std::move(lexical), {}, std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      advance();
      advance();
      skip_ws();
      std::string dt;
      if (peek() == '<') {
        dt = parse_iriref();
      } else if (turtle()) {
        dt = parse_pname();
      } else {
        fail_here("expected datatype IRI");
      }
      return Term::literal(std::move(lexical), std::move(dt));
    }
    (void)tline;
    (void)tcol;
    return Term::literal(std::move(lexical));
  }

  static char to_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }

  static bool is_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9');
  }

  std::string parse_quoted_body() {
    std::size_t tline = line_, tcol = col_;
    char quote = peek();
    if (!turtle() && quote == '\'')
      fail(tline, tcol, "single-quoted strings are not allowed in N-Triples");
    bool long_string = false;
    advance();
    if (turtle() && peek() == quote && peek(1) == quote) {
      advance();
      advance();
      long_string = true;
    } else if (peek() == quote) {
      // empty short string
      advance();
      return {};
    }
    std::string out;
    while (true) {
      if (eof())
        fail(tline, tcol, "unterminated string");
      char c = peek();
      if (!long_string && (c == '\r' || c == '\n'))
        fail(tline, tcol, "unterminated string");
      if (c == quote) {
        if (!long_string) {
          advance();
          return out;
        }
        if (peek(1) == quote && peek(2) == quote) {
          advance();
          advance();
          advance();
          return out;
        }
        out += c;
        advance();
        continue;
      }
      if (c == '\\') {
        std::size_t eline = line_, ecol = col_;
        std::string err;
        std::size_t i = pos_;
        std::size_t before = i;
        if (!decode_escape(text_, i, out, err))
          fail(eline, ecol, "malformed escape: " + err);
        for (std::size_t k = before; k < i; ++k) advance();
      } else {
        // advance() may swallow two bytes for a CRLF break; keep them all
        std::size_t before = pos_;
        advance();
        out.append(text_.substr(before, pos_ - before));
      }
    }
  }

  Term parse_numeric_literal() {
    std::string lex;
    bool has_fraction = false;
    bool has_exponent = false;
    bool has_int_digits = false;
    if (peek() == '+' || peek() == '-') {
      lex += peek();
      advance();
    }
    while (peek() >= '0' && peek() <= '9') {
      lex += peek();
      advance();
      has_int_digits = true;
    }
    if (peek() == '.' && peek(1) >= '0' && peek(1) <= '9') {
      has_fraction = true;
      lex += '.';
      advance();
      while (peek() >= '0' && peek() <= '9') {
        lex += peek();
        advance();
      }
    }
    if ((peek() == 'e' || peek() == 'E') && (has_int_digits || has_fraction)) {
      char sign = peek(1);
      std::size_t digit_at = (sign == '+' || sign == '-') ? 2 : 1;
      if (peek(digit_at) >= '0' && peek(digit_at) <= '9') {
        has_exponent = true;
        lex += peek();
        advance();
        if (sign == '+' || sign == '-') {
          lex += peek();
          advance();
        }
        while (peek() >= '0' && peek() <= '9') {
          lex += peek();
          advance();
        }
      }
    }
    if (!has_int_digits && !has_fraction)
      fail_here("malformed numeric literal");
    std::string_view dt = has_exponent  ? iri_const::xsd_double
                          : has_fraction ? iri_const::xsd_decimal
                                         : iri_const::xsd_integer;
    return Term::literal(std::move(lex), std::string(dt));
  }
};

}  // namespace detail

// Strips a UTF-8 byte-order mark if present.
inline std::string_view strip_bom(std::string_view text) {
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB &&
      static_cast<unsigned char>(text[2]) == 0xBF)
    return text.substr(3);
  return text;
}

inline ParseResult parse(std::string_view text, Format format,
                         std::optional<std::string_view> base = std::nullopt) {
  detail::DocumentParser parser(strip_bom(text), format, base);
  return parser.run();
}

namespace detail {

inline void append_ntriples_literal(std::string& out, const std::string& lex) {
  out += '"';
  for (char ch : lex) {
    unsigned char u = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (u < 0x20) {
          static const char* hex = "0123456789ABCDEF";
          out += "\\u00";
          out += hex[u >> 4];
          out += hex[u & 0xF];
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

inline void append_ntriples_term(std::string& out, const Term& t) {
  switch (t.kind) {
    case TermKind::Iri:
      out += '<';
      out += t.value;
      out += '>';
      break;
    case TermKind::Blank:
      out += "_:";
      out += t.value;
      break;
    case TermKind::Literal:
      append_ntriples_literal(out, t.value);
      if (!t.language.empty()) {
        out += '@';
        out += t.language;
      } else if (t.datatype != iri_const::xsd_string) {
        out += "^^<";
        out += t.datatype;
        out += '>';
      }
      break;
  }
}

}  // namespace detail

// One triple per line in graph iteration order; xsd:string datatypes are
// left implicit, matching canonical N-Triples.
inline std::string serialize_ntriples(const Graph& g) {
  std::string out;
  for (const Triple& t : g.triples()) {
    detail::append_ntriples_term(out, t.subject);
    out += ' ';
    detail::append_ntriples_term(out, t.predicate);
    out += ' ';
    detail::append_ntriples_term(out, t.object);
    out += " .\n";
  }
  return out;
}

}  // namespace voidviz
