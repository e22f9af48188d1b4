#pragma once

#include <optional>
#include <string>
#include <string_view>

// RFC 3986 reference resolution, applied byte-wise to IRIs. Non-ASCII
// octets pass through untouched, which is all the resolution algorithm
// needs for RFC 3987 references.

namespace voidviz {

struct IriParts {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

namespace detail {

inline bool is_scheme_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

inline bool is_scheme_char(char c) {
  return is_scheme_start(c) || (c >= '0' && c <= '9') || c == '+' ||
         c == '-' || c == '.';
}

}  // namespace detail

inline IriParts split_iri(std::string_view iri) {
  IriParts parts;
  std::size_t pos = 0;

  // scheme: ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
  if (!iri.empty() && detail::is_scheme_start(iri[0])) {
    std::size_t i = 1;
    while (i < iri.size() && detail::is_scheme_char(iri[i])) ++i;
    if (i < iri.size() && iri[i] == ':') {
      parts.scheme = std::string(iri.substr(0, i));
      pos = i + 1;
    }
  }

  if (iri.size() - pos >= 2 && iri[pos] == '/' && iri[pos + 1] == '/') {
    std::size_t start = pos + 2;
    std::size_t end = start;
    while (end < iri.size() && iri[end] != '/' && iri[end] != '?' &&
           iri[end] != '#')
      ++end;
    parts.authority = std::string(iri.substr(start, end - start));
    pos = end;
  }

  std::size_t path_end = pos;
  while (path_end < iri.size() && iri[path_end] != '?' && iri[path_end] != '#')
    ++path_end;
  parts.path = std::string(iri.substr(pos, path_end - pos));
  pos = path_end;

  if (pos < iri.size() && iri[pos] == '?') {
    std::size_t end = pos + 1;
    while (end < iri.size() && iri[end] != '#') ++end;
    parts.query = std::string(iri.substr(pos + 1, end - pos - 1));
    pos = end;
  }

  if (pos < iri.size() && iri[pos] == '#')
    parts.fragment = std::string(iri.substr(pos + 1));

  return parts;
}

inline bool has_scheme(std::string_view iri) {
  return split_iri(iri).scheme.has_value();
}

inline std::string recompose_iri(const IriParts& parts) {
  std::string out;
  if (parts.scheme) {
    out += *parts.scheme;
    out += ':';
  }
  if (parts.authority) {
    out += "//";
    out += *parts.authority;
  }
  out += parts.path;
  if (parts.query) {
    out += '?';
    out += *parts.query;
  }
  if (parts.fragment) {
    out += '#';
    out += *parts.fragment;
  }
  return out;
}

// RFC 3986 section 5.2.4.
inline std::string remove_dot_segments(std::string_view path) {
  std::string input(path);
  std::string output;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0) {
      input.erase(0, 3);
    } else if (input.rfind("./", 0) == 0) {
      input.erase(0, 2);
    } else if (input.rfind("/./", 0) == 0) {
      input.replace(0, 3, "/");
    } else if (input == "/.") {
      input = "/";
    } else if (input.rfind("/../", 0) == 0 || input == "/..") {
      if (input == "/..")
        input = "/";
      else
        input.replace(0, 4, "/");
      std::size_t slash = output.find_last_of('/');
      output.erase(slash == std::string::npos ? 0 : slash);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      std::size_t next = input.find('/', input[0] == '/' ? 1 : 0);
      if (next == std::string::npos) {
        output += input;
        input.clear();
      } else {
        output += input.substr(0, next);
        input.erase(0, next);
      }
    }
  }
  return output;
}

// RFC 3986 section 5.2.3.
inline std::string merge_paths(const IriParts& base, std::string_view ref) {
  if (base.authority && base.path.empty()) return "/" + std::string(ref);
  std::size_t slash = base.path.find_last_of('/');
  if (slash == std::string::npos) return std::string(ref);
  return base.path.substr(0, slash + 1) + std::string(ref);
}

// RFC 3986 section 5.2.2, strict variant.
inline std::string resolve_iri(std::string_view base, std::string_view ref) {
  IriParts b = split_iri(base);
  IriParts r = split_iri(ref);
  IriParts t;

  if (r.scheme) {
    t.scheme = r.scheme;
    t.authority = r.authority;
    t.path = remove_dot_segments(r.path);
    t.query = r.query;
  } else {
    if (r.authority) {
      t.authority = r.authority;
      t.path = remove_dot_segments(r.path);
      t.query = r.query;
    } else {
      if (r.path.empty()) {
        t.path = b.path;
        t.query = r.query ? r.query : b.query;
      } else {
        if (r.path[0] == '/')
          t.path = remove_dot_segments(r.path);
        else
          t.path = remove_dot_segments(merge_paths(b, r.path));
        t.query = r.query;
      }
      t.authority = b.authority;
    }
    t.scheme = b.scheme;
  }
  t.fragment = r.fragment;
  return recompose_iri(t);
}

}  // namespace voidviz
