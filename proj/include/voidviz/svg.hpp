#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voidviz/layout.hpp"
#include "voidviz/void_model.hpp"

// Serializes a laid-out diagram as a self-contained SVG document:
// arrows first, then circles with centered labels on top, all
// coordinates formatted to two decimals so output is byte-stable.

namespace voidviz {

struct Style {
  std::vector<std::string> palette = {
      "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c",
      "#fdbf6f", "#ff7f00", "#cab2d6", "#6a3fa2", "#ffff99", "#b15928"};
  std::string stroke_color = "#333333";
  double stroke_width = 1;
  double edge_width = 1.5;
  double arrow_length = 8;
  double arrow_half_width = 3;
  double rim_gap = 2;
  std::string font_family = "sans-serif";
  std::string label_color = "#000000";
  bool labels = true;
};

struct SvgDocument {
  std::string text;
};

struct EmitResult {
  SvgDocument document;
  std::vector<std::string> warnings;
};

// Offset applied to each member of an A->B / B->A pair so the two
// shafts do not overlap.
inline constexpr double kBidirectionalOffset = 4;

// Shortens the segment between two circle centers so it starts at the
// source rim (plus gap) and ends short of the target rim by gap plus
// the arrowhead length. Absent when no positive-length shaft remains.
inline std::optional<std::pair<Vec2, Vec2>> trim_edge(Vec2 c1, double r1,
                                                      Vec2 c2, double r2,
                                                      double gap,
                                                      double arrow_len) {
  Vec2 delta = c2 - c1;
  double d = delta.norm();
  if (d == 0 || d <= r1 + r2 + 2 * gap + arrow_len) return std::nullopt;
  Vec2 u = delta * (1.0 / d);
  return std::make_pair(c1 + u * (r1 + gap), c2 - u * (r2 + gap + arrow_len));
}

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char byte : data) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline const std::string& color_for(std::string_view iri,
                                    const std::vector<std::string>& palette) {
  return palette[fnv1a64(iri) % palette.size()];
}

inline std::string escape_xml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Fixed two-decimal formatting, rounding half away from zero; "-0.00"
// never appears.
inline std::string format_coord(double value) {
  long long scaled = std::llround(value * 100.0);
  if (scaled == 0) return "0.00";
  unsigned long long mag = scaled < 0
                               ? -static_cast<unsigned long long>(scaled)
                               : static_cast<unsigned long long>(scaled);
  std::string out = scaled < 0 ? "-" : "";
  out += std::to_string(mag / 100);
  out += '.';
  unsigned long long frac = mag % 100;
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

namespace detail {

inline std::string line_element(Vec2 a, Vec2 b, const Style& style,
                                bool directed) {
  std::string out = "  <line x1=\"" + format_coord(a.x) + "\" y1=\"" +
                    format_coord(a.y) + "\" x2=\"" + format_coord(b.x) +
                    "\" y2=\"" + format_coord(b.y) + "\" stroke=\"" +
                    style.stroke_color + "\" stroke-width=\"" +
                    format_coord(style.edge_width) + "\"";
  if (directed) out += " marker-end=\"url(#arrow)\"";
  out += "/>\n";
  return out;
}

}  // namespace detail

inline EmitResult emit_svg(const DiagramModel& model,
                           const LayoutResult& layout,
                           const Style& style = {}) {
  if (style.palette.empty())
    throw std::invalid_argument("svg: palette must not be empty");
  for (const DatasetNode& node : model.nodes)
    if (!layout.placements.count(node.iri))
      throw std::invalid_argument("svg: layout is missing node " + node.iri);

  EmitResult result;
  std::string& out = result.document.text;
  const std::string width = format_coord(layout.bounds.max.x);
  const std::string height = format_coord(layout.bounds.max.y);

  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + width +
         " " + height + "\" width=\"" + width + "\" height=\"" + height +
         "\">\n";

  const std::string arrow_w = format_coord(style.arrow_length);
  const std::string arrow_h = format_coord(2 * style.arrow_half_width);
  out += "  <defs>\n";
  out += "    <marker id=\"arrow\" markerWidth=\"" + arrow_w +
         "\" markerHeight=\"" + arrow_h + "\" refX=\"0.00\" refY=\"" +
         format_coord(style.arrow_half_width) +
         "\" orient=\"auto\" markerUnits=\"userSpaceOnUse\">\n";
  out += "      <path d=\"M0,0 L" + arrow_w + "," +
         format_coord(style.arrow_half_width) + " L0," + arrow_h +
         " z\" fill=\"" + style.stroke_color + "\"/>\n";
  out += "    </marker>\n";
  out += "  </defs>\n";

  std::set<std::pair<std::string, std::string>> pairs;
  for (const LinkEdge& e : model.edges) pairs.insert({e.source, e.target});

  std::size_t omitted = 0;
  for (const LinkEdge& e : model.edges) {
    const Placement& src = layout.placements.at(e.source);
    const Placement& dst = layout.placements.at(e.target);
    double arrow = e.directed ? style.arrow_length : 0;
    auto trimmed = trim_edge(src.position, src.radius, dst.position,
                             dst.radius, style.rim_gap, arrow);
    if (!trimmed) {
      ++omitted;
      continue;
    }
    auto [start, end] = *trimmed;
    if (pairs.count({e.target, e.source})) {
      Vec2 u = (dst.position - src.position) * (1.0 / (dst.position - src.position).norm());
      Vec2 offset = Vec2{-u.y, u.x} * kBidirectionalOffset;
      start += offset;
      end += offset;
    }
    out += detail::line_element(start, end, style, e.directed);
  }
  if (omitted > 0)
    result.warnings.push_back(
        "omitted " + std::to_string(omitted) +
        " edge(s) whose circles leave no room for a visible shaft");

  for (const DatasetNode& node : model.nodes) {
    const Placement& pl = layout.placements.at(node.iri);
    out += "  <g>\n";
    out += "    <circle cx=\"" + format_coord(pl.position.x) + "\" cy=\"" +
           format_coord(pl.position.y) + "\" r=\"" + format_coord(pl.radius) +
           "\" fill=\"" + color_for(node.iri, style.palette) + "\" stroke=\"" +
           style.stroke_color + "\" stroke-width=\"" +
           format_coord(style.stroke_width) + "\"/>\n";
    if (style.labels) {
      double font_size = std::max(8.0, std::min(16.0, 0.35 * pl.radius));
      out += "    <text x=\"" + format_coord(pl.position.x) + "\" y=\"" +
             format_coord(pl.position.y) +
             "\" text-anchor=\"middle\" dominant-baseline=\"central\""
             " font-family=\"" +
             escape_xml(style.font_family) + "\" font-size=\"" +
             format_coord(font_size) + "\" fill=\"" + style.label_color +
             "\">" + escape_xml(node.label) + "</text>\n";
    }
    out += "  </g>\n";
  }

  out += "</svg>\n";
  return result;
}

}  // namespace voidviz
