#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "voidviz/void_model.hpp"

// Deterministic force-directed layout. Circle radii come from a fixed
// log10 scale over triple counts, positions from seeded Fruchterman-
// Reingold iterations followed by a hard overlap-removal pass, so the
// same model and config always produce the same picture.

namespace voidviz {

struct LayoutConfig {
  double canvas_width = 1000;
  double canvas_height = 1000;
  std::uint64_t seed = 42;
  int iterations = 500;
  double padding = 10;
  double r_min = 20;
  double r_max = 80;
  double t_ref = 1e3;  // triple count mapped to r_min
  double t_cap = 1e9;  // triple count mapped to r_max
  int overlap_passes = 50;
};

struct Vec2 {
  double x = 0;
  double y = 0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  double norm() const { return std::hypot(x, y); }

  bool operator==(const Vec2&) const = default;
};

struct Placement {
  Vec2 position;
  double radius = 0;
};

struct Bounds {
  Vec2 min;
  Vec2 max;
};

struct LayoutResult {
  std::map<std::string, Placement> placements;  // keyed by node IRI
  Bounds bounds;
  std::vector<std::string> warnings;
};

// splitmix64: state advances by the golden-gamma increment, output is
// the mixed state. Bit-exact across implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_raw() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double next_unit() {
    return static_cast<double>(next_raw() >> 11) / 9007199254740992.0;
  }

 private:
  std::uint64_t state_;
};

inline void validate_config(const LayoutConfig& c) {
  if (!(c.canvas_width > 0) || !(c.canvas_height > 0))
    throw std::invalid_argument("layout: canvas dimensions must be positive");
  if (c.iterations < 1)
    throw std::invalid_argument("layout: iterations must be >= 1");
  if (c.r_min > c.r_max)
    throw std::invalid_argument("layout: r_min must not exceed r_max");
  if (!(c.t_ref >= 1) || !(c.t_ref < c.t_cap))
    throw std::invalid_argument("layout: need 1 <= t_ref < t_cap");
  if (c.padding < 0)
    throw std::invalid_argument("layout: padding must be nonnegative");
}

// log10 interpolation between (t_ref, r_min) and (t_cap, r_max),
// clamped at both anchors; missing counts sit at the minimum.
inline double radius_for(std::optional<std::uint64_t> triples,
                         const LayoutConfig& c) {
  if (!triples) return c.r_min;
  double t = static_cast<double>(*triples);
  if (t <= c.t_ref) return c.r_min;
  if (t >= c.t_cap) return c.r_max;
  double span = std::log10(c.t_cap) - std::log10(c.t_ref);
  return c.r_min +
         (c.r_max - c.r_min) * (std::log10(t) - std::log10(c.t_ref)) / span;
}

// Canonical-order placement: two PRNG draws per node. A single node
// skips the PRNG and sits at the canvas center.
inline std::vector<Vec2> initial_positions(const DiagramModel& model,
                                           const LayoutConfig& c) {
  if (model.nodes.empty())
    throw std::invalid_argument("layout: model has no nodes");
  std::vector<Vec2> positions(model.nodes.size());
  if (model.nodes.size() == 1) {
    positions[0] = {c.canvas_width / 2, c.canvas_height / 2};
    return positions;
  }
  SplitMix64 rng(c.seed);
  for (Vec2& p : positions) {
    p.x = rng.next_unit() * c.canvas_width;
    p.y = rng.next_unit() * c.canvas_height;
  }
  return positions;
}

inline std::vector<std::pair<std::size_t, std::size_t>> edge_indices(
    const DiagramModel& model) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < model.nodes.size(); ++i)
    index[model.nodes[i].iri] = i;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(model.edges.size());
  for (const LinkEdge& e : model.edges)
    out.emplace_back(index.at(e.source), index.at(e.target));
  return out;
}

// One Fruchterman-Reingold step with Jacobi-style accumulation:
// repulsion k^2/d between every pair, attraction d^2/k along every
// edge, net displacement capped at the temperature. Coincident nodes
// separate along (1, 0), the canonically first node moving +x.
inline void force_step(std::vector<Vec2>& positions,
                       const std::vector<std::pair<std::size_t, std::size_t>>&
                           edges,
                       double k, double temperature) {
  const std::size_t n = positions.size();
  std::vector<Vec2> disp(n);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec2 delta = positions[i] - positions[j];
      double d = delta.norm();
      Vec2 unit = d == 0 ? Vec2{1, 0} : delta * (1.0 / d);
      double force = k * k / std::max(d, 1e-9);
      disp[i] += unit * force;
      disp[j] -= unit * force;
    }
  }

  for (auto [a, b] : edges) {
    Vec2 delta = positions[b] - positions[a];
    double d = delta.norm();
    if (d < 1e-9) continue;  // coincident endpoints attract nothing
    Vec2 pull = delta * (1.0 / d) * (d * d / k);
    disp[a] += pull;
    disp[b] -= pull;
  }

  for (std::size_t i = 0; i < n; ++i) {
    double len = disp[i].norm();
    if (len > temperature && len > 0)
      disp[i] = disp[i] * (temperature / len);
    positions[i] += disp[i];
  }
}

inline void force_step(std::vector<Vec2>& positions, const DiagramModel& model,
                       double k, double temperature) {
  force_step(positions, edge_indices(model), k, temperature);
}

// Sequential pairwise separation sweeps: any two circles closer than
// the sum of radii plus padding are pushed apart symmetrically along
// their center line. Returns whether the separation postcondition
// holds afterwards.
inline bool resolve_overlaps(std::vector<Vec2>& positions,
                             const std::vector<double>& radii, double padding,
                             int max_passes) {
  const std::size_t n = positions.size();
  for (int pass = 0; pass < max_passes; ++pass) {
    bool pushed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec2 delta = positions[i] - positions[j];
        double d = delta.norm();
        double need = radii[i] + radii[j] + padding;
        if (d < need - 1e-9) {
          Vec2 unit = d == 0 ? Vec2{1, 0} : delta * (1.0 / d);
          double half = (need - d) / 2;
          positions[i] += unit * half;
          positions[j] -= unit * half;
          pushed = true;
        }
      }
    }
    if (!pushed) return true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((positions[i] - positions[j]).norm() <
          radii[i] + radii[j] + padding - 1e-6)
        return false;
  return true;
}

inline LayoutResult run_layout(const DiagramModel& model,
                               const LayoutConfig& config = {}) {
  validate_config(config);
  if (model.nodes.empty())
    throw std::invalid_argument("layout: model has no nodes");

  const std::size_t n = model.nodes.size();
  std::vector<double> radii(n);
  for (std::size_t i = 0; i < n; ++i)
    radii[i] = radius_for(model.nodes[i].triples, config);

  std::vector<Vec2> positions = initial_positions(model, config);
  auto edges = edge_indices(model);

  double k = std::sqrt(config.canvas_width * config.canvas_height /
                       static_cast<double>(n));
  double t0 = config.canvas_width / 10;
  for (int it = 0; it < config.iterations; ++it) {
    double temperature =
        t0 * static_cast<double>(config.iterations - it) / config.iterations;
    force_step(positions, edges, k, temperature);
  }

  LayoutResult result;
  if (!resolve_overlaps(positions, radii, config.padding,
                        config.overlap_passes))
    result.warnings.push_back(
        "overlap resolution did not converge after " +
        std::to_string(config.overlap_passes) + " passes");

  Vec2 ext_min = positions[0];
  Vec2 ext_max = positions[0];
  for (std::size_t i = 0; i < n; ++i) {
    ext_min.x = std::min(ext_min.x, positions[i].x - radii[i]);
    ext_min.y = std::min(ext_min.y, positions[i].y - radii[i]);
    ext_max.x = std::max(ext_max.x, positions[i].x + radii[i]);
    ext_max.y = std::max(ext_max.y, positions[i].y + radii[i]);
  }
  Vec2 shift{config.padding - ext_min.x, config.padding - ext_min.y};
  for (std::size_t i = 0; i < n; ++i) {
    positions[i] += shift;
    result.placements[model.nodes[i].iri] = Placement{positions[i], radii[i]};
  }
  result.bounds.min = {0, 0};
  result.bounds.max = {ext_max.x + shift.x + config.padding,
                       ext_max.y + shift.y + config.padding};
  return result;
}

}  // namespace voidviz
