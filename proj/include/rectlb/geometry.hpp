#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rectlb/instance.hpp"

namespace rectlb {

// An axis-parallel rectangle placed in the unit-square bin, lower-left corner at (x, y).
struct Placement {
  Scalar x;
  Scalar y;
  Scalar width;
  Scalar height;
  TypeId type;

  Scalar right() const { return x + width; }
  Scalar top() const { return y + height; }
};

inline Placement place(const ItemType& t, Scalar x, Scalar y) {
  return Placement{std::move(x), std::move(y), t.width, t.height, t.id};
}

inline bool inside_unit_bin(const Placement& p) {
  return p.x.sign() >= 0 && p.y.sign() >= 0 && p.width.sign() > 0 && p.height.sign() > 0 &&
         p.right() <= Scalar(1) && p.top() <= Scalar(1);
}

// Open interiors intersect. Touching boundaries do not count.
inline bool interiors_overlap(const Placement& a, const Placement& b) {
  return a.x < b.right() && b.x < a.right() && a.y < b.top() && b.y < a.top();
}

struct PackingViolation {
  enum class Kind { OutOfBin, Overlap } kind = Kind::OutOfBin;
  std::size_t first = 0;
  std::size_t second = 0;  // only meaningful for Overlap

  std::string describe() const {
    if (kind == Kind::OutOfBin) return "placement " + std::to_string(first) + " leaves the bin";
    return "placements " + std::to_string(first) + " and " + std::to_string(second) + " overlap";
  }
};

struct PackingCheck {
  std::optional<PackingViolation> violation;
  bool valid() const { return !violation.has_value(); }
};

// Exact containment and pairwise interior-disjointness. Sweeps in x order, so
// only pairs whose x-ranges overlap are compared.
inline PackingCheck verify_packing(std::span<const Placement> placements) {
  for (std::size_t i = 0; i < placements.size(); ++i)
    if (!inside_unit_bin(placements[i])) return {PackingViolation{PackingViolation::Kind::OutOfBin, i, i}};

  std::vector<std::size_t> order(placements.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (placements[a].x != placements[b].x) return placements[a].x < placements[b].x;
    return a < b;
  });
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Placement& p = placements[order[a]];
    const Scalar right = p.right();
    for (std::size_t b = a + 1; b < order.size() && placements[order[b]].x < right; ++b) {
      const Placement& q = placements[order[b]];
      if (p.y < q.top() && q.y < p.top()) {
        const auto lo = std::min(order[a], order[b]);
        const auto hi = std::max(order[a], order[b]);
        return {PackingViolation{PackingViolation::Kind::Overlap, lo, hi}};
      }
    }
  }
  return {};
}

inline void to_json(nlohmann::json& j, const Placement& p) {
  j = nlohmann::json{{"x", p.x}, {"y", p.y}, {"width", p.width}, {"height", p.height}, {"type", p.type}};
}

}  // namespace rectlb
