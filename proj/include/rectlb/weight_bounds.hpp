#pragma once

// Certified upper bounds on the weight of a single bin.
//
// The bound for a batch draws m equally spaced horizontal lines through the
// bin. An item of height h crosses at least t = floor((m+1)h) of them and is
// charged to exactly t lines; the items charged to one line all cross it, so
// their widths sum to at most 1. A "profile" is one line's charge vector. The
// bound maximises total weight over all ways to give each of the m lines a
// profile, recoupling the per-line charges into whole items with a floor and
// the single-type grid cap.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "rectlb/dominance.hpp"
#include "rectlb/geometry.hpp"
#include "rectlb/instance.hpp"

namespace rectlb {

// Minimum number of interior lines (spacing 1/(m+1)) that any placement of
// height h must cross. Requires (m+1)h to be non-integral.
inline std::int64_t min_lines_crossed(const Scalar& h, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("min_lines_crossed: need at least one line");
  if (h.sign() <= 0 || h > Scalar(1)) throw std::invalid_argument("min_lines_crossed: height outside (0,1]");
  const Scalar scaled = Scalar(m + 1) * h;
  if (scaled.is_integer()) throw std::domain_error("min_lines_crossed: (m+1)h is an integer (" + scaled.str() + ")");
  return scaled.floor().get_si();
}

// Largest b with side > 1/(b+1): at most b such items fit side by side.
inline std::int64_t side_cap(const Scalar& side) {
  if (side.sign() <= 0 || side > Scalar(1)) throw std::invalid_argument("side_cap: side outside (0,1]");
  return (Scalar(1) / side).floor().get_si();
}

// b_w * b_h: the most copies of a (w, h) rectangle any bin can hold.
inline std::int64_t single_type_cap(const Scalar& w, const Scalar& h) { return side_cap(w) * side_cap(h); }

struct LineProfile {
  std::vector<std::int64_t> counts;  // parallel to the type list it was enumerated for
  Scalar width_sum;
  Scalar share;  // sum of counts * weight / lines crossed
};

// All maximal count vectors y with sum y_t * w_t <= 1, optionally capped per type.
inline std::vector<LineProfile> enumerate_line_profiles(std::span<const ItemType> types, std::int64_t m,
                                                        const std::map<TypeId, std::int64_t>& per_line_caps = {}) {
  if (types.empty()) throw std::invalid_argument("enumerate_line_profiles: empty type set");
  const std::size_t n = types.size();
  std::vector<std::int64_t> cap(n);
  std::vector<std::int64_t> demand(n);
  for (std::size_t t = 0; t < n; ++t) {
    cap[t] = side_cap(types[t].width);
    if (auto it = per_line_caps.find(types[t].id); it != per_line_caps.end()) cap[t] = std::min(cap[t], it->second);
    demand[t] = min_lines_crossed(types[t].height, m);
  }

  std::vector<LineProfile> out;
  std::vector<std::int64_t> y(n, 0);
  auto fill_count = [&](std::size_t t, const Scalar& room) {
    return std::min(cap[t], (room / types[t].width).floor().get_si());
  };
  auto rec = [&](auto& self, std::size_t t, const Scalar& used) -> void {
    const Scalar room = Scalar(1) - used;
    if (t + 1 == n) {
      y[t] = fill_count(t, room);
      const Scalar total = used + Scalar(y[t]) * types[t].width;
      // Maximal iff no type below its cap still fits.
      for (std::size_t u = 0; u < n; ++u)
        if (y[u] < cap[u] && total + types[u].width <= Scalar(1)) return;
      Scalar share;
      for (std::size_t u = 0; u < n; ++u) share += Scalar(y[u]) * types[u].weight / Scalar(demand[u]);
      out.push_back({y, total, share});
      return;
    }
    const std::int64_t hi = fill_count(t, room);
    for (std::int64_t c = hi; c >= 0; --c) {
      y[t] = c;
      self(self, t + 1, used + Scalar(c) * types[t].width);
    }
  };
  rec(rec, 0, Scalar(0));
  return out;
}

struct LineCertificate {
  TypeId batch;
  std::int64_t m = 0;
  std::vector<TypeId> types;
  std::vector<Scalar> weights;
  std::vector<std::int64_t> per_type_line_demand;
  std::vector<LineProfile> profiles;
  std::vector<std::int64_t> line_assignment;  // multiplicity of each profile
  std::vector<std::int64_t> slots;
  std::vector<std::int64_t> derived_item_counts;  // min(floor(slots / demand), global cap)
  std::vector<std::int64_t> global_caps;
  Scalar weight_bound;
};

struct WeightBound {
  Scalar value;
  LineCertificate certificate;
};

// Default line count: the most rows of the shortest member type, b_h.
inline std::int64_t default_line_count(std::span<const ItemType> types) {
  std::int64_t m = 0;
  for (const auto& t : types) m = std::max(m, side_cap(t.height));
  return m;
}

namespace detail {

struct AssignmentValue {
  std::vector<std::int64_t> slots;
  std::vector<std::int64_t> counts;
  Scalar weight;
};

inline AssignmentValue evaluate_assignment(std::span<const ItemType> types, std::span<const LineProfile> profiles,
                                           std::span<const std::int64_t> mult, std::span<const std::int64_t> demand,
                                           std::span<const std::int64_t> caps) {
  AssignmentValue v;
  v.slots.assign(types.size(), 0);
  v.counts.assign(types.size(), 0);
  for (std::size_t p = 0; p < profiles.size(); ++p)
    for (std::size_t t = 0; t < types.size(); ++t) v.slots[t] += mult[p] * profiles[p].counts[t];
  for (std::size_t t = 0; t < types.size(); ++t) {
    v.counts[t] = std::min(v.slots[t] / demand[t], caps[t]);
    v.weight += Scalar(v.counts[t]) * types[t].weight;
  }
  return v;
}

}  // namespace detail

// Exact maximum of the line relaxation over `types`, by branch and bound over
// profile multiplicities. The fractional per-line share is the pruning bound.
inline WeightBound line_weight_bound(std::span<const ItemType> types, std::int64_t m, TypeId batch = {},
                                     const std::map<TypeId, std::int64_t>& per_line_caps = {}) {
  if (types.empty()) throw std::invalid_argument("line_weight_bound: empty type set");
  LineCertificate cert;
  cert.batch = batch;
  cert.m = m;
  for (const auto& t : types) {
    cert.types.push_back(t.id);
    cert.weights.push_back(t.weight);
    cert.per_type_line_demand.push_back(min_lines_crossed(t.height, m));
    cert.global_caps.push_back(single_type_cap(t.width, t.height));
  }
  cert.profiles = enumerate_line_profiles(types, m, per_line_caps);
  const std::size_t np = cert.profiles.size();

  Scalar best_share;
  for (const auto& p : cert.profiles) best_share = max(best_share, p.share);

  std::optional<detail::AssignmentValue> best;
  std::vector<std::int64_t> best_mult;
  std::vector<std::int64_t> mult(np, 0);

  auto rec = [&](auto& self, std::size_t p, std::int64_t left, const Scalar& share_so_far) -> void {
    if (best && share_so_far + Scalar(left) * best_share <= best->weight) return;
    if (p + 1 == np) {
      mult[p] = left;
      auto v = detail::evaluate_assignment(types, cert.profiles, mult, cert.per_type_line_demand, cert.global_caps);
      if (!best || v.weight > best->weight) {
        best = std::move(v);
        best_mult = mult;
      }
      return;
    }
    for (std::int64_t c = left; c >= 0; --c) {
      mult[p] = c;
      self(self, p + 1, left - c, share_so_far + Scalar(c) * cert.profiles[p].share);
    }
    mult[p] = 0;
  };
  rec(rec, 0, m, Scalar(0));

  cert.line_assignment = best_mult;
  cert.slots = best->slots;
  cert.derived_item_counts = best->counts;
  cert.weight_bound = best->weight;
  return {best->weight, std::move(cert)};
}

inline WeightBound max_weight_bound(const Instance& inst, TypeId batch, std::optional<std::int64_t> m = std::nullopt) {
  const auto types = reduced_types(inst, batch);
  if (types.empty()) throw std::logic_error("max_weight_bound: empty reduced set");
  return line_weight_bound(types, m.value_or(default_line_count(types)), batch);
}

struct ReplayResult {
  bool ok = false;
  std::string reason;
};

// Re-evaluates a stored certificate against the instance's type data.
inline ReplayResult replay(const Instance& inst, const LineCertificate& cert) {
  auto fail = [](std::string why) { return ReplayResult{false, std::move(why)}; };
  std::vector<ItemType> types;
  for (const auto& id : cert.types) {
    if (!inst.contains(id)) return fail("unknown type " + id.label());
    types.push_back(inst[id]);
  }
  const std::size_t n = types.size();
  if (cert.line_assignment.size() != cert.profiles.size()) return fail("assignment/profile size mismatch");
  std::int64_t lines = 0;
  for (auto x : cert.line_assignment) {
    if (x < 0) return fail("negative multiplicity");
    lines += x;
  }
  if (lines != cert.m) return fail("multiplicities sum to " + std::to_string(lines) + ", not m");
  for (const auto& p : cert.profiles) {
    if (p.counts.size() != n) return fail("profile arity");
    Scalar ws;
    for (std::size_t t = 0; t < n; ++t) ws += Scalar(p.counts[t]) * types[t].width;
    if (ws > Scalar(1) || ws != p.width_sum) return fail("profile width sum");
  }
  std::vector<std::int64_t> demand;
  std::vector<std::int64_t> caps;
  for (const auto& t : types) {
    demand.push_back(min_lines_crossed(t.height, cert.m));
    caps.push_back(single_type_cap(t.width, t.height));
  }
  if (demand != cert.per_type_line_demand) return fail("line demand");
  if (caps != cert.global_caps) return fail("global caps");
  const auto v = detail::evaluate_assignment(types, cert.profiles, cert.line_assignment, demand, caps);
  if (v.slots != cert.slots || v.counts != cert.derived_item_counts) return fail("derived counts");
  if (v.weight != cert.weight_bound) return fail("weight " + v.weight.str() + " != " + cert.weight_bound.str());
  return {true, {}};
}

// Reference per-batch weight caps the computation must reproduce.
inline Scalar table_weight_cap(int k, TypeId batch) {
  if (batch.group == 1) {
    if (batch.index <= k - 2) return Scalar(42) * (Scalar(5) - Scalar(1) / pow(Scalar(5), k - batch.index - 2));
    return batch.index == k - 1 ? Scalar(126) : Scalar(112);
  }
  static const int table[5][3] = {{0, 0, 0}, {0, 0, 0}, {96, 72, 68}, {48, 42, 36}, {24, 18, 12}};
  return Scalar(table[batch.group][batch.index]);
}

// ---------------------------------------------------------------------------
// Small-pattern feasibility oracle

struct PatternEntry {
  ItemType type;
  std::int64_t count = 0;
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Placement> witness;  // verified packing when feasible
};

class SearchBudgetExceeded : public std::runtime_error {
 public:
  explicit SearchBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::int64_t kPatternBudget = 12;

namespace detail {

// Distinct sums sum_t a_t * side_t with 0 <= a_t <= count_t, below `limit`.
inline std::vector<Scalar> subset_sums(std::span<const PatternEntry> pattern, bool widths, const Scalar& limit) {
  std::vector<Scalar> sums{Scalar(0)};
  for (const auto& e : pattern) {
    const Scalar& side = widths ? e.type.width : e.type.height;
    std::vector<Scalar> next;
    for (const auto& s : sums)
      for (std::int64_t a = 0; a <= e.count; ++a) {
        Scalar v = s + Scalar(a) * side;
        if (v >= limit) break;
        next.push_back(std::move(v));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    sums = std::move(next);
  }
  return sums;
}

}  // namespace detail

// Exact decision for small patterns. Some feasible packing is bottom-left
// compacted, so every coordinate is a subset sum of the other items' sides;
// the search visits items in increasing (y, x) order over those candidates.
inline FeasibilityResult pattern_feasible(std::span<const PatternEntry> pattern) {
  std::int64_t total = 0;
  Scalar area;
  for (const auto& e : pattern) {
    if (e.count < 0) throw std::invalid_argument("pattern_feasible: negative count");
    total += e.count;
    area += Scalar(e.count) * e.type.width * e.type.height;
  }
  if (total > kPatternBudget)
    throw SearchBudgetExceeded("pattern_feasible: " + std::to_string(total) + " items exceeds the budget of " +
                               std::to_string(kPatternBudget));
  if (area > Scalar(1)) return {};

  const auto xs = detail::subset_sums(pattern, true, Scalar(1));
  const auto ys = detail::subset_sums(pattern, false, Scalar(1));
  struct Pos {
    std::size_t yi;
    std::size_t xi;
  };

  std::vector<std::int64_t> left;
  for (const auto& e : pattern) left.push_back(e.count);
  std::vector<Placement> placed;
  const Scalar one(1);

  auto rec = [&](auto& self, Pos from) -> bool {
    if (static_cast<std::int64_t>(placed.size()) == total) return true;
    for (std::size_t yi = from.yi; yi < ys.size(); ++yi) {
      for (std::size_t xi = (yi == from.yi ? from.xi : 0); xi < xs.size(); ++xi) {
        for (std::size_t t = 0; t < pattern.size(); ++t) {
          if (left[t] == 0) continue;
          const auto& ty = pattern[t].type;
          if (xs[xi] + ty.width > one || ys[yi] + ty.height > one) continue;
          Placement cand = place(ty, xs[xi], ys[yi]);
          bool clash = false;
          for (const auto& p : placed)
            if (interiors_overlap(p, cand)) { clash = true; break; }
          if (clash) continue;
          placed.push_back(std::move(cand));
          --left[t];
          const Pos next = xi + 1 < xs.size() ? Pos{yi, xi + 1} : Pos{yi + 1, 0};
          if (self(self, next)) return true;
          ++left[t];
          placed.pop_back();
        }
      }
    }
    return false;
  };

  if (!rec(rec, Pos{0, 0})) return {};
  if (!verify_packing(placed).valid()) throw std::logic_error("pattern_feasible: produced an invalid packing");
  return {true, std::move(placed)};
}

inline Scalar pattern_weight(std::span<const PatternEntry> pattern) {
  Scalar w;
  for (const auto& e : pattern) w += Scalar(e.count) * e.type.weight;
  return w;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const LineCertificate& c) {
  nlohmann::json profiles = nlohmann::json::array();
  for (std::size_t p = 0; p < c.profiles.size(); ++p)
    profiles.push_back({{"counts", c.profiles[p].counts},
                        {"width_sum", c.profiles[p].width_sum},
                        {"share", c.profiles[p].share},
                        {"lines", c.line_assignment[p]}});
  return {{"batch", c.batch},
          {"m", c.m},
          {"types", c.types},
          {"weights", c.weights},
          {"per_type_line_demand", c.per_type_line_demand},
          {"global_caps", c.global_caps},
          {"profiles", profiles},
          {"slots", c.slots},
          {"derived_item_counts", c.derived_item_counts},
          {"weight_bound", c.weight_bound}};
}

}  // namespace rectlb
