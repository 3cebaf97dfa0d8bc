#pragma once

// (c_w, c_h)-dominance between item types.
//
// Type A dominates type B when w_B >= c_w * w_A, h_B >= c_h * h_A and
// v_B <= c_w * c_h * v_A: every B in a bin can be swapped for a c_w x c_h grid
// of A items without losing weight, so maximum-weight computations may ignore B.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rectlb/instance.hpp"

namespace rectlb {

struct DominanceWitness {
  TypeId dominator;
  TypeId dominated;
  std::int64_t c_w = 1;
  std::int64_t c_h = 1;

  std::int64_t factor() const { return c_w * c_h; }
};

struct DominanceRefusal {
  TypeId dominator;
  TypeId dominated;
  std::int64_t c_w = 1;
  std::int64_t c_h = 1;
  std::string violated;  // "width", "height" or "weight"
  Scalar lhs;
  Scalar rhs;
};

using DominanceResult = std::variant<DominanceWitness, DominanceRefusal>;

inline bool holds(const DominanceResult& r) { return std::holds_alternative<DominanceWitness>(r); }

inline DominanceResult check_dominates(const ItemType& a, const ItemType& b, std::int64_t c_w, std::int64_t c_h) {
  if (c_w < 1 || c_h < 1) throw std::invalid_argument("check_dominates: factors must be >= 1");
  auto refuse = [&](std::string what, Scalar lhs, Scalar rhs) -> DominanceResult {
    return DominanceRefusal{a.id, b.id, c_w, c_h, std::move(what), std::move(lhs), std::move(rhs)};
  };
  if (const Scalar need = Scalar(c_w) * a.width; b.width < need) return refuse("width", b.width, need);
  if (const Scalar need = Scalar(c_h) * a.height; b.height < need) return refuse("height", b.height, need);
  if (const Scalar cap = Scalar(c_w * c_h) * a.weight; b.weight > cap) return refuse("weight", b.weight, cap);
  return DominanceWitness{a.id, b.id, c_w, c_h};
}

// Composition of a dominates b and b dominates c.
inline DominanceWitness compose(const DominanceWitness& ab, const DominanceWitness& bc) {
  if (ab.dominated != bc.dominator) throw std::invalid_argument("compose: witnesses do not chain");
  return {ab.dominator, bc.dominated, ab.c_w * bc.c_w, ab.c_h * bc.c_h};
}

struct DominanceLemmaResult {
  std::vector<DominanceWitness> witnesses;
  std::vector<DominanceRefusal> refusals;
  bool ok() const { return refusals.empty(); }
};

// The claimed edges of the dominance lemma with their factors.
inline std::vector<DominanceWitness> dominance_lemma_claims(const Instance& inst) {
  const int k = inst.k();
  std::vector<DominanceWitness> claims;
  for (int j = 2; j <= 4; ++j) {
    claims.push_back({{j, 0}, {j, 1}, 1, 1});
    claims.push_back({{j, 1}, {j, 2}, 2, 1});
  }
  for (int i = 1; i <= k - 3; ++i) claims.push_back({{1, i}, {1, i + 1}, 5, 1});
  claims.push_back({{1, k - 2}, {1, k - 1}, 1, 1});
  claims.push_back({{1, k - 1}, {1, k}, 2, 1});
  claims.push_back({{1, k - 2}, {2, 0}, 1, 6});
  claims.push_back({{2, 0}, {3, 0}, 1, 2});
  claims.push_back({{3, 0}, {4, 0}, 1, 1});
  return claims;
}

inline DominanceLemmaResult verify_dominance_lemma(const Instance& inst) {
  DominanceLemmaResult out;
  for (const auto& claim : dominance_lemma_claims(inst)) {
    auto r = check_dominates(inst[claim.dominator], inst[claim.dominated], claim.c_w, claim.c_h);
    if (auto* w = std::get_if<DominanceWitness>(&r))
      out.witnesses.push_back(*w);
    else
      out.refusals.push_back(std::get<DominanceRefusal>(r));
  }
  return out;
}

// Every member of a reduced set, and for each type arriving after the batch,
// the composed witness showing some member dominates it.
struct ReducedTypeSet {
  TypeId batch;
  std::vector<TypeId> members;
  std::vector<DominanceWitness> coverage;
};

class ClosureGap : public std::runtime_error {
 public:
  explicit ClosureGap(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Shortest chain of lemma edges from `from` to `to`, composed into one witness.
inline std::optional<DominanceWitness> chain(const std::vector<DominanceWitness>& edges, TypeId from, TypeId to) {
  if (from == to) return DominanceWitness{from, to, 1, 1};
  std::map<TypeId, DominanceWitness> reached;
  std::deque<TypeId> queue{from};
  reached.emplace(from, DominanceWitness{from, from, 1, 1});
  while (!queue.empty()) {
    const TypeId cur = queue.front();
    queue.pop_front();
    for (const auto& e : edges) {
      if (e.dominator != cur || reached.contains(e.dominated)) continue;
      reached.emplace(e.dominated, compose(reached.at(cur), e));
      if (e.dominated == to) return reached.at(to);
      queue.push_back(e.dominated);
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::vector<TypeId> reduced_members(const Instance& inst, TypeId batch) {
  const int k = inst.k();
  if (!inst.contains(batch)) throw std::out_of_range("reduced_type_set: no batch " + batch.label());
  if (batch.group == 4 || batch.index == 0 || (batch.group == 1 && batch.index <= k - 2)) return {batch};
  if (batch.group == 1) return {batch, {2, 0}};
  if (batch.group == 2) return {batch, {3, 0}};
  return {batch, {4, 0}};
}

// Throws ClosureGap if some later type is not dominated by any member through
// the verified lemma edges.
inline ReducedTypeSet reduced_type_set(const Instance& inst, TypeId batch) {
  ReducedTypeSet out{batch, reduced_members(inst, batch), {}};
  const auto lemma = verify_dominance_lemma(inst);
  const int first = inst.order_of(batch);
  for (const auto& later : inst.types()) {
    if (later.batch_order <= first) continue;
    std::optional<DominanceWitness> found;
    for (const auto& m : out.members) {
      auto w = detail::chain(lemma.witnesses, m, later.id);
      if (!w) continue;
      if (!holds(check_dominates(inst[w->dominator], inst[w->dominated], w->c_w, w->c_h))) continue;
      found = w;
      break;
    }
    if (!found) throw ClosureGap("reduced_type_set: " + later.label() + " is not dominated by any member for batch " + batch.label());
    out.coverage.push_back(*found);
  }
  return out;
}

inline std::vector<ItemType> reduced_types(const Instance& inst, TypeId batch) {
  std::vector<ItemType> out;
  for (const auto& id : reduced_type_set(inst, batch).members) out.push_back(inst[id]);
  return out;
}

inline void to_json(nlohmann::json& j, const DominanceWitness& w) {
  j = nlohmann::json{{"dominator", w.dominator}, {"dominated", w.dominated}, {"c_w", w.c_w},
                     {"c_h", w.c_h},             {"factor", w.factor()}};
}

inline void to_json(nlohmann::json& j, const DominanceRefusal& r) {
  j = nlohmann::json{{"dominator", r.dominator}, {"dominated", r.dominated}, {"c_w", r.c_w},
                     {"c_h", r.c_h},             {"violated", r.violated},   {"lhs", r.lhs},
                     {"rhs", r.rhs}};
}

// Lemma edges plus, per batch, the composed witnesses covering later types.
inline nlohmann::json dominance_closure_json(const Instance& inst) {
  const auto lemma = verify_dominance_lemma(inst);
  nlohmann::json j;
  j["edges"] = lemma.witnesses;
  j["refusals"] = lemma.refusals;
  nlohmann::json batches = nlohmann::json::array();
  for (const auto& t : inst.types()) {
    nlohmann::json b{{"batch", t.id}};
    try {
      const auto rs = reduced_type_set(inst, t.id);
      b["members"] = rs.members;
      b["coverage"] = rs.coverage;
    } catch (const ClosureGap& e) {
      b["error"] = e.what();
    }
    batches.push_back(std::move(b));
  }
  j["reduced_sets"] = std::move(batches);
  return j;
}

}  // namespace rectlb
