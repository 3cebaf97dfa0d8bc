#pragma once

// The batched adversarial input: k + 9 item types arriving in a fixed order,
// N identical items per type.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rectlb/scalar.hpp"

namespace rectlb {

// Identifies type l_{group,index}: group 1 has index 1..k, groups 2..4 have 0..2.
struct TypeId {
  int group = 0;
  int index = 0;

  friend bool operator==(const TypeId&, const TypeId&) = default;
  friend auto operator<=>(const TypeId&, const TypeId&) = default;

  std::string label() const {
    return "l_" + std::to_string(group) + "_" + std::to_string(index);
  }
};

struct ItemType {
  TypeId id;
  Scalar width;
  Scalar height;
  Scalar weight;
  int batch_order = 0;

  std::string label() const { return id.label(); }
};

class Instance {
 public:
  int k() const { return k_; }
  std::int64_t n() const { return n_; }
  const Scalar& delta() const { return delta_; }
  const Scalar& eps() const { return eps_; }
  bool strict_divisibility() const { return strict_; }

  // Types in arrival order; types()[b].batch_order == b.
  const std::vector<ItemType>& types() const { return types_; }
  std::size_t size() const { return types_.size(); }

  bool contains(TypeId id) const { return find_order(id).has_value(); }

  int order_of(TypeId id) const {
    const auto o = find_order(id);
    if (!o) throw std::out_of_range("Instance: no type " + id.label());
    return *o;
  }
  const ItemType& type(TypeId id) const { return types_[static_cast<std::size_t>(order_of(id))]; }
  const ItemType& operator[](TypeId id) const { return type(id); }

  // Height shared by every type of `group`.
  Scalar group_height(int group) const { return height_for(group, eps_); }

  static Scalar height_for(int group, const Scalar& eps) {
    switch (group) {
      case 1: return Scalar(1, 43) + eps;
      case 2: return Scalar(1, 7) + eps;
      case 3: return Scalar(1, 3) + eps;
      case 4: return Scalar(1, 2) + eps;
      default: throw std::out_of_range("Instance: no group " + std::to_string(group));
    }
  }

  // Exclusive upper bounds the construction requires of delta and eps.
  static Scalar delta_limit(int k) { return pow(Scalar(2), -(3LL * k + 50)); }
  static Scalar eps_limit() { return Scalar(1, 10000); }

  static Scalar default_delta(int k) { return pow(Scalar(2), -(3LL * k + 51)); }
  static Scalar default_eps() { return Scalar(1, 20000); }

  // 5^k * 7224; N must be a multiple of this when divisibility is strict.
  static std::int64_t strict_modulus(int k) {
    std::int64_t m = 7224;
    for (int i = 0; i < k; ++i) m *= 5;
    return m;
  }

 private:
  friend Instance build_instance(int, std::int64_t, const Scalar&, const Scalar&, bool);

  std::optional<int> find_order(TypeId id) const {
    if (id.group == 1) {
      if (id.index < 1 || id.index > k_) return std::nullopt;
      return id.index - 1;
    }
    if (id.group < 2 || id.group > 4 || id.index < 0 || id.index > 2) return std::nullopt;
    return k_ + 3 * (id.group - 2) + id.index;
  }

  int k_ = 0;
  std::int64_t n_ = 0;
  Scalar delta_;
  Scalar eps_;
  bool strict_ = false;
  std::vector<ItemType> types_;
};

inline Instance build_instance(int k, std::int64_t n, const Scalar& delta, const Scalar& eps,
                               bool strict_divisibility = false) {
  if (k < 4) throw std::invalid_argument("build_instance: k must be at least 4");
  if (k > 20) throw std::invalid_argument("build_instance: k above 20 overflows 64-bit counts");
  if (n < 1) throw std::invalid_argument("build_instance: N must be positive");
  if (delta.sign() <= 0 || !(delta < Instance::delta_limit(k)))
    throw std::invalid_argument("build_instance: delta must lie in (0, 2^-(3k+50))");
  if (eps.sign() <= 0 || !(eps < Instance::eps_limit()))
    throw std::invalid_argument("build_instance: eps must lie in (0, 1/10000)");
  if (strict_divisibility && n % Instance::strict_modulus(k) != 0)
    throw std::invalid_argument("build_instance: N must be divisible by 5^k * 7224 in strict mode");

  Instance inst;
  inst.k_ = k;
  inst.n_ = n;
  inst.delta_ = delta;
  inst.eps_ = eps;
  inst.strict_ = strict_divisibility;

  const Scalar two(2);
  const Scalar five(5);
  auto push = [&](TypeId id, Scalar w, Scalar v) {
    const int order = static_cast<int>(inst.types_.size());
    inst.types_.push_back(ItemType{id, std::move(w), Instance::height_for(id.group, eps), std::move(v), order});
  };

  for (int i = 1; i <= k - 2; ++i)
    push({1, i}, (Scalar(1) + delta) / pow(five, k - i - 1), Scalar(1) / pow(five, k - i - 2));
  push({1, k - 1}, (Scalar(1) + pow(two, 40) * delta) / 4, Scalar(1));
  push({1, k}, (Scalar(1) + pow(two, 40) * delta) / 2, Scalar(2));

  // Offsets 2^(52-10j), 2^(50-10j), 2^(51-10j) for groups j = 2, 3, 4.
  const int group_weight[5] = {0, 0, 4, 6, 6};
  for (int j = 2; j <= 4; ++j) {
    push({j, 0}, Scalar(1, 4) - pow(two, 52 - 10 * j) * delta, Scalar(group_weight[j]));
    push({j, 1}, Scalar(1, 4) + pow(two, 50 - 10 * j) * delta, Scalar(group_weight[j]));
    push({j, 2}, Scalar(1, 2) + pow(two, 51 - 10 * j) * delta, Scalar(2 * group_weight[j]));
  }
  return inst;
}

inline Instance build_instance(int k, std::int64_t n, bool strict_divisibility = false) {
  return build_instance(k, n, Instance::default_delta(k), Instance::default_eps(), strict_divisibility);
}

// ---------------------------------------------------------------------------
// Inequality suite

enum class Relation { Less, Greater };

struct InequalityCheck {
  std::string group;  // "a" .. "f"
  std::string name;
  Scalar lhs;
  Relation relation = Relation::Less;
  Scalar rhs;
  // Strict margin: rhs - lhs for '<', lhs - rhs for '>'. Positive iff the check passes.
  Scalar residual;

  bool passed() const { return residual.sign() > 0; }
};

struct ValidationReport {
  std::vector<InequalityCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t f = 0;
    for (const auto& c : checks) f += c.passed() ? 0 : 1;
    return f;
  }
  const InequalityCheck* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline ValidationReport validate_inequalities(const Instance& inst) {
  ValidationReport report;
  auto add = [&](std::string group, std::string name, Scalar lhs, Relation rel, Scalar rhs) {
    Scalar residual = rel == Relation::Less ? rhs - lhs : lhs - rhs;
    report.checks.push_back({std::move(group), std::move(name), std::move(lhs), rel, std::move(rhs),
                             std::move(residual)});
  };
  auto w = [&](int j, int i) -> const Scalar& { return inst[{j, i}].width; };

  const int k = inst.k();
  const Scalar& delta = inst.delta();
  const Scalar one(1);
  const Scalar two(2);

  // (a) prefix sums of the group-1 widths
  Scalar prefix;
  for (int t = 1; t <= k - 2; ++t) {
    prefix += w(1, t);
    add("a", "sum w(1,1..." + std::to_string(t) + ") < (1-2^42 delta)/(4*5^(k-t-2))", prefix,
        Relation::Less, (one - pow(two, 42) * delta) / (Scalar(4) * pow(Scalar(5), k - t - 2)));
  }
  // (b)
  add("b", "sum w(1,1..k-1) < 1/2", prefix + w(1, k - 1), Relation::Less, Scalar(1, 2));
  add("b", "sum w(1,1..k) < 1", prefix + w(1, k - 1) + w(1, k), Relation::Less, one);

  // (c)
  for (int j = 2; j <= 4; ++j) {
    const std::string js = std::to_string(j);
    add("c", "w(" + js + ",0)+w(" + js + ",1)+w(" + js + ",2) < 1", w(j, 0) + w(j, 1) + w(j, 2),
        Relation::Less, one);
    add("c", "w(" + js + ",0)+w(" + js + ",1) < 1/2", w(j, 0) + w(j, 1), Relation::Less, Scalar(1, 2));
  }

  // (d) exclusion chains
  add("d", "w(2,0)+3w(1,k-1) > 1", w(2, 0) + Scalar(3) * w(1, k - 1), Relation::Greater, one);
  add("d", "2w(2,0)+2w(1,k-1) > 1", Scalar(2) * w(2, 0) + Scalar(2) * w(1, k - 1), Relation::Greater, one);
  add("d", "3w(2,0)+w(1,k-1) > 1", Scalar(3) * w(2, 0) + w(1, k - 1), Relation::Greater, one);
  add("d", "2w(2,0)+w(1,k) > 1", Scalar(2) * w(2, 0) + w(1, k), Relation::Greater, one);
  for (int j = 2; j <= 3; ++j) {
    const std::string a = "(" + std::to_string(j + 1) + ",0)";
    const std::string b1 = "(" + std::to_string(j) + ",1)";
    const std::string b2 = "(" + std::to_string(j) + ",2)";
    add("d", "w" + a + "+3w" + b1 + " > 1", w(j + 1, 0) + Scalar(3) * w(j, 1), Relation::Greater, one);
    add("d", "2w" + a + "+2w" + b1 + " > 1", Scalar(2) * w(j + 1, 0) + Scalar(2) * w(j, 1), Relation::Greater, one);
    add("d", "3w" + a + "+w" + b1 + " > 1", Scalar(3) * w(j + 1, 0) + w(j, 1), Relation::Greater, one);
    add("d", "2w" + a + "+w" + b2 + " > 1", Scalar(2) * w(j + 1, 0) + w(j, 2), Relation::Greater, one);
  }

  // (e) monotonicities
  add("e", "w(2,0) < w(3,0)", w(2, 0), Relation::Less, w(3, 0));
  add("e", "w(3,0) < w(4,0)", w(3, 0), Relation::Less, w(4, 0));
  add("e", "w(1,k-1) > w(2,1)", w(1, k - 1), Relation::Greater, w(2, 1));
  add("e", "w(2,1) > w(3,1)", w(2, 1), Relation::Greater, w(3, 1));
  add("e", "w(3,1) > w(4,1)", w(3, 1), Relation::Greater, w(4, 1));
  add("e", "w(1,k) > w(2,2)", w(1, k), Relation::Greater, w(2, 2));
  add("e", "w(2,2) > w(3,2)", w(2, 2), Relation::Greater, w(3, 2));
  add("e", "w(3,2) > w(4,2)", w(3, 2), Relation::Greater, w(4, 2));

  // (f)
  add("f", "h1+h2+h3+h4 < 1",
      inst.group_height(1) + inst.group_height(2) + inst.group_height(3) + inst.group_height(4),
      Relation::Less, one);
  return report;
}

// Sum of the per-type weights, i.e. total weight divided by N.
inline Scalar weight_per_item_sum(const Instance& inst) {
  Scalar s;
  for (const auto& t : inst.types()) s += t.weight;
  return s;
}

// 273/4 - 1/(4 * 5^(k-3)); the group-1 prefix 1 + 1/5 + ... + 1/5^(k-3) sums
// to 5/4 - 1/(4 * 5^(k-3)).
inline Scalar weight_per_item_closed_form(int k) {
  return Scalar(273, 4) - Scalar(1) / (Scalar(4) * pow(Scalar(5), k - 3));
}

// Total weight of the whole input, N * sum of weights. Throws if the direct sum
// disagrees with the closed form.
inline Scalar total_weight(const Instance& inst) {
  const Scalar direct = Scalar(static_cast<long long>(inst.n())) * weight_per_item_sum(inst);
  const Scalar closed = Scalar(static_cast<long long>(inst.n())) * weight_per_item_closed_form(inst.k());
  if (direct != closed) throw std::logic_error("total_weight: direct sum " + direct.str() + " != " + closed.str());
  return direct;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const TypeId& id) { j = nlohmann::json{{"j", id.group}, {"i", id.index}}; }
inline void from_json(const nlohmann::json& j, TypeId& id) {
  id.group = j.at("j").get<int>();
  id.index = j.at("i").get<int>();
}

inline void to_json(nlohmann::json& j, const ItemType& t) {
  j = nlohmann::json{{"type", t.id},       {"label", t.label()},   {"width", t.width},
                     {"height", t.height}, {"weight", t.weight}, {"batch_order", t.batch_order}};
}

inline nlohmann::json catalog_json(const Instance& inst) {
  nlohmann::json j;
  j["k"] = inst.k();
  j["N"] = inst.n();
  j["delta"] = inst.delta();
  j["eps"] = inst.eps();
  j["strict_divisibility"] = inst.strict_divisibility();
  j["types"] = inst.types();
  return j;
}

inline nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"group", c.group},
                      {"name", c.name},
                      {"lhs", c.lhs},
                      {"relation", c.relation == Relation::Less ? "<" : ">"},
                      {"rhs", c.rhs},
                      {"residual", c.residual},
                      {"passed", c.passed()}});
  }
  return {{"checks", checks}, {"failures", r.failures()}, {"passed", r.all_passed()}};
}

}  // namespace rectlb
