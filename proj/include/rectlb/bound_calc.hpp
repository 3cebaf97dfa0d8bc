#pragma once

// The competitive-ratio bound: total weight per N over the telescoped sum
// Q = sum over batches of (Omega_b - Omega_{b-1}) * V_b, with Omega the
// per-N optimal-cost caps and V the per-bin weight caps.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rectlb/instance.hpp"
#include "rectlb/opt_packer.hpp"
#include "rectlb/weight_bounds.hpp"

namespace rectlb {

class MonotonicityError : public std::invalid_argument {
 public:
  explicit MonotonicityError(const std::string& what) : std::invalid_argument(what) {}
};

// `omegas` and `vs` are indexed by batch order. Omegas are caps on OPT / N.
inline Scalar compute_q(std::span<const Scalar> omegas, std::span<const Scalar> vs) {
  if (omegas.size() != vs.size() || omegas.empty())
    throw std::invalid_argument("compute_q: need one omega and one V per batch");
  Scalar q;
  Scalar prev;
  for (std::size_t b = 0; b < omegas.size(); ++b) {
    if (omegas[b] < prev)
      throw MonotonicityError("compute_q: omega decreases at batch " + std::to_string(b));
    q += (omegas[b] - prev) * vs[b];
    prev = omegas[b];
  }
  return q;
}

inline Scalar compute_q(const Instance& inst, std::span<const Scalar> omegas, std::span<const Scalar> vs) {
  if (omegas.size() != inst.size()) throw std::invalid_argument("compute_q: omega count differs from type count");
  return compute_q(omegas, vs);
}

// (6003 - 7/5^(2k-6)) / 168
inline Scalar closed_form_q(int k) {
  if (k < 4) throw std::invalid_argument("closed_form_q: k must be at least 4");
  return (Scalar(6003) - Scalar(7) / pow(Scalar(5), 2LL * k - 6)) / Scalar(168);
}

// sum_{i=2}^{k-2} (5 - 1/5^(k-i-2)) * 4/5^(k-i-1), term by term.
inline Scalar geometric_series_direct(int k) {
  Scalar s;
  for (int i = 2; i <= k - 2; ++i)
    s += (Scalar(5) - Scalar(1) / pow(Scalar(5), k - i - 2)) * Scalar(4) / pow(Scalar(5), k - i - 1);
  return s;
}

// 25/6 - 1/5^(k-4) + 1/(6 * 5^(2k-7))
inline Scalar geometric_series_closed(int k) {
  return Scalar(25, 6) - Scalar(1) / pow(Scalar(5), k - 4) + Scalar(1) / (Scalar(6) * pow(Scalar(5), 2LL * k - 7));
}

inline Scalar limit_ratio() { return Scalar(1274, 667); }

struct BoundReport {
  int k = 0;
  Scalar weight_sum;  // per N
  Scalar q;           // telescoped from certified V and Omega
  Scalar q_closed;
  bool q_match = false;
  Scalar ratio;       // weight_sum / q_closed
  Scalar limit;
  std::string decimal_preview;
  std::vector<Scalar> omegas;  // certified OPT / N caps, batch order
  std::vector<Scalar> vs;      // certified weight caps, batch order
};

class BoundMismatch : public std::runtime_error {
 public:
  explicit BoundMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct PerBatchCaps {
  std::vector<Scalar> omegas;
  std::vector<Scalar> vs;
};

// Certified caps for every batch: V from the line bound, Omega from a verified
// shelf packing of a strict-divisibility instance.
inline PerBatchCaps certified_caps(int k) {
  const Instance inst = build_instance(k, Instance::strict_modulus(k), true);
  PerBatchCaps caps;
  for (const auto& t : inst.types()) {
    caps.vs.push_back(max_weight_bound(inst, t.id).value);
    const auto cert = build_opt_packing(inst, t.id);
    const auto check = verify_certificate(inst, cert);
    if (!check.ok) throw BoundMismatch("certified_caps: " + check.problems.front());
    caps.omegas.push_back(Scalar(cert.total_bins) / Scalar(inst.n()));
  }
  return caps;
}

// Throws BoundMismatch if the telescoped Q disagrees with the closed form.
inline BoundReport lower_bound_ratio(int k) {
  if (k < 4) throw std::invalid_argument("lower_bound_ratio: k must be at least 4");
  BoundReport r;
  r.k = k;
  const Instance inst = build_instance(k, 1);
  r.weight_sum = weight_per_item_sum(inst);
  if (r.weight_sum != weight_per_item_closed_form(k))
    throw BoundMismatch("lower_bound_ratio: weight sum differs from closed form");
  auto caps = certified_caps(k);
  r.omegas = std::move(caps.omegas);
  r.vs = std::move(caps.vs);
  r.q = compute_q(r.omegas, r.vs);
  r.q_closed = closed_form_q(k);
  r.q_match = r.q == r.q_closed;
  if (!r.q_match)
    throw BoundMismatch("lower_bound_ratio: telescoped Q " + r.q.str() + " != closed form " + r.q_closed.str());
  r.ratio = r.weight_sum / r.q_closed;
  r.limit = limit_ratio();
  r.decimal_preview = to_decimal(r.ratio, 9);
  return r;
}

inline nlohmann::json to_json(const BoundReport& r) {
  return {{"k", r.k},
          {"weight_sum", r.weight_sum},
          {"Q", r.q},
          {"Q_closed", r.q_closed},
          {"Q_match", r.q_match},
          {"ratio", r.ratio},
          {"ratio_decimal", r.decimal_preview},
          {"limit", r.limit},
          {"limit_decimal", to_decimal(r.limit, 7)},
          {"omegas", r.omegas},
          {"vs", r.vs}};
}

inline std::string bound_csv_header() { return "k,weight_sum,Q,Q_closed,Q_match,ratio,ratio_decimal,limit,limit_decimal"; }

inline std::string to_csv_row(const BoundReport& r) {
  return std::to_string(r.k) + "," + r.weight_sum.fraction_str() + "," + r.q.fraction_str() + "," +
         r.q_closed.fraction_str() + "," + (r.q_match ? "true" : "false") + "," + r.ratio.fraction_str() + "," +
         r.decimal_preview + "," + r.limit.fraction_str() + "," + to_decimal(r.limit, 7);
}

}  // namespace rectlb
