// Runs each acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "rectlb/rectlb.hpp"

using namespace rectlb;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail.str("");
    ok = false;
    detail << why << "; ";
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome weight_caps() {
  Outcome o;
  const auto t0 = Clock::now();
  for (int k : {4, 6, 8}) {
    std::vector<Scalar> expect;
    for (int i = 1; i <= k - 2; ++i) expect.push_back(Scalar(42) * (Scalar(5) - Scalar(1) / pow(Scalar(5), k - i - 2)));
    for (int x : {126, 112, 96, 72, 68, 48, 42, 36, 24, 18, 12}) expect.push_back(Scalar(x));
    const auto inst = build_instance(k, 7224);
    for (const auto& t : inst.types()) {
      const auto wb = max_weight_bound(inst, t.id);
      if (wb.value != expect[static_cast<std::size_t>(t.batch_order)])
        o.fail("k=" + std::to_string(k) + " " + t.label() + " V=" + wb.value.str());
      if (!replay(inst, wb.certificate).ok) o.fail("replay failed for " + t.label());
    }
  }
  const double s = seconds_since(t0);
  if (s >= 60) o.fail("took " + std::to_string(s) + " s");
  if (o.ok) o.detail << "k in {4,6,8}, all entries exact, " << s << " s";
  return o;
}

Outcome opt_caps() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto inst = build_instance(4, Instance::strict_modulus(4), true);
  const std::vector<Scalar> expect{Scalar(1, 5), Scalar(1), Scalar(2), Scalar(4), Scalar(10), Scalar(16), Scalar(28),
                                   Scalar(42), Scalar(56), Scalar(84), Scalar(105), Scalar(126), Scalar(168)};
  std::size_t templates = 0;
  for (const auto& t : inst.types()) {
    const auto cert = build_opt_packing(inst, t.id);
    const auto check = verify_certificate(inst, cert);
    if (!check.ok) o.fail(t.label() + ": " + check.problems.front());
    if (cert.omega_scaled != expect[static_cast<std::size_t>(t.batch_order)])
      o.fail(t.label() + " omega " + cert.omega_scaled.str());
    for (const auto& tpl : cert.templates) {
      ++templates;
      if (!verify_packing(inst, tpl).valid()) o.fail(t.label() + ": template overlaps");
    }
  }
  const double s = seconds_since(t0);
  if (s >= 30) o.fail("took " + std::to_string(s) + " s");
  if (o.ok) o.detail << "N=" << inst.n() << ", " << templates << " templates verified, " << s << " s";
  return o;
}

Outcome bound_formula() {
  Outcome o;
  std::string last;
  for (int k = 4; k <= 12; ++k) {
    try {
      const auto r = lower_bound_ratio(k);
      const Scalar closed = (Scalar(6003) - Scalar(7) / pow(Scalar(5), 2 * k - 6)) / Scalar(168);
      if (r.q != closed) o.fail("k=" + std::to_string(k) + " Q=" + r.q.str());
      if (r.ratio != r.weight_sum / closed) o.fail("k=" + std::to_string(k) + " ratio not exact");
      last = to_decimal(r.ratio, 9);
    } catch (const std::exception& e) {
      o.fail(e.what());
    }
    if (geometric_series_direct(k) != geometric_series_closed(k)) o.fail("series identity k=" + std::to_string(k));
  }
  if (limit_ratio() != Scalar(1274, 667)) o.fail("limit");
  if (to_decimal(limit_ratio(), 7) != "1.9100449") o.fail("limit decimal " + to_decimal(limit_ratio(), 7));
  if (o.ok) o.detail << "Q exact for k=4..12, ratio(12)=" << last << ", limit 1274/667=" << to_decimal(limit_ratio(), 7);
  return o;
}

Outcome suites() {
  Outcome o;
  std::size_t checks = 0, edges = 0;
  for (int k = 4; k <= 12; ++k) {
    const auto inst = build_instance(k, 7224);
    const auto rep = validate_inequalities(inst);
    checks += rep.checks.size();
    for (const auto& c : rep.checks)
      if (!c.passed()) o.fail("k=" + std::to_string(k) + " " + c.name);
    const auto dom = verify_dominance_lemma(inst);
    edges += dom.witnesses.size();
    for (const auto& r : dom.refusals) o.fail("k=" + std::to_string(k) + " " + r.dominator.label() + ">" + r.dominated.label());
    for (const auto& t : inst.types()) {
      try {
        reduced_type_set(inst, t.id);
      } catch (const ClosureGap& e) {
        o.fail(e.what());
      }
    }
  }
  if (o.ok) o.detail << checks << " inequalities, " << edges << " dominance edges, zero failures";
  return o;
}

Outcome pattern_consistency() {
  Outcome o;
  std::size_t tried = 0, feasible = 0;
  for (int k : {4, 5, 6}) {
    const auto inst = build_instance(k, 7224);
    for (const auto& t : inst.types()) {
      const auto types = reduced_types(inst, t.id);
      const Scalar cap = max_weight_bound(inst, t.id).value;
      std::vector<std::int64_t> c(types.size(), 0);
      std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
        if (i == types.size()) {
          std::vector<PatternEntry> p;
          for (std::size_t u = 0; u < types.size(); ++u) p.push_back({types[u], c[u]});
          ++tried;
          if (!pattern_feasible(p).feasible) return;
          ++feasible;
          if (pattern_weight(p) > cap) o.fail("k=" + std::to_string(k) + " " + t.label() + " pattern over V");
          return;
        }
        for (std::int64_t x = 0; x <= left; ++x) {
          c[i] = x;
          rec(i + 1, left - x);
        }
      };
      rec(0, 6);
    }
  }
  if (o.ok) o.detail << tried << " patterns (k=4..6), " << feasible << " feasible, zero over V";
  return o;
}

Outcome realization() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto inst = build_instance(4, 7224);
  const auto refs = game_references(inst);
  for (const auto& [name, make] : reference_algorithms()) {
    auto alg = make();
    const auto trace = run_game(inst, *alg, refs);
    if (trace.best_ratio < Scalar(185, 100)) o.fail(name + " best " + trace.best_ratio.str());
    if (trace.audit_violations()) o.fail(name + " audit " + std::to_string(trace.audit_violations()));
    o.detail << name << " best " << to_decimal(trace.best_ratio, 6) << " at " << trace.best_batch.label()
             << " (gap to 1.9100449: " << to_decimal(trace.best_ratio - limit_ratio(), 6) << "), "
             << trace.audit.size() << " bins audited; ";
  }
  const double s = seconds_since(t0);
  if (s >= 120) o.fail("took " + std::to_string(s) + " s");
  o.detail << s << " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 weight caps", weight_caps},       {"2 OPT caps (strict, k=4)", opt_caps},
      {"3 bound formula", bound_formula},   {"4 inequality and dominance suites", suites},
      {"5 pattern oracle consistency", pattern_consistency}, {"6 empirical realization", realization}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail.str() << std::endl;
  }
  return failed;
}
