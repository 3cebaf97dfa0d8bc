// Command-line front end: catalog, validate, vbounds, omegas, bound, simulate, render.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rectlb/rectlb.hpp"

namespace {

using namespace rectlb;
using nlohmann::json;

// Exit codes per failing suite.
enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kInequality = 10,
  kDominance = 20,
  kWeightMismatch = 30,
  kPackingFailure = 40,
  kBoundMismatch = 50,
  kAuditViolation = 60,
};

struct RunConfig {
  std::string k_text = "4";
  std::optional<std::int64_t> n;
  std::optional<std::string> delta;
  std::optional<std::string> eps;
  bool strict_div = false;
  std::string alg = "all";
  std::string format;  // json|csv|svg; empty picks the subcommand default
  std::string out;
  std::string batch = "4,2";
  std::size_t template_index = 0;
};

struct KRange {
  int lo = 4;
  int hi = 4;
};

KRange parse_k(const std::string& text) {
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    KRange r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    if (r.hi < r.lo) throw std::invalid_argument("--k: empty range " + text);
    return r;
  }
  const int k = std::stoi(text);
  return {k, k};
}

TypeId parse_batch(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--batch expects j,i");
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

Instance make_instance(const RunConfig& cfg, int k) {
  const std::int64_t n = cfg.n.value_or(cfg.strict_div ? Instance::strict_modulus(k) : 7224);
  const Scalar delta = cfg.delta ? Scalar::parse(*cfg.delta) : Instance::default_delta(k);
  const Scalar eps = cfg.eps ? Scalar::parse(*cfg.eps) : Instance::default_eps();
  return build_instance(k, n, delta, eps, cfg.strict_div);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string dump(const json& j) { return j.dump(2); }

int cmd_catalog(const RunConfig& cfg) {
  const auto r = parse_k(cfg.k_text);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "k,type,batch_order,width,height,weight\n";
    for (int k = r.lo; k <= r.hi; ++k) {
      const Instance inst = make_instance(cfg, k);
      for (const auto& t : inst.types())
        os << k << ',' << t.label() << ',' << t.batch_order << ',' << t.width.fraction_str() << ','
           << t.height.fraction_str() << ',' << t.weight.fraction_str() << '\n';
    }
    emit(cfg, os.str());
    return kOk;
  }
  json out = json::array();
  for (int k = r.lo; k <= r.hi; ++k) out.push_back(catalog_json(make_instance(cfg, k)));
  emit(cfg, dump(out));
  return kOk;
}

int cmd_validate(const RunConfig& cfg) {
  const auto r = parse_k(cfg.k_text);
  json out = json::array();
  bool ineq_ok = true;
  bool dom_ok = true;
  for (int k = r.lo; k <= r.hi; ++k) {
    const Instance inst = make_instance(cfg, k);
    const auto ineq = validate_inequalities(inst);
    const auto dom = verify_dominance_lemma(inst);
    json closure = dominance_closure_json(inst);
    bool closure_ok = true;
    for (const auto& b : closure["reduced_sets"])
      if (b.contains("error")) closure_ok = false;
    ineq_ok = ineq_ok && ineq.all_passed();
    dom_ok = dom_ok && dom.ok() && closure_ok;
    out.push_back({{"k", k},
                   {"inequalities", to_json(ineq)},
                   {"dominance", std::move(closure)},
                   {"dominance_passed", dom.ok() && closure_ok}});
  }
  emit(cfg, dump(out));
  if (!ineq_ok) return kInequality;
  if (!dom_ok) return kDominance;
  return kOk;
}

int cmd_vbounds(const RunConfig& cfg) {
  const auto r = parse_k(cfg.k_text);
  json out = json::array();
  bool ok = true;
  std::ostringstream csv;
  csv << "k,batch,V,table,match,replay\n";
  for (int k = r.lo; k <= r.hi; ++k) {
    const Instance inst = make_instance(cfg, k);
    json rows = json::array();
    for (const auto& t : inst.types()) {
      const auto wb = max_weight_bound(inst, t.id);
      const Scalar table = table_weight_cap(k, t.id);
      const auto rep = replay(inst, wb.certificate);
      const bool match = wb.value == table;
      ok = ok && match && rep.ok;
      rows.push_back({{"batch", t.id},
                      {"V", wb.value},
                      {"table", table},
                      {"match", match},
                      {"replay_ok", rep.ok},
                      {"certificate", to_json(wb.certificate)}});
      csv << k << ',' << t.label() << ',' << wb.value.fraction_str() << ',' << table.fraction_str() << ','
          << (match ? "true" : "false") << ',' << (rep.ok ? "true" : "false") << '\n';
    }
    out.push_back({{"k", k}, {"bounds", rows}});
  }
  emit(cfg, cfg.format == "csv" ? csv.str() : dump(out));
  return ok ? kOk : kWeightMismatch;
}

int cmd_omegas(const RunConfig& cfg) {
  const auto r = parse_k(cfg.k_text);
  json out = json::array();
  bool ok = true;
  std::ostringstream csv;
  csv << "k,batch,N,bins,omega_scaled,table,slack_bins,verified\n";
  for (int k = r.lo; k <= r.hi; ++k) {
    const Instance inst = make_instance(cfg, k);
    json rows = json::array();
    for (const auto& t : inst.types()) {
      const auto cert = build_opt_packing(inst, t.id);
      const auto check = verify_certificate(inst, cert);
      ok = ok && check.ok;
      json row = to_json(cert);
      row["verified"] = check.ok;
      row["problems"] = check.problems;
      row["explicitly_verified_templates"] = check.explicitly_verified;
      rows.push_back(std::move(row));
      csv << k << ',' << t.label() << ',' << inst.n() << ',' << cert.total_bins << ','
          << cert.omega_scaled.fraction_str() << ',' << cert.table_value.fraction_str() << ','
          << cert.slack_bins.fraction_str() << ',' << (check.ok ? "true" : "false") << '\n';
    }
    out.push_back({{"k", k}, {"N", inst.n()}, {"strict", inst.strict_divisibility()}, {"certificates", rows}});
  }
  emit(cfg, cfg.format == "csv" ? csv.str() : dump(out));
  return ok ? kOk : kPackingFailure;
}

int cmd_bound(const RunConfig& cfg) {
  const auto r = parse_k(cfg.k_text);
  std::vector<BoundReport> reports;
  try {
    for (int k = r.lo; k <= r.hi; ++k) reports.push_back(lower_bound_ratio(k));
  } catch (const BoundMismatch& e) {
    std::cerr << e.what() << '\n';
    return kBoundMismatch;
  }
  bool ok = true;
  for (const auto& rep : reports) ok = ok && rep.q_match && rep.limit == Scalar(1274, 667);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << bound_csv_header() << '\n';
    for (const auto& rep : reports) os << to_csv_row(rep) << '\n';
    emit(cfg, os.str());
  } else {
    json out = json::array();
    for (const auto& rep : reports) out.push_back(to_json(rep));
    emit(cfg, dump(out));
  }
  return ok ? kOk : kBoundMismatch;
}

int cmd_simulate(const RunConfig& cfg) {
  const auto r = parse_k(cfg.k_text);
  std::vector<std::string> names;
  if (cfg.alg == "all")
    for (const auto& [name, _] : reference_algorithms()) names.push_back(name);
  else
    names.push_back(cfg.alg);
  json out = json::array();
  std::string csv;
  bool ok = true;
  for (int k = r.lo; k <= r.hi; ++k) {
    const Instance inst = make_instance(cfg, k);
    const auto refs = game_references(inst);
    for (const auto& name : names) {
      auto alg = make_algorithm(name);
      const auto trace = run_game(inst, *alg, refs);
      ok = ok && trace.audit_violations() == 0;
      out.push_back(to_json(trace));
      const auto rows = to_csv(trace);
      csv += csv.empty() ? rows : rows.substr(rows.find('\n') + 1);
    }
  }
  emit(cfg, cfg.format == "csv" ? csv : dump(out));
  return ok ? kOk : kAuditViolation;
}

int cmd_render(const RunConfig& cfg) {
  const auto r = parse_k(cfg.k_text);
  const Instance inst = make_instance(cfg, r.lo);
  const auto cert = build_opt_packing(inst, parse_batch(cfg.batch));
  const auto check = verify_certificate(inst, cert);
  if (!check.ok) {
    std::cerr << check.problems.front() << '\n';
    return kPackingFailure;
  }
  if (cfg.template_index >= cert.templates.size())
    throw std::invalid_argument("--template: certificate has " + std::to_string(cert.templates.size()) + " templates");
  const auto& t = cert.templates[cfg.template_index];
  if (t.items_per_bin() > kExplicitVerifyLimit) throw std::invalid_argument("template too large to draw");
  const auto placements = expand(inst, t);
  if (cfg.format == "json") {
    emit(cfg, dump({{"batch", cert.batch}, {"template", t}, {"placements", placements}}));
    return kOk;
  }
  emit(cfg, render_svg(placements));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial lower-bound toolkit for online rectangle packing"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k_text, "k, or an inclusive range a..b")->capture_default_str();
    sub->add_option("--n", cfg.n, "items per batch (default 7224, or 5^k*7224 with --strict-div)");
    sub->add_option("--delta", cfg.delta, "delta as p/q or 2^-e");
    sub->add_option("--eps", cfg.eps, "eps as p/q");
    sub->add_flag("--strict-div", cfg.strict_div, "require N divisible by 5^k*7224");
    sub->add_option("--format", cfg.format, "json|csv|svg");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };

  auto* catalog = app.add_subcommand("catalog", "dump the item types");
  auto* validate = app.add_subcommand("validate", "inequality and dominance suites");
  auto* vbounds = app.add_subcommand("vbounds", "per-batch weight caps with certificates");
  auto* omegas = app.add_subcommand("omegas", "per-prefix OPT packings, verified");
  auto* bound = app.add_subcommand("bound", "lower-bound ratio per k");
  auto* simulate = app.add_subcommand("simulate", "play the input against an online algorithm");
  auto* render = app.add_subcommand("render", "SVG of an OPT packing template");
  for (auto* sub : {catalog, validate, vbounds, omegas, bound, simulate, render}) sub->fallthrough(false);

  for (auto* sub : {catalog, validate, vbounds, omegas, bound, simulate, render}) common(sub);
  simulate->add_option("--alg", cfg.alg, "next_fit_shelf, first_fit_shelf or all")->capture_default_str();
  render->add_option("--batch", cfg.batch, "batch j,i")->capture_default_str();
  render->add_option("--template", cfg.template_index, "template index within the certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (cfg.format.empty()) cfg.format = render->parsed() ? "svg" : "json";

  try {
    if (catalog->parsed()) return cmd_catalog(cfg);
    if (validate->parsed()) return cmd_validate(cfg);
    if (vbounds->parsed()) return cmd_vbounds(cfg);
    if (omegas->parsed()) return cmd_omegas(cfg);
    if (bound->parsed()) return cmd_bound(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (render->parsed()) return cmd_render(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
