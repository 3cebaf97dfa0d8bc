#pragma once

// Explicit shelf packings that certify upper bounds on the optimal cost of
// every prefix of the input.
//
// A bin template is a stack of full-width shelves. A shelf is cut into equal
// areas; every filled area holds the same left-to-right run of items. A
// template with `multiplicity` m stands for m identical bins, so packings for
// N in the millions are checked once per template.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rectlb/geometry.hpp"
#include "rectlb/instance.hpp"

namespace rectlb {

struct Shelf {
  Scalar height;
  std::int64_t areas = 1;         // equal columns of width 1/areas
  std::vector<TypeId> contents;   // left-to-right run placed in each filled area
  std::int64_t filled = 0;        // the first `filled` areas hold `contents`
};

struct BinTemplate {
  std::vector<Shelf> shelves;  // bottom to top
  std::int64_t multiplicity = 0;

  std::int64_t items_per_bin() const {
    std::int64_t n = 0;
    for (const auto& s : shelves) n += s.filled * static_cast<std::int64_t>(s.contents.size());
    return n;
  }
  std::int64_t count_of(TypeId id) const {
    std::int64_t n = 0;
    for (const auto& s : shelves)
      for (const auto& c : s.contents)
        if (c == id) n += s.filled;
    return n;
  }
};

// Explicit placements of one bin of the template.
inline std::vector<Placement> expand(const Instance& inst, const BinTemplate& t) {
  std::vector<Placement> out;
  Scalar y;
  for (const auto& s : t.shelves) {
    const Scalar area_width = Scalar(1) / Scalar(s.areas);
    for (std::int64_t a = 0; a < s.filled; ++a) {
      Scalar x = Scalar(a) * area_width;
      for (const auto& id : s.contents) {
        out.push_back(place(inst[id], x, y));
        x += inst[id].width;
      }
    }
    y += s.height;
  }
  return out;
}

// Structural check: shelves stack inside the bin, every item is no taller
// than its shelf, every run fits its area. Together these imply an
// interior-disjoint packing without expanding it.
inline std::optional<std::string> verify_shelf_structure(const Instance& inst, const BinTemplate& t) {
  Scalar stack;
  for (std::size_t i = 0; i < t.shelves.size(); ++i) {
    const auto& s = t.shelves[i];
    const std::string where = "shelf " + std::to_string(i) + ": ";
    if (s.height.sign() <= 0) return where + "non-positive height";
    if (s.areas < 1 || s.filled < 0 || s.filled > s.areas) return where + "bad area counts";
    Scalar run;
    for (const auto& id : s.contents) {
      if (!inst.contains(id)) return where + "unknown type " + id.label();
      if (inst[id].height > s.height) return where + id.label() + " taller than shelf";
      run += inst[id].width;
    }
    if (run > Scalar(1) / Scalar(s.areas)) return where + "run wider than its area";
    stack += s.height;
  }
  if (stack > Scalar(1)) return "shelves exceed bin height (" + stack.str() + ")";
  return std::nullopt;
}

inline PackingCheck verify_packing(const Instance& inst, const BinTemplate& t) {
  const auto placements = expand(inst, t);
  return verify_packing(placements);
}

struct OptCertificate {
  TypeId batch;
  std::vector<BinTemplate> templates;
  std::int64_t total_bins = 0;
  Scalar omega_scaled;    // 168 * total_bins / N
  Scalar table_value;     // reference 168 * OPT / N cap for this prefix
  Scalar slack_bins;      // total_bins - table_value * N / 168 (zero in strict mode)
  bool strict = false;
};

// Reference caps on 168 * OPT / N.
inline Scalar table_omega(int k, TypeId batch) {
  if (batch.group == 1) {
    if (batch.index <= k - 2) return Scalar(1) / pow(Scalar(5), k - batch.index - 2);
    return batch.index == k - 1 ? Scalar(2) : Scalar(4);
  }
  static const int table[5][3] = {{0, 0, 0}, {0, 0, 0}, {10, 16, 28}, {42, 56, 84}, {105, 126, 168}};
  return Scalar(table[batch.group][batch.index]);
}

namespace detail {

inline std::vector<TypeId> group_run(const Instance& inst, int group, int upto) {
  std::vector<TypeId> run;
  if (group == 1)
    for (int i = 1; i <= upto; ++i) run.push_back({1, i});
  else
    for (int i = 0; i <= upto; ++i) run.push_back({group, i});
  (void)inst;
  return run;
}

// Shelves of one kind, filled area by area: `fill` areas out of `shelves * areas`.
inline void add_shelves(std::vector<Shelf>& out, const Scalar& height, std::int64_t shelves, std::int64_t areas,
                        const std::vector<TypeId>& run, std::int64_t fill) {
  for (std::int64_t s = 0; s < shelves && fill > 0; ++s) {
    const std::int64_t here = std::min(areas, fill);
    out.push_back(Shelf{height, areas, run, here});
    fill -= here;
  }
}

// A bin kind: some shelves of the batch's own group split into `areas`
// columns, plus `lower_rows` full-set shelves for every earlier group.
struct BinKind {
  int group = 0;               // group whose items fill the column shelves (0: none)
  std::int64_t rows = 0;       // column shelves per bin
  std::int64_t areas = 0;      // columns per shelf
  std::vector<TypeId> run;     // contents of one column
  std::int64_t lower_rows = 0; // full-set shelves per earlier group
  int lower_groups = 0;        // earlier groups are 1 .. lower_groups
};

}  // namespace detail

// Shelf constructions behind each prefix bound.
//
// Group-1 batches: 42 shelves of height h1, each cut into 4 * 5^(k-i-2)
// columns (2 for i = k-1, 1 for i = k), each column holding one item of every
// type l(1,1..i).
//
// Groups j = 2, 3, 4: main bins have r_j shelves of height h_j (6, 2, 1) cut
// into 4, 2 or 1 columns holding l(j,0), l(j,0..1) or l(j,0..2), plus r_j
// full-set shelves for every earlier group (one item of every type of that
// group). Leftover earlier items go to overflow bins with q_j full-set shelves
// per earlier group (42, 6, 2).
inline OptCertificate build_opt_packing(const Instance& inst, TypeId batch) {
  if (!inst.contains(batch)) throw std::out_of_range("build_opt_packing: no batch " + batch.label());
  const int k = inst.k();
  const std::int64_t n = inst.n();
  OptCertificate cert;
  cert.batch = batch;
  cert.strict = inst.strict_divisibility();

  auto add_template = [&](std::vector<Shelf> shelves, std::int64_t mult) {
    if (mult > 0 && !shelves.empty()) cert.templates.push_back(BinTemplate{std::move(shelves), mult});
  };

  if (batch.group == 1) {
    std::int64_t columns = 1;
    if (batch.index <= k - 2) {
      columns = 4;
      for (int e = 0; e < k - batch.index - 2; ++e) columns *= 5;
    } else if (batch.index == k - 1) {
      columns = 2;
    }
    const auto run = detail::group_run(inst, 1, batch.index);
    const Scalar h = inst.group_height(1);
    const std::int64_t per_bin = 42 * columns;
    std::vector<Shelf> full;
    detail::add_shelves(full, h, 42, columns, run, per_bin);
    add_template(std::move(full), n / per_bin);
    if (n % per_bin) {
      std::vector<Shelf> part;
      detail::add_shelves(part, h, 42, columns, run, n % per_bin);
      add_template(std::move(part), 1);
    }
  } else {
    const int j = batch.group;
    const std::int64_t rows = j == 2 ? 6 : (j == 3 ? 2 : 1);
    const std::int64_t overflow_rows = j == 2 ? 42 : (j == 3 ? 6 : 2);
    const std::int64_t areas = batch.index == 0 ? 4 : (batch.index == 1 ? 2 : 1);
    const auto run = detail::group_run(inst, j, batch.index);
    const Scalar hj = inst.group_height(j);

    // Full-set shelves for the earlier groups, tallest first.
    auto lower = [&](std::vector<Shelf>& shelves, std::int64_t per_group, std::int64_t sets) {
      for (int g = j - 1; g >= 1; --g) {
        const auto full_run = detail::group_run(inst, g, g == 1 ? k : 2);
        detail::add_shelves(shelves, inst.group_height(g), per_group, 1, full_run, sets);
      }
    };

    const std::int64_t per_main = rows * areas;
    const std::int64_t main_full = n / per_main;
    const std::int64_t main_rest = n % per_main;

    std::vector<Shelf> main;
    detail::add_shelves(main, hj, rows, areas, run, per_main);
    lower(main, rows, rows);
    add_template(std::move(main), main_full);

    std::int64_t sets_left = n - rows * main_full;
    if (main_rest) {
      std::vector<Shelf> part;
      detail::add_shelves(part, hj, rows, areas, run, main_rest);
      const std::int64_t sets = std::min(rows, sets_left);
      lower(part, rows, sets);
      sets_left -= sets;
      add_template(std::move(part), 1);
    }
    if (sets_left > 0) {
      std::vector<Shelf> over;
      lower(over, overflow_rows, overflow_rows);
      add_template(std::move(over), sets_left / overflow_rows);
      if (sets_left % overflow_rows) {
        std::vector<Shelf> tail;
        lower(tail, overflow_rows, sets_left % overflow_rows);
        add_template(std::move(tail), 1);
      }
    }
  }

  for (const auto& t : cert.templates) cert.total_bins += t.multiplicity;
  cert.omega_scaled = Scalar(168) * Scalar(cert.total_bins) / Scalar(n);
  cert.table_value = table_omega(k, batch);
  cert.slack_bins = Scalar(cert.total_bins) - cert.table_value * Scalar(n) / Scalar(168);
  return cert;
}

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> problems;
  std::size_t explicitly_verified = 0;  // templates checked placement by placement
};

// Templates up to this many placements are also expanded and checked pairwise.
inline constexpr std::int64_t kExplicitVerifyLimit = 200000;

inline CertificateCheck verify_certificate(const Instance& inst, const OptCertificate& cert) {
  CertificateCheck out;
  auto problem = [&](std::string s) {
    out.ok = false;
    out.problems.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < cert.templates.size(); ++i) {
    const auto& t = cert.templates[i];
    if (auto err = verify_shelf_structure(inst, t)) problem("template " + std::to_string(i) + ": " + *err);
    if (t.items_per_bin() <= kExplicitVerifyLimit) {
      ++out.explicitly_verified;
      if (auto c = verify_packing(inst, t); !c.valid())
        problem("template " + std::to_string(i) + ": " + c.violation->describe());
    }
  }
  // Every type of the prefix packed exactly N times, nothing else packed.
  const int last = inst.order_of(cert.batch);
  for (const auto& ty : inst.types()) {
    std::int64_t packed = 0;
    for (const auto& t : cert.templates) packed += t.multiplicity * t.count_of(ty.id);
    const std::int64_t want = ty.batch_order <= last ? inst.n() : 0;
    if (packed != want)
      problem(ty.label() + ": packed " + std::to_string(packed) + " items, expected " + std::to_string(want));
  }
  std::int64_t bins = 0;
  for (const auto& t : cert.templates) bins += t.multiplicity;
  if (bins != cert.total_bins) problem("total_bins does not match template multiplicities");
  if (cert.strict && cert.omega_scaled != cert.table_value)
    problem("168*bins/N = " + cert.omega_scaled.str() + " differs from " + cert.table_value.str());
  // Non-strict: each partial bin adds at most one bin over the exact quotient.
  if (!cert.strict && cert.slack_bins > Scalar(static_cast<long>(cert.templates.size())))
    problem("slack " + cert.slack_bins.str() + " exceeds the number of templates");
  return out;
}

// Certified upper bound on OPT for the prefix ending at `batch`, in bins.
inline std::int64_t opt_upper_bound(const Instance& inst, TypeId batch) {
  const auto cert = build_opt_packing(inst, batch);
  const auto check = verify_certificate(inst, cert);
  if (!check.ok) throw std::logic_error("opt_upper_bound: " + check.problems.front());
  return cert.total_bins;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const Shelf& s) {
  j = nlohmann::json{{"height", s.height}, {"areas", s.areas}, {"contents", s.contents}, {"filled", s.filled}};
}

inline void to_json(nlohmann::json& j, const BinTemplate& t) {
  j = nlohmann::json{{"multiplicity", t.multiplicity}, {"items_per_bin", t.items_per_bin()}, {"shelves", t.shelves}};
}

inline void from_json(const nlohmann::json& j, Shelf& s) {
  s.height = j.at("height").get<Scalar>();
  s.areas = j.at("areas").get<std::int64_t>();
  s.contents = j.at("contents").get<std::vector<TypeId>>();
  s.filled = j.at("filled").get<std::int64_t>();
}

inline void from_json(const nlohmann::json& j, BinTemplate& t) {
  t.multiplicity = j.at("multiplicity").get<std::int64_t>();
  t.shelves = j.at("shelves").get<std::vector<Shelf>>();
}

inline nlohmann::json to_json(const OptCertificate& c) {
  return {{"batch", c.batch},           {"strict", c.strict},           {"total_bins", c.total_bins},
          {"omega_scaled", c.omega_scaled}, {"table_value", c.table_value}, {"slack_bins", c.slack_bins},
          {"templates", c.templates}};
}

}  // namespace rectlb
