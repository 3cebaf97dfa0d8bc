#pragma once

// Plays the batched input against an online algorithm.
//
// Items arrive one at a time with no batch label. The engine re-checks every
// placement exactly, records bins used after each batch against the certified
// OPT bound for that prefix, and at the end audits every bin's weight against
// the weight cap of the batch in which the bin was opened.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "rectlb/geometry.hpp"
#include "rectlb/instance.hpp"
#include "rectlb/opt_packer.hpp"
#include "rectlb/weight_bounds.hpp"

namespace rectlb {

struct Item {
  Scalar width;
  Scalar height;
};

// Where the algorithm put an item. `bin` equal to the number of bins opened so
// far opens a new bin.
struct Decision {
  std::size_t bin = 0;
  Scalar x;
  Scalar y;
};

class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual Decision place(const Item& item) = 0;
};

class IllegalPlacement : public std::runtime_error {
 public:
  IllegalPlacement(std::int64_t item_index, const std::string& what)
      : std::runtime_error("item " + std::to_string(item_index) + ": " + what), item_index_(item_index) {}
  std::int64_t item_index() const { return item_index_; }

 private:
  std::int64_t item_index_;
};

// ---------------------------------------------------------------------------
// Shelf algorithms. Shelves are full-width rows whose height equals the height
// of the items they hold; items go left to right.

namespace detail {

struct OpenShelf {
  std::size_t bin = 0;
  Scalar y;
  Scalar used;
};

}  // namespace detail

// One open shelf per height; a new shelf goes into the most recent bin if it
// fits, otherwise a new bin is opened.
class NextFitShelf : public OnlineAlgorithm {
 public:
  std::string name() const override { return "next_fit_shelf"; }

  Decision place(const Item& item) override {
    auto it = open_.find(item.height);
    if (it != open_.end() && it->second.used + item.width <= Scalar(1)) {
      Decision d{it->second.bin, it->second.used, it->second.y};
      it->second.used += item.width;
      return d;
    }
    if (tops_.empty() || tops_.back() + item.height > Scalar(1)) tops_.emplace_back();
    const std::size_t bin = tops_.size() - 1;
    detail::OpenShelf shelf{bin, tops_.back(), item.width};
    tops_.back() += item.height;
    open_.insert_or_assign(item.height, shelf);
    return {bin, Scalar(0), shelf.y};
  }

 private:
  std::map<Scalar, detail::OpenShelf> open_;
  std::vector<Scalar> tops_;  // used height per bin
};

// First shelf of the item's height with room; otherwise a new shelf in the
// first bin with enough height left; otherwise a new bin.
class FirstFitShelf : public OnlineAlgorithm {
 public:
  std::string name() const override { return "first_fit_shelf"; }

  // Residual widths and free heights only shrink, so every shelf (bin) that
  // was skipped for some width (height) stays unusable for anything at least
  // as large. The scan resumes from there; a smaller item rescans from 0.
  Decision place(const Item& item) override {
    auto& cls = shelves_[item.height];
    std::size_t i = (cls.last_width && item.width >= *cls.last_width) ? cls.start : 0;
    while (i < cls.shelves.size() && cls.shelves[i].used + item.width > Scalar(1)) ++i;
    cls.last_width = item.width;
    cls.start = i;
    if (i < cls.shelves.size()) {
      auto& s = cls.shelves[i];
      Decision d{s.bin, s.used, s.y};
      s.used += item.width;
      return d;
    }
    std::size_t bin = (last_height_ && item.height >= *last_height_) ? bin_start_ : 0;
    while (bin < tops_.size() && tops_[bin] + item.height > Scalar(1)) ++bin;
    last_height_ = item.height;
    bin_start_ = bin;
    if (bin == tops_.size()) tops_.emplace_back();
    cls.shelves.push_back({bin, tops_[bin], item.width});
    tops_[bin] += item.height;
    return {bin, Scalar(0), cls.shelves.back().y};
  }

 private:
  struct HeightClass {
    std::vector<detail::OpenShelf> shelves;
    std::optional<Scalar> last_width;
    std::size_t start = 0;
  };
  std::map<Scalar, HeightClass> shelves_;
  std::vector<Scalar> tops_;
  std::optional<Scalar> last_height_;
  std::size_t bin_start_ = 0;
};

using AlgorithmFactory = std::function<std::unique_ptr<OnlineAlgorithm>()>;

inline std::map<std::string, AlgorithmFactory> reference_algorithms() {
  return {{"next_fit_shelf", [] { return std::make_unique<NextFitShelf>(); }},
          {"first_fit_shelf", [] { return std::make_unique<FirstFitShelf>(); }}};
}

inline std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& name) {
  const auto algs = reference_algorithms();
  auto it = algs.find(name);
  if (it == algs.end()) throw std::invalid_argument("unknown algorithm '" + name + "'");
  return it->second();
}

// ---------------------------------------------------------------------------
// Engine

namespace detail {

// Exact overlap index for one bin. Small bins are scanned linearly; larger
// ones bucket placements into a kGrid x kGrid grid of closed cells so that a
// new rectangle is only compared with rectangles sharing a cell.
class BinIndex {
 public:
  static constexpr std::int64_t kGrid = 32;
  static constexpr std::size_t kLinearLimit = 32;

  const std::vector<Placement>& placements() const { return placements_; }

  std::optional<std::size_t> find_overlap(const Placement& p) const {
    if (cells_.empty()) {
      for (std::size_t i = 0; i < placements_.size(); ++i)
        if (interiors_overlap(placements_[i], p)) return i;
      return std::nullopt;
    }
    const auto r = cell_range(p);
    for (std::int64_t cy = r.y0; cy <= r.y1; ++cy)
      for (std::int64_t cx = r.x0; cx <= r.x1; ++cx)
        for (auto i : cells_[static_cast<std::size_t>(cy * kGrid + cx)])
          if (interiors_overlap(placements_[i], p)) return i;
    return std::nullopt;
  }

  void add(Placement p) {
    placements_.push_back(std::move(p));
    if (!cells_.empty()) {
      insert(placements_.size() - 1);
    } else if (placements_.size() > kLinearLimit) {
      cells_.resize(static_cast<std::size_t>(kGrid * kGrid));
      for (std::size_t i = 0; i < placements_.size(); ++i) insert(i);
    }
  }

 private:
  struct Range {
    std::int64_t x0, x1, y0, y1;
  };

  static std::int64_t clamp_cell(const mpz_class& v) {
    if (v < 0) return 0;
    if (v >= kGrid) return kGrid - 1;
    return v.get_si();
  }

  // Cells meeting the open rectangle. Any interior point shared by two
  // rectangles lies in a cell both ranges contain.
  static Range cell_range(const Placement& p) {
    const Scalar g(kGrid);
    return {clamp_cell((p.x * g).floor()), clamp_cell((p.right() * g).ceil() - 1), clamp_cell((p.y * g).floor()),
            clamp_cell((p.top() * g).ceil() - 1)};
  }

  void insert(std::size_t i) {
    const auto r = cell_range(placements_[i]);
    for (std::int64_t cy = r.y0; cy <= r.y1; ++cy)
      for (std::int64_t cx = r.x0; cx <= r.x1; ++cx) cells_[static_cast<std::size_t>(cy * kGrid + cx)].push_back(i);
  }

  std::vector<Placement> placements_;
  std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace detail

struct BatchRecord {
  TypeId batch;
  std::int64_t items = 0;
  std::int64_t bins_used = 0;
  std::int64_t opt_bins = 0;  // certified OPT upper bound for the prefix
  Scalar ratio;               // bins_used / opt_bins
};

struct BinAudit {
  std::size_t bin = 0;
  TypeId opening_batch;
  std::int64_t items = 0;
  Scalar weight;
  Scalar cap;
  bool passed() const { return weight <= cap; }
};

struct GameTrace {
  std::string algorithm;
  int k = 0;
  std::int64_t n = 0;
  std::vector<BatchRecord> batches;
  TypeId best_batch;
  Scalar best_ratio;
  std::vector<BinAudit> audit;
  std::vector<std::vector<Placement>> bins;  // final contents, bin by bin

  std::size_t audit_violations() const {
    std::size_t v = 0;
    for (const auto& a : audit) v += a.passed() ? 0 : 1;
    return v;
  }
};

// Largest prefix ratio; ties go to the earliest batch.
inline std::pair<TypeId, Scalar> best_prefix_ratio(const std::vector<BatchRecord>& batches) {
  if (batches.empty()) throw std::invalid_argument("best_prefix_ratio: empty trace");
  std::size_t best = 0;
  for (std::size_t b = 1; b < batches.size(); ++b)
    if (batches[b].ratio > batches[best].ratio) best = b;
  return {batches[best].batch, batches[best].ratio};
}

inline std::pair<TypeId, Scalar> best_prefix_ratio(const GameTrace& trace) { return best_prefix_ratio(trace.batches); }

// Per-batch certified caps the engine compares against.
struct GameReferences {
  std::vector<std::int64_t> opt_bins;  // by batch order
  std::vector<Scalar> weight_caps;     // by batch order
};

inline GameReferences game_references(const Instance& inst) {
  GameReferences refs;
  for (const auto& t : inst.types()) {
    refs.opt_bins.push_back(opt_upper_bound(inst, t.id));
    refs.weight_caps.push_back(max_weight_bound(inst, t.id).value);
  }
  return refs;
}

inline GameTrace run_game(const Instance& inst, OnlineAlgorithm& alg, const GameReferences& refs) {
  if (refs.opt_bins.size() != inst.size() || refs.weight_caps.size() != inst.size())
    throw std::invalid_argument("run_game: references do not match the instance");
  GameTrace trace;
  trace.algorithm = alg.name();
  trace.k = inst.k();
  trace.n = inst.n();

  std::vector<detail::BinIndex> bins;
  std::vector<int> opened_in;
  std::int64_t index = 0;

  for (const auto& type : inst.types()) {
    const Item item{type.width, type.height};
    for (std::int64_t c = 0; c < inst.n(); ++c, ++index) {
      Decision d = alg.place(item);
      if (d.bin > bins.size())
        throw IllegalPlacement(index, "bin " + std::to_string(d.bin) + " skips ahead of " + std::to_string(bins.size()));
      Placement p = place(type, std::move(d.x), std::move(d.y));
      if (!inside_unit_bin(p)) throw IllegalPlacement(index, "placement leaves the bin");
      if (d.bin == bins.size()) {
        bins.emplace_back();
        opened_in.push_back(type.batch_order);
      } else if (auto hit = bins[d.bin].find_overlap(p)) {
        throw IllegalPlacement(index, "overlaps placement " + std::to_string(*hit) + " in bin " + std::to_string(d.bin));
      }
      bins[d.bin].add(std::move(p));
    }
    const auto b = static_cast<std::size_t>(type.batch_order);
    const auto used = static_cast<std::int64_t>(bins.size());
    trace.batches.push_back(
        {type.id, inst.n(), used, refs.opt_bins[b], Scalar(used) / Scalar(refs.opt_bins[b])});
  }

  std::tie(trace.best_batch, trace.best_ratio) = best_prefix_ratio(trace.batches);

  for (std::size_t i = 0; i < bins.size(); ++i) {
    BinAudit a;
    a.bin = i;
    a.opening_batch = inst.types()[static_cast<std::size_t>(opened_in[i])].id;
    for (const auto& p : bins[i].placements()) a.weight += inst[p.type].weight;
    a.items = static_cast<std::int64_t>(bins[i].placements().size());
    a.cap = refs.weight_caps[static_cast<std::size_t>(opened_in[i])];
    trace.audit.push_back(std::move(a));
    trace.bins.push_back(bins[i].placements());
  }
  return trace;
}

inline GameTrace run_game(const Instance& inst, OnlineAlgorithm& alg) { return run_game(inst, alg, game_references(inst)); }

// ---------------------------------------------------------------------------
// Output

inline nlohmann::json to_json(const GameTrace& t, bool include_bins = false) {
  nlohmann::json batches = nlohmann::json::array();
  for (const auto& b : t.batches)
    batches.push_back({{"batch", b.batch},
                       {"items", b.items},
                       {"bins_used", b.bins_used},
                       {"opt_bins", b.opt_bins},
                       {"ratio", b.ratio},
                       {"ratio_decimal", to_decimal(b.ratio, 6)}});
  nlohmann::json audit = nlohmann::json::array();
  for (const auto& a : t.audit)
    audit.push_back({{"bin", a.bin},
                     {"opening_batch", a.opening_batch},
                     {"items", a.items},
                     {"weight", a.weight},
                     {"cap", a.cap},
                     {"passed", a.passed()}});
  nlohmann::json j{{"algorithm", t.algorithm},
                   {"k", t.k},
                   {"N", t.n},
                   {"batches", batches},
                   {"best_batch", t.best_batch},
                   {"best_ratio", t.best_ratio},
                   {"best_ratio_decimal", to_decimal(t.best_ratio, 6)},
                   {"audit_violations", t.audit_violations()},
                   {"audit", audit}};
  if (include_bins) j["bins"] = t.bins;
  return j;
}

inline std::string to_csv(const GameTrace& t) {
  std::ostringstream os;
  os << "algorithm,batch,items,bins_used,opt_bins,ratio,ratio_decimal\n";
  for (const auto& b : t.batches)
    os << t.algorithm << ',' << b.batch.label() << ',' << b.items << ',' << b.bins_used << ',' << b.opt_bins << ','
       << b.ratio.fraction_str() << ',' << to_decimal(b.ratio, 6) << '\n';
  return os.str();
}

}  // namespace rectlb
