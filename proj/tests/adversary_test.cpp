#include <gtest/gtest.h>

#include "rectlb/adversary.hpp"

using namespace rectlb;

namespace {

class FreshBinPerItem : public OnlineAlgorithm {
 public:
  std::string name() const override { return "fresh_bin"; }
  Decision place(const Item&) override { return {next_++, Scalar(0), Scalar(0)}; }

 private:
  std::size_t next_ = 0;
};

class AlwaysCorner : public OnlineAlgorithm {
 public:
  std::string name() const override { return "corner"; }
  Decision place(const Item&) override { return {0, Scalar(0), Scalar(0)}; }
};

class SkipsAhead : public OnlineAlgorithm {
 public:
  std::string name() const override { return "skip"; }
  Decision place(const Item&) override { return {3, Scalar(0), Scalar(0)}; }
};

class PastTheEdge : public OnlineAlgorithm {
 public:
  std::string name() const override { return "edge"; }
  Decision place(const Item&) override { return {0, Scalar(1, 2), Scalar(0)}; }
};

BatchRecord record(int i, Scalar r) { return {TypeId{2, i}, 1, 1, 1, std::move(r)}; }

}  // namespace

TEST(Shelves, NextFitFourForties) {
  const auto inst = build_instance(4, 7224);
  const auto& t = inst[{4, 0}];
  NextFitShelf alg;
  for (int c = 0; c < 4; ++c) {
    const auto d = alg.place({t.width, t.height});
    EXPECT_EQ(d.bin, 0u);
    EXPECT_EQ(d.y, Scalar(0));
    EXPECT_EQ(d.x, Scalar(c) * t.width);
  }
}

TEST(Shelves, NextFitFiveFortyTwos) {
  const auto inst = build_instance(4, 7224);
  const auto& t = inst[{4, 2}];
  NextFitShelf alg;
  for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(alg.place({t.width, t.height}).bin, c);
}

TEST(Shelves, FirstFitReusesShortShelf) {
  const auto inst = build_instance(4, 7224);
  const auto& a = inst[{1, 1}];
  const auto& b = inst[{1, 2}];
  FirstFitShelf alg;
  const auto da = alg.place({a.width, a.height});
  const auto db = alg.place({b.width, b.height});
  EXPECT_EQ(db.bin, da.bin);
  EXPECT_EQ(db.y, da.y);
  EXPECT_EQ(db.x, a.width);
}

TEST(Shelves, FirstFitReturnsToEarlierShelves) {
  const Item wide{Scalar(3, 5), Scalar(1, 10)};
  const Item narrow{Scalar(1, 5), Scalar(1, 10)};
  FirstFitShelf ff;
  NextFitShelf nf;
  ff.place(wide);
  ff.place(wide);  // second shelf
  nf.place(wide);
  nf.place(wide);
  EXPECT_EQ(ff.place(narrow).y, Scalar(0));
  EXPECT_EQ(nf.place(narrow).y, Scalar(1, 10));
}

TEST(Shelves, Registry) {
  const auto algs = reference_algorithms();
  EXPECT_EQ(algs.size(), 2u);
  EXPECT_EQ(make_algorithm("next_fit_shelf")->name(), "next_fit_shelf");
  EXPECT_EQ(make_algorithm("first_fit_shelf")->name(), "first_fit_shelf");
  EXPECT_THROW(make_algorithm("best_fit"), std::invalid_argument);
}

TEST(BestPrefix, TieGoesToEarliest) {
  const std::vector<BatchRecord> eq{record(0, Scalar(3, 2)), record(1, Scalar(3, 2)), record(2, Scalar(3, 2))};
  EXPECT_EQ(best_prefix_ratio(eq).first, (TypeId{2, 0}));
  const std::vector<BatchRecord> up{record(0, Scalar(1)), record(1, Scalar(2)), record(2, Scalar(3))};
  EXPECT_EQ(best_prefix_ratio(up).first, (TypeId{2, 2}));
  EXPECT_EQ(best_prefix_ratio(up).second, Scalar(3));
  EXPECT_THROW(best_prefix_ratio(std::vector<BatchRecord>{}), std::invalid_argument);
}

TEST(Game, FreshBinPerItem) {
  const auto inst = build_instance(4, 7224);
  FreshBinPerItem alg;
  const auto trace = run_game(inst, alg);
  ASSERT_EQ(trace.batches.size(), 13u);
  EXPECT_EQ(trace.batches[0].ratio, Scalar(7224) / Scalar(opt_upper_bound(inst, {1, 1})));
  EXPECT_EQ(trace.batches.back().bins_used, 13 * 7224);
  EXPECT_EQ(trace.audit_violations(), 0u);
}

TEST(Game, IllegalPlacementsAreCaught) {
  const auto inst = build_instance(4, 10);
  const auto refs = game_references(inst);
  AlwaysCorner corner;
  try {
    run_game(inst, corner, refs);
    FAIL() << "overlap not detected";
  } catch (const IllegalPlacement& e) {
    EXPECT_EQ(e.item_index(), 1);
  }
  SkipsAhead skip;
  try {
    run_game(inst, skip, refs);
    FAIL() << "skip not detected";
  } catch (const IllegalPlacement& e) {
    EXPECT_EQ(e.item_index(), 0);
  }
  PastTheEdge edge;
  EXPECT_THROW(run_game(build_instance(4, 10), edge, refs), IllegalPlacement);
}

TEST(Game, ReferenceAlgorithmsAreLegalAndAudited) {
  for (int k : {4, 5})
    for (std::int64_t n : {std::int64_t{60}, std::int64_t{1000}}) {
      const auto inst = build_instance(k, n);
      const auto refs = game_references(inst);
      for (const auto& [name, make] : reference_algorithms()) {
        auto alg = make();
        const auto trace = run_game(inst, *alg, refs);
        EXPECT_EQ(trace.audit_violations(), 0u) << name << " k=" << k << " n=" << n;
        for (const auto& bin : trace.bins) EXPECT_TRUE(verify_packing(bin).valid()) << name;
        std::int64_t items = 0;
        for (const auto& bin : trace.bins) items += static_cast<std::int64_t>(bin.size());
        EXPECT_EQ(items, n * static_cast<std::int64_t>(inst.size()));
      }
    }
}

TEST(Game, Deterministic) {
  const auto inst = build_instance(4, 500);
  const auto refs = game_references(inst);
  for (const auto& [name, make] : reference_algorithms()) {
    auto a = make();
    auto b = make();
    EXPECT_EQ(to_json(run_game(inst, *a, refs), true).dump(), to_json(run_game(inst, *b, refs), true).dump()) << name;
  }
}

TEST(Game, NextFitAtDeskScale) {
  const auto inst = build_instance(4, 7224);
  NextFitShelf alg;
  const auto trace = run_game(inst, alg);
  const auto [batch, ratio] = best_prefix_ratio(trace);
  EXPECT_EQ(batch, trace.best_batch);
  EXPECT_EQ(ratio, trace.best_ratio);
  EXPECT_GE(ratio, Scalar(185, 100));
  EXPECT_EQ(trace.audit_violations(), 0u);
  const auto csv = to_csv(trace);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 14);
}
