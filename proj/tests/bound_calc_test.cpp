#include <gtest/gtest.h>

#include "rectlb/bound_calc.hpp"

using namespace rectlb;

namespace {

// Caps scaled by 168 for k = 4, in batch order.
const std::vector<int> kOmega168Tail{2, 4, 10, 16, 28, 42, 56, 84, 105, 126, 168};
const std::vector<int> kVTail{126, 112, 96, 72, 68, 48, 42, 36, 24, 18, 12};

}  // namespace

TEST(ComputeQ, ConstantBlockIs5828) {
  Scalar block;
  int prev = 1;
  for (std::size_t b = 0; b < kOmega168Tail.size(); ++b) {
    block += Scalar((kOmega168Tail[b] - prev) * kVTail[b]);
    prev = kOmega168Tail[b];
  }
  EXPECT_EQ(block, Scalar(5828));

  std::vector<Scalar> om{Scalar(0), Scalar(1, 168)}, vs{Scalar(0), Scalar(168)};
  for (std::size_t b = 0; b < kOmega168Tail.size(); ++b) {
    om.push_back(Scalar(kOmega168Tail[b], 168));
    vs.push_back(Scalar(kVTail[b]));
  }
  // Batch 1 contributes nothing (zero omega), batch 2 contributes 168/168 = 1.
  EXPECT_EQ(compute_q(om, vs) * Scalar(168), Scalar(5828 + 168));
}

TEST(ComputeQ, TableValuesAtK4) {
  std::vector<Scalar> om{Scalar(1, 5 * 168), Scalar(1, 168)};
  std::vector<Scalar> vs{Scalar(1008, 5), Scalar(168)};
  for (std::size_t b = 0; b < kOmega168Tail.size(); ++b) {
    om.push_back(Scalar(kOmega168Tail[b], 168));
    vs.push_back(Scalar(kVTail[b]));
  }
  EXPECT_EQ(compute_q(om, vs), (Scalar(6003) - Scalar(7, 25)) / Scalar(168));
  EXPECT_EQ(compute_q(om, vs), Scalar(37517, 1050));
}

TEST(ComputeQ, EqualOmegasCollapseToFirstTerm) {
  const Scalar om(3, 7);
  const std::vector<Scalar> oms(5, om);
  const std::vector<Scalar> vs{Scalar(11), Scalar(2), Scalar(3), Scalar(4), Scalar(5)};
  EXPECT_EQ(compute_q(oms, vs), om * Scalar(11));
}

TEST(ComputeQ, RejectsDecreasingOmegas) {
  const std::vector<Scalar> oms{Scalar(1), Scalar(1, 2)};
  const std::vector<Scalar> vs{Scalar(1), Scalar(1)};
  EXPECT_THROW(compute_q(oms, vs), MonotonicityError);
  EXPECT_THROW(compute_q(std::vector<Scalar>{Scalar(1)}, vs), std::invalid_argument);
}

TEST(ClosedFormQ, Values) {
  EXPECT_EQ(closed_form_q(4), Scalar(37517, 1050));
  EXPECT_EQ(closed_form_q(5), (Scalar(6003) - Scalar(7, 625)) / Scalar(168));
  for (int k = 4; k < 30; ++k) {
    EXPECT_LT(closed_form_q(k), closed_form_q(k + 1));
    EXPECT_LT(closed_form_q(k), Scalar(6003, 168));
    EXPECT_EQ(Scalar(6003, 168) - closed_form_q(k), Scalar(1) / (Scalar(24) * pow(Scalar(5), 2 * k - 6)));
  }
}

TEST(GeometricSeries, DirectEqualsClosed) {
  for (int k = 4; k <= 20; ++k) EXPECT_EQ(geometric_series_direct(k), geometric_series_closed(k)) << k;
}

TEST(Bound, LimitConstant) {
  EXPECT_EQ(limit_ratio(), Scalar(11466, 6003));
  EXPECT_EQ(to_decimal(limit_ratio(), 7), "1.9100449");
  EXPECT_EQ(limit_ratio(), Scalar(273, 4) / Scalar(6003, 168));
}

TEST(Bound, ReportAtK4) {
  const auto r = lower_bound_ratio(4);
  EXPECT_TRUE(r.q_match);
  EXPECT_EQ(r.q, Scalar(37517, 1050));
  EXPECT_EQ(r.weight_sum, Scalar(341, 5));
  EXPECT_EQ(r.ratio, (Scalar(11466) - Scalar(168, 20)) / (Scalar(6003) - Scalar(7, 25)));
  EXPECT_EQ(r.limit, Scalar(1274, 667));
  EXPECT_EQ(r.omegas.size(), 13u);
}

TEST(Bound, SweepIsExact) {
  for (int k = 4; k <= 12; ++k) {
    const auto r = lower_bound_ratio(k);
    EXPECT_EQ(r.q, closed_form_q(k)) << k;
    EXPECT_EQ(r.ratio, r.weight_sum / r.q) << k;
    EXPECT_EQ(r.ratio.str().find('.'), std::string::npos);
  }
}

TEST(Bound, CsvRow) {
  const auto row = to_csv_row(lower_bound_ratio(4));
  EXPECT_EQ(row.rfind("4,341/5,", 0), 0u) << row;
  EXPECT_NE(row.find(",1274/667,1.9100449"), std::string::npos) << row;
}
