#include "msc/affinity.hpp"
#include "msc/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace msc {
namespace {

VectorDataset random_columns(int dim, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return VectorDataset{oracle::random_matrix(dim, n, rng), std::nullopt};
}

TEST(NormalizeColumns, ScalesToUnitNorm) {
  VectorDataset x{Eigen::MatrixXd(2, 1), std::nullopt};
  x.columns << 3, 4;
  const VectorDataset u = normalize_columns(x);
  EXPECT_DOUBLE_EQ(u.columns(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(u.columns(1, 0), 0.8);
}

TEST(NormalizeColumns, UnitColumnsUnchanged) {
  const VectorDataset u = normalize_columns(random_columns(5, 7, 1));
  const VectorDataset again = normalize_columns(u);
  EXPECT_LE((again.columns - u.columns).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(NormalizeColumns, ZeroColumnNamesIndex) {
  VectorDataset x = random_columns(3, 4, 2);
  x.columns.col(2).setZero();
  try {
    normalize_columns(x);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("index 2"), std::string::npos);
  }
}

TEST(TscAffinity, IdenticalColumnsGetUnitWeight) {
  VectorDataset x{Eigen::MatrixXd(2, 2), std::nullopt};
  x.columns << 1, 1, 0, 0;
  const AffinityMatrix w = tsc_affinity(x, TscParams{1});
  EXPECT_DOUBLE_EQ(w.weights()(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(w.weights()(1, 0), 1.0);
  EXPECT_EQ(w.weights()(0, 0), 0.0);
}

TEST(TscAffinity, OrthogonalColumnsGetExpMinusPi) {
  VectorDataset x{Eigen::MatrixXd::Identity(2, 2), std::nullopt};
  const AffinityMatrix w = tsc_affinity(x, TscParams{1});
  EXPECT_NEAR(w.weights()(0, 1), std::exp(-std::numbers::pi), 1e-15);
  EXPECT_NEAR(w.weights()(0, 1), 0.04322, 1e-5);
}

TEST(TscAffinity, MatchesBruteForceOnSixColumns) {
  const VectorDataset x = normalize_columns(random_columns(4, 6, 7));
  const AffinityMatrix w = tsc_affinity(x, TscParams{2});
  EXPECT_LE((w.weights() - oracle::tsc(x.columns, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TscAffinity, MatchesBruteForceAcrossSizes) {
  for (int inst = 0; inst < 30; ++inst) {
    const int n = 3 + inst % 10;
    const int dim = 2 + inst % 5;
    const VectorDataset x = random_columns(dim, n, 100 + inst);
    for (int q = 1; q < n; ++q) {
      const AffinityMatrix w = tsc_affinity(x, TscParams{q});
      EXPECT_LE((w.weights() - oracle::tsc(x.columns, q)).cwiseAbs().maxCoeff(), 1e-12)
          << "instance " << inst << " q " << q;
    }
  }
}

TEST(TscAffinity, TiesGoToLowerIndex) {
  // Columns 1, 2 and 3 are equally close to column 0.
  VectorDataset x{Eigen::MatrixXd(3, 4), std::nullopt};
  x.columns << 1, 1, 1, 1,
               0, 1, -1, 0,
               0, 0, 0, 1;
  const AffinityMatrix rows = tsc_affinity_rows(x, TscParams{1});
  EXPECT_GT(rows.weights()(0, 1), 0.0);
  EXPECT_EQ(rows.weights()(0, 2), 0.0);
  EXPECT_EQ(rows.weights()(0, 3), 0.0);
}

TEST(TscAffinity, RowSupportHasExactlyQEntries) {
  for (int inst = 0; inst < 10; ++inst) {
    const VectorDataset x = random_columns(5, 12, 300 + inst);
    for (int q : {1, 3, 7, 11}) {
      const Eigen::MatrixXd rows = tsc_affinity_rows(x, TscParams{q}).weights();
      for (Index i = 0; i < rows.rows(); ++i) EXPECT_EQ((rows.row(i).array() > 0.0).count(), q);
    }
  }
}

// With mutually orthogonal groups the Gram matrix has few nonzeros per row;
// retained exact zeros still carry the arccos(0) weight.
TEST(TscAffinity, RetainedZeroGramEntriesKeepBaseWeight) {
  VectorDataset x{Eigen::MatrixXd::Zero(4, 4), std::nullopt};
  x.columns(0, 0) = 1;
  x.columns(0, 1) = 1;
  x.columns(2, 2) = 1;
  x.columns(3, 3) = 1;
  const Eigen::MatrixXd rows = tsc_affinity_rows(x, TscParams{1}).weights();
  EXPECT_DOUBLE_EQ(rows(0, 1), 1.0);
  EXPECT_NEAR(rows(2, 0), std::exp(-std::numbers::pi), 1e-15);
  EXPECT_EQ((rows.row(2).array() > 0.0).count(), 1);
  const Eigen::MatrixXd rows2 = tsc_affinity_rows(x, TscParams{2}).weights();
  EXPECT_EQ((rows2.row(0).array() > 0.0).count(), 2);
}

TEST(TscAffinity, WeightsInUnitInterval) {
  const AffinityMatrix w = tsc_affinity(random_columns(6, 20, 5), TscParams{4});
  EXPECT_TRUE(w.is_symmetric());
  EXPECT_GE(w.weights().minCoeff(), 0.0);
  EXPECT_LE(w.weights().maxCoeff(), 1.0);
  const Eigen::MatrixXd rows = tsc_affinity_rows(random_columns(6, 20, 5), TscParams{4}).weights();
  for (Index k = 0; k < rows.size(); ++k) {
    const double v = rows.data()[k];
    if (v != 0.0) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(TscAffinity, InvariantUnderPositiveColumnScaling) {
  const VectorDataset x = random_columns(5, 15, 8);
  const Eigen::MatrixXd base = tsc_affinity(x, TscParams{3}).weights();
  VectorDataset pow2 = x;
  pow2.columns *= 8.0;
  EXPECT_EQ(tsc_affinity(pow2, TscParams{3}).weights(), base);
  VectorDataset mixed = x;
  for (Index j = 0; j < mixed.size(); ++j) mixed.columns.col(j) *= 0.3 + 1.7 * j;
  EXPECT_LE((tsc_affinity(mixed, TscParams{3}).weights() - base).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TscAffinity, RejectsThresholdOutOfRange) {
  const VectorDataset x = random_columns(3, 5, 9);
  EXPECT_THROW(tsc_affinity(x, TscParams{0}), InvalidArgument);
  EXPECT_THROW(tsc_affinity(x, TscParams{5}), InvalidArgument);
  EXPECT_NO_THROW(tsc_affinity(x, TscParams{4}));
}

TEST(TscAffinity, DefaultThreshold) {
  EXPECT_EQ(default_tsc_threshold(40, 2), 3);
  EXPECT_EQ(default_tsc_threshold(2000, 2), 50);
  EXPECT_EQ(default_tsc_threshold(3, 1), 2);
}

}  // namespace
}  // namespace msc
