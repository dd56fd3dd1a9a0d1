#include "msc/affinity.hpp"
#include "msc/error.hpp"
#include "msc/eval.hpp"
#include "msc/spectral.hpp"
#include "msc/synth.hpp"

#include <gtest/gtest.h>

#include <unsupported/Eigen/KroneckerProduct>

namespace msc {
namespace {

double orthonormality_defect(const Eigen::MatrixXd& u) {
  return (u.transpose() * u - Eigen::MatrixXd::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

TEST(RandomBasis, SquareBasisIsOrthogonal) {
  Rng rng(11);
  const Eigen::MatrixXd q = random_orthonormal_basis(5, 5, rng);
  EXPECT_LE(orthonormality_defect(q), 1e-10);
  EXPECT_NEAR(std::abs(q.determinant()), 1.0, 1e-8);
}

TEST(RandomBasis, SameSeedSameMatrix) {
  Rng a(42);
  Rng b(42);
  EXPECT_EQ(random_orthonormal_basis(4, 2, a), random_orthonormal_basis(4, 2, b));
}

TEST(RandomBasis, TallBasisHasIdentityGram) {
  Rng rng(5);
  const Eigen::MatrixXd u = random_orthonormal_basis(4, 2, rng);
  EXPECT_LE(orthonormality_defect(u), 1e-10);
}

TEST(RandomBasis, RejectsMoreColumnsThanRows) {
  Rng rng(1);
  EXPECT_THROW(random_orthonormal_basis(2, 3, rng), InvalidArgument);
}

TEST(GenerateUos, NoiselessPointsLieInTheirSubspace) {
  UosSpec spec;
  spec.clusters = 3;
  spec.points = 30;
  spec.ambient_dim = 10;
  spec.latent_dim = 2;
  spec.seed = 9;
  const UosSample s = generate_uos(spec);
  ASSERT_EQ(s.data.size(), 30);
  ASSERT_EQ(s.model.bases.size(), 3u);
  for (const auto& u : s.model.bases) EXPECT_LE(orthonormality_defect(u), 1e-10);
  for (Index n = 0; n < s.data.size(); ++n) {
    const Eigen::MatrixXd& u = s.model.bases[(*s.data.labels)[n]];
    const Eigen::VectorXd x = s.data.columns.col(n);
    EXPECT_LE((x - u * (u.transpose() * x)).norm(), 1e-8);
  }
}

TEST(GenerateUos, SingleLineHasRankOne) {
  UosSpec spec;
  spec.clusters = 1;
  spec.points = 12;
  spec.ambient_dim = 6;
  spec.latent_dim = 1;
  spec.seed = 3;
  const UosSample s = generate_uos(spec);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.data.columns);
  const auto sv = svd.singularValues();
  EXPECT_GT(sv(0), 1e-3);
  EXPECT_LE(sv(1), 1e-10 * sv(0));
}

TEST(GenerateUos, OrthogonalClustersAreSeparatedByTsc) {
  UosSpec spec;
  spec.clusters = 2;
  spec.points = 40;
  spec.ambient_dim = 10;
  spec.latent_dim = 2;
  spec.mutually_orthogonal = true;
  spec.seed = 17;
  const UosSample s = generate_uos(spec);
  const AffinityMatrix w = tsc_affinity(s.data, TscParams{3});
  SpectralParams sp;
  sp.clusters = 2;
  sp.seed = 1;
  const LabelVector labels = spectral_cluster(w, sp);
  EXPECT_EQ(clustering_error(labels, *s.data.labels, 2).clustering_error, 0.0);
}

TEST(GenerateUos, BalancedAssignmentIsRoundRobin) {
  UosSpec spec;
  spec.clusters = 3;
  spec.points = 7;
  const UosSample s = generate_uos(spec);
  EXPECT_EQ(*s.data.labels, (LabelVector{0, 1, 2, 0, 1, 2, 0}));
}

TEST(GenerateUos, PerClusterCountsGiveBlocks) {
  UosSpec spec;
  spec.clusters = 2;
  spec.per_cluster = {2, 3};
  const UosSample s = generate_uos(spec);
  EXPECT_EQ(*s.data.labels, (LabelVector{0, 0, 1, 1, 1}));
}

TEST(GenerateUos, UniformAssignmentStaysInRange) {
  UosSpec spec;
  spec.clusters = 4;
  spec.points = 50;
  spec.assignment = Assignment::Uniform;
  spec.seed = 2;
  const UosSample s = generate_uos(spec);
  for (int k : *s.data.labels) {
    EXPECT_GE(k, 0);
    EXPECT_LT(k, 4);
  }
}

TEST(GenerateUos, RejectsInvalidSpecs) {
  UosSpec spec;
  spec.latent_dim = spec.ambient_dim + 1;
  EXPECT_THROW(generate_uos(spec), InvalidArgument);
  spec = UosSpec{};
  spec.clusters = 0;
  EXPECT_THROW(generate_uos(spec), InvalidArgument);
  spec = UosSpec{};
  spec.noise_sigma = -1.0;
  EXPECT_THROW(generate_uos(spec), InvalidArgument);
  spec = UosSpec{};
  spec.clusters = 6;
  spec.latent_dim = 2;
  spec.mutually_orthogonal = true;
  EXPECT_THROW(generate_uos(spec), InvalidArgument);
}

UomsSpec uoms_spec() {
  UomsSpec spec;
  spec.clusters = 3;
  spec.points = 24;
  spec.col_ambient = 8;
  spec.row_ambient = 6;
  spec.col_latent = 2;
  spec.row_latent = 3;
  spec.seed = 21;
  return spec;
}

TEST(GenerateUoms, FibersLieInClusterSubspaces) {
  const UomsSample s = generate_uoms(uoms_spec());
  ASSERT_EQ(s.data.size(), 24);
  for (Index n = 0; n < s.data.size(); ++n) {
    const int k = (*s.data.labels)[n];
    const Eigen::MatrixXd& u = s.model.col_bases[k];
    const Eigen::MatrixXd& v = s.model.row_bases[k];
    const Eigen::MatrixXd& a = s.data.items[n];
    ASSERT_EQ(a.rows(), 8);
    ASSERT_EQ(a.cols(), 6);
    EXPECT_LE((a - u * (u.transpose() * a)).norm(), 1e-8);
    EXPECT_LE((a - (a * v) * v.transpose()).norm(), 1e-8);
  }
  for (const auto& u : s.model.col_bases) EXPECT_LE(orthonormality_defect(u), 1e-10);
  for (const auto& v : s.model.row_bases) EXPECT_LE(orthonormality_defect(v), 1e-10);
}

TEST(GenerateUoms, RankBoundedByLatentDims) {
  const UomsSample s = generate_uoms(uoms_spec());
  for (const auto& a : s.data.items) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto sv = svd.singularValues();
    EXPECT_LE(sv(2), 1e-10 * sv(0));
  }
}

TEST(GenerateUoms, RankOneLatentGivesOuterProducts) {
  UomsSpec spec = uoms_spec();
  spec.col_latent = 1;
  spec.row_latent = 1;
  const UomsSample s = generate_uoms(spec);
  for (Index n = 0; n < s.data.size(); ++n) {
    const int k = (*s.data.labels)[n];
    const Eigen::VectorXd u = s.model.col_bases[k].col(0);
    const Eigen::VectorXd v = s.model.row_bases[k].col(0);
    const Eigen::MatrixXd& a = s.data.items[n];
    const double y = u.dot(a * v);
    EXPECT_LE((a - y * u * v.transpose()).norm(), 1e-10);
  }
}

TEST(GenerateUoms, VectorizedItemsLieInKroneckerSubspace) {
  const UomsSample s = generate_uoms(uoms_spec());
  const VectorDataset x = vectorize(s.data);
  for (Index n = 0; n < x.size(); ++n) {
    const int k = (*s.data.labels)[n];
    const Eigen::MatrixXd basis = Eigen::kroneckerProduct(s.model.row_bases[k], s.model.col_bases[k]);
    const Eigen::VectorXd v = x.columns.col(n);
    EXPECT_LE((v - basis * (basis.transpose() * v)).norm(), 1e-8);
  }
}

TEST(GenerateUoms, DeterministicForFixedSeed) {
  UomsSpec spec = uoms_spec();
  spec.noise_sigma = 0.1;
  const UomsSample a = generate_uoms(spec);
  const UomsSample b = generate_uoms(spec);
  ASSERT_EQ(a.data.size(), b.data.size());
  for (Index n = 0; n < a.data.size(); ++n) EXPECT_EQ(a.data.items[n], b.data.items[n]);
  EXPECT_EQ(*a.data.labels, *b.data.labels);
  spec.seed += 1;
  EXPECT_NE(generate_uoms(spec).data.items[0], a.data.items[0]);
}

TEST(GenerateUoms, NoiseMovesItemsOffTheModel) {
  UomsSpec spec = uoms_spec();
  spec.noise_sigma = 0.5;
  const UomsSample s = generate_uoms(spec);
  const Eigen::MatrixXd& u = s.model.col_bases[(*s.data.labels)[0]];
  const Eigen::MatrixXd& a = s.data.items[0];
  EXPECT_GT((a - u * (u.transpose() * a)).norm(), 1e-3);
}

TEST(GenerateUoms, RejectsLatentLargerThanAmbient) {
  UomsSpec spec = uoms_spec();
  spec.col_latent = 9;
  EXPECT_THROW(generate_uoms(spec), InvalidArgument);
  spec = uoms_spec();
  spec.row_latent = 7;
  EXPECT_THROW(generate_uoms(spec), InvalidArgument);
}

}  // namespace
}  // namespace msc
