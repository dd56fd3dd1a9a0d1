#pragma once

#include "msc/types.hpp"

#include <cstdint>

namespace msc {

struct SpectralParams {
  int clusters = 2;
  int kmeans_restarts = 20;
  int kmeans_max_iter = 300;
  std::uint64_t seed = 0;
  // Above this many nodes the embedding uses the iterative eigensolver.
  Index dense_limit = 2000;
};

// L = I - D^{-1/2} W D^{-1/2}; isolated vertices contribute identity rows.
Eigen::MatrixXd normalized_laplacian(const AffinityMatrix& w);

// Eigenvectors of L for the K smallest eigenvalues, rows scaled to unit
// length (zero rows stay zero). N x K.
Eigen::MatrixXd spectral_embed(const AffinityMatrix& w, int clusters, Index dense_limit = 2000);

// K smallest eigenpairs of a symmetric matrix whose spectrum lies in
// [0, 2], by restarted block Krylov iteration with Rayleigh-Ritz. Exposed
// for testing against the dense path.
Eigen::MatrixXd bottom_eigenvectors_iterative(const Eigen::MatrixXd& laplacian, int count, std::uint64_t seed = 0);

struct KMeansResult {
  LabelVector labels;
  Eigen::MatrixXd centroids;  // K x dim
  double wcss = 0.0;
};

// Best of `kmeans_restarts` Lloyd runs (lowest within-cluster sum of
// squares) from greedy k-means++ seeding. Points are the rows of `points`.
// Labels are renumbered in order of first appearance.
KMeansResult kmeans(const Eigen::MatrixXd& points, const SpectralParams& p);

LabelVector spectral_cluster(const AffinityMatrix& w, const SpectralParams& p);

}  // namespace msc
