#include "msc/spectral.hpp"

#include "msc/error.hpp"
#include "msc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace msc {
namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

Eigen::MatrixXd dense_bottom_eigenvectors(const Eigen::MatrixXd& l, int count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
  if (eig.info() != Eigen::Success) throw Error("dense eigensolver failed");
  return eig.eigenvectors().leftCols(count);
}

LabelVector renumber_by_first_appearance(const LabelVector& labels, int k, std::vector<int>& old_of_new) {
  std::vector<int> map(k, -1);
  old_of_new.clear();
  LabelVector out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int& m = map[labels[i]];
    if (m < 0) {
      m = static_cast<int>(old_of_new.size());
      old_of_new.push_back(labels[i]);
    }
    out[i] = m;
  }
  for (int c = 0; c < k; ++c)
    if (map[c] < 0) old_of_new.push_back(c);
  return out;
}

struct LloydRun {
  LabelVector labels;
  Eigen::MatrixXd centroids;
  double wcss;
};

Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& pts, int k, Rng& rng) {
  const Index n = pts.rows();
  Eigen::MatrixXd centers(k, pts.cols());
  std::uniform_int_distribution<Index> first(0, n - 1);
  centers.row(0) = pts.row(first(rng));
  Eigen::VectorXd closest = (pts.rowwise() - centers.row(0)).rowwise().squaredNorm();
  const int candidates = 2 + static_cast<int>(std::log(static_cast<double>(k)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> cumulative(n);
  for (int c = 1; c < k; ++c) {
    std::partial_sum(closest.data(), closest.data() + n, cumulative.begin());
    const double total = cumulative.back();
    Index best = -1;
    double best_potential = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_closest;
    for (int t = 0; t < candidates; ++t) {
      Index pick;
      if (total > 0.0) {
        const double u = unit(rng) * total;
        pick = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
        pick = std::min(pick, n - 1);
      } else {
        pick = first(rng);
      }
      Eigen::VectorXd cand = (pts.rowwise() - pts.row(pick)).rowwise().squaredNorm();
      cand = cand.cwiseMin(closest);
      const double potential = cand.sum();
      if (potential < best_potential) {
        best_potential = potential;
        best = pick;
        best_closest = std::move(cand);
      }
    }
    centers.row(c) = pts.row(best);
    closest = std::move(best_closest);
  }
  return centers;
}

LloydRun lloyd(const Eigen::MatrixXd& pts, Eigen::MatrixXd centers, int max_iter) {
  const Index n = pts.rows();
  const int k = static_cast<int>(centers.rows());
  LabelVector labels(n, -1);
  Eigen::VectorXd dist(n);
  for (int iter = 0; iter <= max_iter; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (pts.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (pts.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      dist[i] = best_d;
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }
    if (!changed || iter == max_iter) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, pts.cols());
    std::vector<Index> counts(k, 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(labels[i]) += pts.row(i);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
      } else {
        // Empty cluster: restart it at the point worst served by its centroid.
        Index far = 0;
        for (Index i = 1; i < n; ++i)
          if (dist[i] > dist[far]) far = i;
        centers.row(c) = pts.row(far);
        dist[far] = 0.0;
      }
    }
  }
  double wcss = 0.0;
  for (Index i = 0; i < n; ++i) wcss += (pts.row(i) - centers.row(labels[i])).squaredNorm();
  return {std::move(labels), std::move(centers), wcss};
}

}  // namespace

Eigen::MatrixXd normalized_laplacian(const AffinityMatrix& w) {
  const Index n = w.size();
  const Eigen::VectorXd degree = w.weights().rowwise().sum();
  Eigen::VectorXd inv_sqrt(n);
  for (Index i = 0; i < n; ++i) inv_sqrt[i] = degree[i] > 0.0 ? 1.0 / std::sqrt(degree[i]) : 0.0;
  Eigen::MatrixXd l = -(inv_sqrt.asDiagonal() * w.weights() * inv_sqrt.asDiagonal());
  l.diagonal().array() += 1.0;
  return 0.5 * (l + l.transpose());
}

Eigen::MatrixXd bottom_eigenvectors_iterative(const Eigen::MatrixXd& laplacian, int count, std::uint64_t seed) {
  const Index n = laplacian.rows();
  const Index block = std::min<Index>(n, count + std::max(count, 8));
  constexpr int kDepth = 3;
  if (block * kDepth >= n) return dense_bottom_eigenvectors(laplacian, count);

  // Largest eigenpairs of 2I - L are the smallest of L.
  Eigen::MatrixXd shifted = -laplacian;
  shifted.diagonal().array() += 2.0;

  Rng rng = make_stream(seed, {stream_tag::kSpectral});
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd q(n, block);
  for (Index j = 0; j < block; ++j)
    for (Index i = 0; i < n; ++i) q(i, j) = normal(rng);
  q = orthonormalize(q);

  constexpr int kMaxRestarts = 500;
  constexpr double kResidualTol = 1e-10;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    Eigen::MatrixXd basis(n, block * kDepth);
    basis.leftCols(block) = q;
    for (int d = 1; d < kDepth; ++d) basis.middleCols(d * block, block) = shifted * basis.middleCols((d - 1) * block, block);
    basis = orthonormalize(basis);
    const Eigen::MatrixXd projected = basis.transpose() * shifted * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (projected + projected.transpose()));
    if (eig.info() != Eigen::Success) throw Error("Rayleigh-Ritz eigensolver failed");
    // Ritz pairs come in ascending order; the wanted ones are at the end.
    Eigen::MatrixXd ritz = basis * eig.eigenvectors().rightCols(block).rowwise().reverse();
    const Eigen::VectorXd theta = eig.eigenvalues().tail(block).reverse();
    const Eigen::MatrixXd wanted = ritz.leftCols(count);
    const Eigen::MatrixXd res = shifted * wanted - wanted * theta.head(count).asDiagonal();
    q = std::move(ritz);
    if (res.colwise().norm().maxCoeff() <= kResidualTol) return wanted;
  }
  throw Error("iterative eigensolver did not converge");
}

Eigen::MatrixXd spectral_embed(const AffinityMatrix& w, int clusters, Index dense_limit) {
  const Index n = w.size();
  if (clusters < 1 || clusters > n) {
    throw InvalidArgument("spectral embedding needs 1 <= K <= N (K=" + std::to_string(clusters) +
                          ", N=" + std::to_string(n) + ")");
  }
  const Eigen::MatrixXd l = normalized_laplacian(w);
  Eigen::MatrixXd embed = n <= dense_limit ? dense_bottom_eigenvectors(l, clusters)
                                           : bottom_eigenvectors_iterative(l, clusters);
  for (Index i = 0; i < n; ++i) {
    const double norm = embed.row(i).norm();
    if (norm > 0.0) embed.row(i) /= norm;
  }
  return embed;
}

KMeansResult kmeans(const Eigen::MatrixXd& points, const SpectralParams& p) {
  const Index n = points.rows();
  const int k = p.clusters;
  if (k < 1 || k > n) {
    throw InvalidArgument("k-means needs 1 <= K <= N (K=" + std::to_string(k) + ", N=" + std::to_string(n) + ")");
  }
  if (p.kmeans_restarts < 1) throw InvalidArgument("k-means restarts must be >= 1");
  if (p.kmeans_max_iter < 1) throw InvalidArgument("k-means max iterations must be >= 1");

  LloydRun best{{}, {}, std::numeric_limits<double>::infinity()};
  for (int r = 0; r < p.kmeans_restarts; ++r) {
    Rng rng = make_stream(p.seed, {stream_tag::kKmeans, static_cast<std::uint64_t>(r)});
    LloydRun run = lloyd(points, seed_centroids(points, k, rng), p.kmeans_max_iter);
    if (run.wcss < best.wcss) best = std::move(run);
  }

  KMeansResult out;
  std::vector<int> old_of_new;
  out.labels = renumber_by_first_appearance(best.labels, k, old_of_new);
  out.centroids.resize(k, points.cols());
  for (int c = 0; c < k; ++c) out.centroids.row(c) = best.centroids.row(old_of_new[c]);
  out.wcss = best.wcss;
  return out;
}

LabelVector spectral_cluster(const AffinityMatrix& w, const SpectralParams& p) {
  if (!w.is_symmetric()) throw InvalidArgument("spectral clustering needs a symmetric affinity");
  return kmeans(spectral_embed(w, p.clusters, p.dense_limit), p).labels;
}

}  // namespace msc
