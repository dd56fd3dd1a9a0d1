#include "msc/combine.hpp"

#include "msc/error.hpp"
#include "msc/rng.hpp"
#include "row_select.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace msc {
namespace {

Eigen::MatrixXd leading_basis_exact(const Eigen::MatrixXd& w, int k) {
  // W is symmetric: its singular vectors are eigenvectors ordered by |lambda|.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (w + w.transpose()));
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition failed in projection combine");
  const Index n = w.rows();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  const Eigen::VectorXd mag = eig.eigenvalues().cwiseAbs();
  std::stable_sort(order.begin(), order.end(), [&mag](Index a, Index b) { return mag[a] > mag[b]; });
  Eigen::MatrixXd u(n, k);
  for (int c = 0; c < k; ++c) u.col(c) = eig.eigenvectors().col(order[c]);
  return u;
}

Eigen::MatrixXd orthonormal_range(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

// Randomized range finder with two power iterations.
Eigen::MatrixXd leading_basis_randomized(const Eigen::MatrixXd& w, int k, std::uint64_t seed) {
  const Index n = w.rows();
  const Index width = std::min<Index>(n, k + 10);
  Rng rng = make_stream(seed, {stream_tag::kSketch});
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd omega(n, width);
  for (Index j = 0; j < width; ++j)
    for (Index i = 0; i < n; ++i) omega(i, j) = normal(rng);
  Eigen::MatrixXd q = orthonormal_range(w * omega);
  for (int it = 0; it < 2; ++it) q = orthonormal_range(w * orthonormal_range(w.transpose() * q));
  const Eigen::MatrixXd b = q.transpose() * w;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
  return q * svd.matrixU().leftCols(k);
}

void check_stack(std::span<const AffinityMatrix> realizations) {
  if (realizations.empty()) throw InvalidArgument("no graph realizations to combine");
  const Index n = realizations.front().size();
  for (std::size_t i = 0; i < realizations.size(); ++i) {
    if (realizations[i].size() != n) {
      throw InvalidArgument("realization " + std::to_string(i) + " has shape " +
                            std::to_string(realizations[i].size()) + " but expected " + std::to_string(n));
    }
  }
}

AffinityMatrix run_combiner(std::span<const AffinityMatrix> realizations, CombineRule rule, CombineOptions opts) {
  check_stack(realizations);
  RealizationCombiner combiner(rule, realizations.front().size(), opts);
  for (const AffinityMatrix& w : realizations) combiner.add(combiner.prepare(w));
  return combiner.finish();
}

}  // namespace

std::string_view to_string(CombineRule rule) {
  switch (rule) {
    case CombineRule::Addition: return "addition";
    case CombineRule::Threshold: return "threshold";
    case CombineRule::Quantile: return "quantile";
    case CombineRule::Projection: return "projection";
  }
  return "unknown";
}

std::optional<CombineRule> parse_combine_rule(std::string_view name) {
  for (CombineRule r : {CombineRule::Addition, CombineRule::Threshold, CombineRule::Quantile, CombineRule::Projection})
    if (to_string(r) == name) return r;
  return std::nullopt;
}

Eigen::MatrixXd project_onto_leading(const Eigen::MatrixXd& w, int k, std::uint64_t seed) {
  const Index n = w.rows();
  if (k < 1 || k > n) {
    throw InvalidArgument("projection rank K=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  if (k == n) return w;
  const Eigen::MatrixXd u = n > kExactProjectionLimit ? leading_basis_randomized(w, k, seed) : leading_basis_exact(w, k);
  return u * (u.transpose() * w);
}

RealizationCombiner::RealizationCombiner(CombineRule rule, Index nodes, CombineOptions options)
    : rule_(rule), nodes_(nodes), options_(options), sum_(Eigen::MatrixXd::Zero(nodes, nodes)) {
  if (rule_ == CombineRule::Threshold && (options_.threshold_q < 1 || options_.threshold_q > nodes - 1)) {
    throw InvalidArgument("threshold q_c=" + std::to_string(options_.threshold_q) + " outside [1, " +
                          std::to_string(nodes - 1) + "]");
  }
  if (rule_ == CombineRule::Quantile && options_.quantile_l < 1) throw InvalidArgument("quantile l must be >= 1");
  if (rule_ == CombineRule::Projection && (options_.clusters < 1 || options_.clusters > nodes)) {
    throw InvalidArgument("projection rank K=" + std::to_string(options_.clusters) + " outside [1, " +
                          std::to_string(nodes) + "]");
  }
}

Eigen::MatrixXd RealizationCombiner::prepare(const AffinityMatrix& w) const {
  if (w.size() != nodes_) {
    throw InvalidArgument("realization has shape " + std::to_string(w.size()) + " but expected " +
                          std::to_string(nodes_));
  }
  if (rule_ == CombineRule::Projection) return project_onto_leading(w.weights(), options_.clusters, options_.seed);
  return w.weights();
}

void RealizationCombiner::add(Eigen::MatrixXd prepared) {
  if (prepared.rows() != nodes_ || prepared.cols() != nodes_) throw InvalidArgument("prepared realization has wrong shape");
  ++count_;
  if (rule_ == CombineRule::Quantile) {
    stored_.push_back(std::move(prepared));
  } else {
    sum_ += prepared;
  }
}

AffinityMatrix RealizationCombiner::finish() const {
  if (count_ == 0) throw InvalidArgument("no graph realizations to combine");
  switch (rule_) {
    case CombineRule::Addition:
      return AffinityMatrix::finalized(0.5 * (sum_ + sum_.transpose()));

    case CombineRule::Threshold: {
      Eigen::MatrixXd kept = Eigen::MatrixXd::Zero(nodes_, nodes_);
      const Eigen::MatrixXd rows = sum_.transpose();  // row i of sum_ as contiguous column i
      std::vector<Index> top;
      for (Index i = 0; i < nodes_; ++i) {
        auto row = rows.col(i);
        detail::top_q_indices(row, options_.threshold_q, i, top);
        for (Index j : top) kept(i, j) = row[j];
        kept(i, i) = row[i];
      }
      return AffinityMatrix::finalized(0.5 * (kept + kept.transpose()));
    }

    case CombineRule::Quantile: {
      const auto l = static_cast<std::size_t>(options_.quantile_l);
      if (l > count_) {
        throw InvalidArgument("quantile l=" + std::to_string(l) + " exceeds realization count " +
                              std::to_string(count_));
      }
      Eigen::MatrixXd out(nodes_, nodes_);
      std::vector<double> edge(count_);
      for (Index j = 0; j < nodes_; ++j) {
        for (Index i = 0; i < nodes_; ++i) {
          for (std::size_t t = 0; t < count_; ++t) edge[t] = stored_[t](i, j);
          std::nth_element(edge.begin(), edge.begin() + (l - 1), edge.end(), std::greater<>());
          out(i, j) = edge[l - 1];
        }
      }
      // Order statistics of symmetric inputs are symmetric; averaging only
      // absorbs inputs that were not.
      return AffinityMatrix::finalized(0.5 * (out + out.transpose()));
    }

    case CombineRule::Projection: {
      Eigen::MatrixXd sym = 0.5 * (sum_ + sum_.transpose());
      return AffinityMatrix::finalized(sym.cwiseMax(0.0));
    }
  }
  throw Error("unknown combine rule");
}

AffinityMatrix combine_addition(std::span<const AffinityMatrix> realizations) {
  return run_combiner(realizations, CombineRule::Addition, {});
}

AffinityMatrix combine_threshold(std::span<const AffinityMatrix> realizations, int q_c) {
  CombineOptions opts;
  opts.threshold_q = q_c;
  return run_combiner(realizations, CombineRule::Threshold, opts);
}

AffinityMatrix combine_quantile(std::span<const AffinityMatrix> realizations, int l) {
  check_stack(realizations);
  if (l < 1 || static_cast<std::size_t>(l) > realizations.size()) {
    throw InvalidArgument("quantile l=" + std::to_string(l) + " outside [1, " + std::to_string(realizations.size()) +
                          "]");
  }
  CombineOptions opts;
  opts.quantile_l = l;
  return run_combiner(realizations, CombineRule::Quantile, opts);
}

AffinityMatrix combine_projection(std::span<const AffinityMatrix> realizations, int k, std::uint64_t seed) {
  CombineOptions opts;
  opts.clusters = k;
  opts.seed = seed;
  return run_combiner(realizations, CombineRule::Projection, opts);
}

}  // namespace msc
