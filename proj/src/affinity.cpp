#include "msc/affinity.hpp"

#include "msc/error.hpp"
#include "row_select.hpp"

#include <cmath>
#include <string>

namespace msc {

int default_tsc_threshold(Index points, int clusters) {
  const Index per_cluster = clusters > 0 ? points / clusters : points;
  Index q = std::max<Index>(3, (per_cluster + 19) / 20);
  q = std::min<Index>(q, points - 1);
  return static_cast<int>(std::max<Index>(q, 1));
}

VectorDataset normalize_columns(const VectorDataset& x) {
  VectorDataset out = x;
  for (Index j = 0; j < x.size(); ++j) {
    const double norm = x.columns.col(j).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw InvalidArgument("cannot normalize degenerate column at index " + std::to_string(j));
    }
    out.columns.col(j) /= norm;
  }
  return out;
}

AffinityMatrix tsc_affinity_rows(const VectorDataset& x, const TscParams& p) {
  const Index n = x.size();
  if (p.q < 1 || p.q > n - 1) {
    throw InvalidArgument("TSC threshold q=" + std::to_string(p.q) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  const Eigen::MatrixXd unit = normalize_columns(x).columns;
  Eigen::MatrixXd gram = (unit.transpose() * unit).cwiseAbs().cwiseMin(1.0);
  gram.diagonal().setZero();

  // gram is symmetric, so row i is read as column i for contiguous access.
  Eigen::MatrixXd kept = Eigen::MatrixXd::Zero(n, n);
  std::vector<Index> top;
  for (Index i = 0; i < n; ++i) {
    auto row = gram.col(i);
    detail::top_q_indices(row, p.q, i, top);
    for (Index j : top) kept(i, j) = std::exp(-2.0 * std::acos(row[j]));
  }
  return AffinityMatrix::intermediate(std::move(kept));
}

AffinityMatrix tsc_affinity(const VectorDataset& x, const TscParams& p) {
  return tsc_affinity_rows(x, p).symmetrized();
}

}  // namespace msc
