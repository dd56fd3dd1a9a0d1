#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace msc {

using Index = Eigen::Index;

// Cluster ids in {0..K-1}, one per data item.
using LabelVector = std::vector<int>;

// A matrix-shaped observation A_n of shape D_c x D_r. Rows index positions
// along a column fiber (length D_c); columns index positions along a row
// fiber (length D_r).
using DataMatrix = Eigen::MatrixXd;

// N observations of identical shape with optional ground truth.
struct Dataset {
  std::vector<DataMatrix> items;
  std::optional<LabelVector> labels;

  Index size() const { return static_cast<Index>(items.size()); }
  Index col_fiber_length() const { return items.empty() ? 0 : items.front().rows(); }
  Index row_fiber_length() const { return items.empty() ? 0 : items.front().cols(); }
};

// D x N matrix with one data vector per column.
struct VectorDataset {
  Eigen::MatrixXd columns;
  std::optional<LabelVector> labels;

  Index size() const { return columns.cols(); }
  Index dim() const { return columns.rows(); }
};

// One violation message per failed invariant; empty when the dataset is valid.
// When `clusters` is given, labels must also be < clusters.
std::vector<std::string> validate_dataset(const Dataset& d, std::optional<int> clusters = std::nullopt);
std::vector<std::string> validate_vector_dataset(const VectorDataset& x,
                                                 std::optional<int> clusters = std::nullopt);

// Throws InvalidArgument listing every violation.
void require_valid(const Dataset& d, std::optional<int> clusters = std::nullopt);
void require_valid(const VectorDataset& x, std::optional<int> clusters = std::nullopt);

// Column n of the result is A_n flattened in column-major order.
VectorDataset vectorize(const Dataset& d);

// Nonnegative, finite N x N edge-weight matrix. A finalized affinity is
// exactly symmetric; intermediates produced by row-wise operations are
// flagged as not symmetric until symmetrized.
class AffinityMatrix {
 public:
  AffinityMatrix() = default;

  // Validates nonnegativity, finiteness and exact symmetry.
  static AffinityMatrix finalized(Eigen::MatrixXd weights);
  // Validates nonnegativity and finiteness only.
  static AffinityMatrix intermediate(Eigen::MatrixXd weights);

  const Eigen::MatrixXd& weights() const { return weights_; }
  Index size() const { return weights_.rows(); }
  bool is_symmetric() const { return symmetric_; }

  // (W + W^T) / 2.
  AffinityMatrix symmetrized() const;

 private:
  AffinityMatrix(Eigen::MatrixXd w, bool symmetric) : weights_(std::move(w)), symmetric_(symmetric) {}

  Eigen::MatrixXd weights_;
  bool symmetric_ = true;
};

}  // namespace msc
