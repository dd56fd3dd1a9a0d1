#include "msc/types.hpp"

#include "msc/error.hpp"

#include <sstream>

namespace msc {
namespace {

std::vector<std::string> validate_labels(const LabelVector& labels, Index n, std::optional<int> clusters) {
  std::vector<std::string> out;
  if (static_cast<Index>(labels.size()) != n) {
    out.push_back("label count " + std::to_string(labels.size()) + " does not match item count " +
                  std::to_string(n));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || (clusters && labels[i] >= *clusters)) {
      out.push_back("label out of range at index " + std::to_string(i));
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "; " : "") << v[i];
  return os.str();
}

}  // namespace

std::vector<std::string> validate_dataset(const Dataset& d, std::optional<int> clusters) {
  std::vector<std::string> out;
  if (d.items.size() < 2) out.push_back("dataset needs at least 2 items, got " + std::to_string(d.items.size()));
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    const DataMatrix& a = d.items[i];
    if (a.rows() < 1 || a.cols() < 1) {
      out.push_back("empty item at index " + std::to_string(i));
      continue;
    }
    if (i > 0 && (a.rows() != d.items[0].rows() || a.cols() != d.items[0].cols())) {
      out.push_back("shape mismatch at index " + std::to_string(i));
    }
    if (!a.allFinite()) out.push_back("non-finite entry in item " + std::to_string(i));
  }
  if (d.labels) {
    auto lv = validate_labels(*d.labels, d.size(), clusters);
    out.insert(out.end(), lv.begin(), lv.end());
  }
  return out;
}

std::vector<std::string> validate_vector_dataset(const VectorDataset& x, std::optional<int> clusters) {
  std::vector<std::string> out;
  if (x.size() < 2) out.push_back("dataset needs at least 2 items, got " + std::to_string(x.size()));
  if (x.dim() < 1) out.push_back("data vectors are empty");
  for (Index j = 0; j < x.size(); ++j) {
    if (!x.columns.col(j).allFinite()) out.push_back("non-finite entry in item " + std::to_string(j));
  }
  if (x.labels) {
    auto lv = validate_labels(*x.labels, x.size(), clusters);
    out.insert(out.end(), lv.begin(), lv.end());
  }
  return out;
}

void require_valid(const Dataset& d, std::optional<int> clusters) {
  auto v = validate_dataset(d, clusters);
  if (!v.empty()) throw InvalidArgument("invalid dataset: " + join(v));
}

void require_valid(const VectorDataset& x, std::optional<int> clusters) {
  auto v = validate_vector_dataset(x, clusters);
  if (!v.empty()) throw InvalidArgument("invalid dataset: " + join(v));
}

VectorDataset vectorize(const Dataset& d) {
  require_valid(d);
  const Index rows = d.col_fiber_length();
  const Index cols = d.row_fiber_length();
  VectorDataset out;
  out.columns.resize(rows * cols, d.size());
  for (Index n = 0; n < d.size(); ++n) {
    out.columns.col(n) = Eigen::Map<const Eigen::VectorXd>(d.items[n].data(), rows * cols);
  }
  out.labels = d.labels;
  return out;
}

AffinityMatrix AffinityMatrix::finalized(Eigen::MatrixXd weights) {
  if (weights.rows() != weights.cols()) throw InvalidArgument("affinity matrix must be square");
  if (!weights.allFinite()) throw InvalidArgument("affinity matrix has non-finite entries");
  if ((weights.array() < 0.0).any()) throw InvalidArgument("affinity matrix has negative entries");
  if (weights != weights.transpose()) throw InvalidArgument("affinity matrix is not symmetric");
  return AffinityMatrix(std::move(weights), true);
}

AffinityMatrix AffinityMatrix::intermediate(Eigen::MatrixXd weights) {
  if (weights.rows() != weights.cols()) throw InvalidArgument("affinity matrix must be square");
  if (!weights.allFinite()) throw InvalidArgument("affinity matrix has non-finite entries");
  if ((weights.array() < 0.0).any()) throw InvalidArgument("affinity matrix has negative entries");
  const bool sym = weights == weights.transpose();
  return AffinityMatrix(std::move(weights), sym);
}

AffinityMatrix AffinityMatrix::symmetrized() const {
  Eigen::MatrixXd s = 0.5 * (weights_ + weights_.transpose());
  return AffinityMatrix(std::move(s), true);
}

}  // namespace msc
