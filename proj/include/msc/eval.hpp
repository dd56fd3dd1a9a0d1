#pragma once

#include "msc/types.hpp"

#include <vector>

namespace msc {

struct EvalReport {
  double clustering_error = 0.0;         // misclassified / N under the best matching
  Index misclassified = 0;
  std::vector<int> matching;             // matching[predicted id] = truth id
  std::vector<std::vector<Index>> confusion;  // confusion[predicted][truth]
};

// Fraction of misclassified points, minimized over one-to-one matchings of
// predicted to true ids (optimal assignment on the K x K confusion matrix).
EvalReport clustering_error(const LabelVector& pred, const LabelVector& truth, int clusters);

// Maximum-weight perfect matching on a square matrix; returns match[row] = col.
std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weight);

}  // namespace msc
