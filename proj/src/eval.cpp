#include "msc/eval.hpp"

#include "msc/error.hpp"

#include <limits>
#include <string>

namespace msc {

// Shortest-augmenting-path Hungarian method, O(K^3), on costs = -weight.
std::vector<int> max_weight_assignment(const std::vector<std::vector<double>>& weight) {
  const int n = static_cast<int>(weight.size());
  for (const auto& row : weight)
    if (static_cast<int>(row.size()) != n) throw InvalidArgument("assignment matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is a virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> owner(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n, -1);
  for (int j = 1; j <= n; ++j)
    if (owner[j] > 0) match[owner[j] - 1] = j - 1;
  return match;
}

EvalReport clustering_error(const LabelVector& pred, const LabelVector& truth, int clusters) {
  if (pred.size() != truth.size()) {
    throw InvalidArgument("label length mismatch: " + std::to_string(pred.size()) + " predicted vs " +
                          std::to_string(truth.size()) + " true");
  }
  if (clusters < 1) throw InvalidArgument("cluster count must be >= 1");
  if (pred.empty()) throw InvalidArgument("cannot score empty label vectors");
  EvalReport r;
  r.confusion.assign(clusters, std::vector<Index>(clusters, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] < 0 || pred[i] >= clusters || truth[i] < 0 || truth[i] >= clusters) {
      throw InvalidArgument("label out of range at index " + std::to_string(i));
    }
    ++r.confusion[pred[i]][truth[i]];
  }
  std::vector<std::vector<double>> weight(clusters, std::vector<double>(clusters));
  for (int a = 0; a < clusters; ++a)
    for (int b = 0; b < clusters; ++b) weight[a][b] = static_cast<double>(r.confusion[a][b]);
  r.matching = max_weight_assignment(weight);
  Index agree = 0;
  for (int a = 0; a < clusters; ++a) agree += r.confusion[a][r.matching[a]];
  r.misclassified = static_cast<Index>(pred.size()) - agree;
  r.clustering_error = static_cast<double>(r.misclassified) / static_cast<double>(pred.size());
  return r;
}

}  // namespace msc
