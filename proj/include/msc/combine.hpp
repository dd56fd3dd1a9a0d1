#pragma once

#include "msc/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace msc {

enum class CombineRule { Addition, Threshold, Quantile, Projection };

std::string_view to_string(CombineRule rule);
std::optional<CombineRule> parse_combine_rule(std::string_view name);

// Above this size the leading singular subspace is found by a randomized
// range finder instead of a dense eigendecomposition.
inline constexpr Index kExactProjectionLimit = 512;

// U_K U_K^T W where U_K holds the K leading singular vectors of the
// symmetric matrix W.
Eigen::MatrixXd project_onto_leading(const Eigen::MatrixXd& w, int k, std::uint64_t seed = 0);

// Entrywise sum.
AffinityMatrix combine_addition(std::span<const AffinityMatrix> realizations);
// Sum, then keep the q_c largest off-diagonal entries per row (ties to the
// lower index; the diagonal passes through), then average with the transpose.
AffinityMatrix combine_threshold(std::span<const AffinityMatrix> realizations, int q_c);
// Entrywise l-th largest value across realizations.
AffinityMatrix combine_quantile(std::span<const AffinityMatrix> realizations, int l);
// Sum of per-realization projections onto their K leading singular vectors,
// averaged with the transpose, negatives clamped to 0.
AffinityMatrix combine_projection(std::span<const AffinityMatrix> realizations, int k, std::uint64_t seed = 0);

struct CombineOptions {
  int clusters = 2;          // projection rank
  int threshold_q = 1;       // q_c
  int quantile_l = 1;        // l
  std::uint64_t seed = 0;    // randomized projection sketch
};

// Streaming form of the rules above. `prepare` is const and may run
// concurrently; `add` must be called in a fixed order for reproducible sums.
class RealizationCombiner {
 public:
  RealizationCombiner(CombineRule rule, Index nodes, CombineOptions options);

  Eigen::MatrixXd prepare(const AffinityMatrix& w) const;
  void add(Eigen::MatrixXd prepared);
  std::size_t count() const { return count_; }
  void set_quantile_l(int l) { options_.quantile_l = l; }
  AffinityMatrix finish() const;

 private:
  CombineRule rule_;
  Index nodes_;
  CombineOptions options_;
  std::size_t count_ = 0;
  Eigen::MatrixXd sum_;
  std::vector<Eigen::MatrixXd> stored_;
};

}  // namespace msc
