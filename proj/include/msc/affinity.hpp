#pragma once

#include "msc/types.hpp"

namespace msc {

struct TscParams {
  int q = 3;  // neighbours kept per row, 1 <= q <= N-1
};

// Default TSC threshold for N points in K clusters: max(3, ceil(N/(20K))),
// capped at N-1.
int default_tsc_threshold(Index points, int clusters);

// Scales every column to unit Euclidean norm. Throws InvalidArgument naming
// the first all-zero column.
VectorDataset normalize_columns(const VectorDataset& x);

// Thresholded inner-product graph:
//   G = clamp(|X^T X|, 0, 1) on normalized columns, zero diagonal;
//   per row keep the q largest off-diagonal entries (ties to the lower
//   column index) and map each kept g to exp(-2 acos g);
//   return (C + C^T) / 2.
AffinityMatrix tsc_affinity(const VectorDataset& x, const TscParams& p);

// Same as above without the final symmetrization; the result is flagged as
// not symmetric when row selections disagree.
AffinityMatrix tsc_affinity_rows(const VectorDataset& x, const TscParams& p);

}  // namespace msc
