#pragma once

#include "msc/types.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace msc::detail {

// Indices of the q largest entries of `values` (ties to the lower index),
// skipping `exclude` when it is a valid index. Order of the result is
// unspecified. `scratch` is reused between calls.
template <class Values>
void top_q_indices(const Values& values, Index q, Index exclude, std::vector<Index>& scratch) {
  const Index n = static_cast<Index>(values.size());
  scratch.clear();
  scratch.reserve(n);
  for (Index j = 0; j < n; ++j)
    if (j != exclude) scratch.push_back(j);
  q = std::min<Index>(q, static_cast<Index>(scratch.size()));
  auto before = [&values](Index a, Index b) {
    return values[a] > values[b] || (values[a] == values[b] && a < b);
  };
  std::nth_element(scratch.begin(), scratch.begin() + q, scratch.end(), before);
  scratch.resize(q);
}

}  // namespace msc::detail
