#pragma once

#include "msc/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace msc {

struct BenchPoint {
  int col_dim = 32;  // D_c
  int row_dim = 32;  // D_r
  int points = 100;  // N
  int trials = 1;    // T trials per timed MSC repeat; rows report time per trial
};

// Timed methods. Both time affinity construction only, not spectral clustering.
inline constexpr const char* kBenchVectorizedTsc = "tsc-vectorized";
inline constexpr const char* kBenchMscTrial = "msc-tsc-trial";

struct BenchRow {
  BenchPoint point;
  std::string method;
  double median_ms = 0.0;
  double min_ms = 0.0;
  Index problem_dim = 0;  // length of the vectors entering the Gram stage (D, or D_c + D_r)
  Index problem_points = 0;
};

struct BenchOptions {
  int repeats = 5;
  int warmup = 1;
  int clusters = 2;
  std::uint64_t seed = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;

  std::optional<BenchRow> find(int col_dim, int row_dim, int points, const std::string& method) const;
};

// One named grid: "default" or "quick".
std::vector<BenchPoint> bench_grid(const std::string& name);

BenchResult bench_scaling(std::span<const BenchPoint> grid, const BenchOptions& options);

}  // namespace msc
