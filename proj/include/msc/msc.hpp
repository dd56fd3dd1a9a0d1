#pragma once

#include "msc/affinity.hpp"
#include "msc/combine.hpp"
#include "msc/spectral.hpp"
#include "msc/ssc.hpp"
#include "msc/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace msc {

enum class BaseMethod { Tsc, Ssc };
enum class SamplingMode { WithoutReplacement, WithReplacement };

std::string_view to_string(BaseMethod m);
std::string_view to_string(SamplingMode m);

struct MscConfig {
  int clusters = 2;
  int trials = 100;
  BaseMethod base = BaseMethod::Tsc;
  std::optional<int> tsc_q;  // default: default_tsc_threshold(N, K)
  SscParams ssc;
  CombineRule combine = CombineRule::Projection;
  std::optional<int> threshold_q;  // default: floor(N/K) - 1
  std::optional<int> quantile_l;   // default: number of completed trials
  SamplingMode sampling = SamplingMode::WithoutReplacement;
  std::uint64_t seed = 0;
  int threads = 1;  // results do not depend on this
  int kmeans_restarts = 20;
  int kmeans_max_iter = 300;
};

// Fiber indices chosen for one trial: for item i, column[i] in [0, D_r)
// selects the column fiber A_i(:, column[i]) and row[i] in [0, D_c) the row
// fiber A_i(row[i], :).
struct FiberDraw {
  std::vector<Index> column;
  std::vector<Index> row;
};

struct FiberSample {
  VectorDataset cols;  // D_c x N
  VectorDataset rows;  // D_r x N
  FiberDraw draw;
};

// Pure function of (dataset shape, trial, seed, sampling mode). Without
// replacement, trial t uses position t mod P of a per-item permutation of
// the P fibers drawn for epoch floor(t / P).
FiberSample sample_fibers(const Dataset& d, int trial, const MscConfig& cfg);

struct StageTimings {
  double sampling_ms = 0.0;
  double affinity_ms = 0.0;
  double combine_ms = 0.0;
  double spectral_ms = 0.0;
};

struct SkippedTrial {
  int trial;
  std::string reason;
};

struct MscReport {
  StageTimings timings;
  std::vector<FiberDraw> draws;
  std::vector<SkippedTrial> skipped;
  int realizations = 0;
  int tsc_q = 0;        // resolved, 0 when unused
  int threshold_q = 0;  // resolved, 0 when unused
  int quantile_l = 0;   // resolved, 0 when unused
};

struct MscResult {
  LabelVector labels;
  MscReport report;
};

// Resolved defaults for N points.
int default_threshold_q(Index points, int clusters);

// Builds one graph realization from a fiber matrix with the configured base
// method.
AffinityMatrix base_affinity(const VectorDataset& fibers, const MscConfig& cfg, int tsc_q);

MscResult msc_cluster(const Dataset& d, const MscConfig& cfg);

// Vectorize-then-cluster baselines (TSC or SSC on vec(A_n)). Uses
// cfg.clusters, cfg.tsc_q, cfg.ssc and the k-means settings.
struct BaselineResult {
  LabelVector labels;
  StageTimings timings;
  int tsc_q = 0;
};
BaselineResult baseline_cluster(const Dataset& d, BaseMethod method, const MscConfig& cfg);

}  // namespace msc
