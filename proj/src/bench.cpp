#include "msc/bench.hpp"

#include "msc/affinity.hpp"
#include "msc/error.hpp"
#include "msc/msc.hpp"
#include "msc/synth.hpp"

#include <algorithm>
#include <chrono>

namespace msc {
namespace {

template <class F>
std::vector<double> time_repeats(F&& f, int warmup, int repeats) {
  for (int i = 0; i < warmup; ++i) f();
  std::vector<double> ms;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return ms;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::optional<BenchRow> BenchResult::find(int col_dim, int row_dim, int points, const std::string& method) const {
  for (const BenchRow& r : rows) {
    if (r.point.col_dim == col_dim && r.point.row_dim == row_dim && r.point.points == points && r.method == method)
      return r;
  }
  return std::nullopt;
}

std::vector<BenchPoint> bench_grid(const std::string& name) {
  if (name == "default") {
    return {{512, 512, 80, 20}, {1024, 1024, 80, 20}, {512, 512, 160, 20}};
  }
  if (name == "quick") {
    return {{16, 16, 40, 10}};
  }
  throw InvalidArgument("unknown bench grid '" + name + "' (expected default or quick)");
}

BenchResult bench_scaling(std::span<const BenchPoint> grid, const BenchOptions& options) {
  if (grid.empty()) throw InvalidArgument("bench grid is empty");
  if (options.repeats < 1) throw InvalidArgument("bench repeats must be >= 1");
  BenchResult result;
  for (const BenchPoint& pt : grid) {
    UomsSpec spec;
    spec.clusters = options.clusters;
    spec.points = pt.points;
    spec.col_ambient = pt.col_dim;
    spec.row_ambient = pt.row_dim;
    spec.col_latent = std::min(2, pt.col_dim);
    spec.row_latent = std::min(2, pt.row_dim);
    spec.noise_sigma = 0.01;
    spec.seed = options.seed;
    const Dataset data = generate_uoms(spec).data;
    const VectorDataset vec = vectorize(data);
    const TscParams tsc{default_tsc_threshold(pt.points, options.clusters)};

    MscConfig cfg;
    cfg.clusters = options.clusters;
    cfg.seed = options.seed;
    cfg.sampling = SamplingMode::WithReplacement;

    auto vec_ms = time_repeats([&] { (void)tsc_affinity(vec, tsc); }, options.warmup, options.repeats);
    int trial = 0;
    const int per_repeat = std::max(1, pt.trials);
    auto msc_ms = time_repeats(
        [&] {
          for (int t = 0; t < per_repeat; ++t) {
            FiberSample s = sample_fibers(data, trial++, cfg);
            (void)tsc_affinity(s.cols, tsc);
            (void)tsc_affinity(s.rows, tsc);
          }
        },
        options.warmup, options.repeats);
    for (double& ms : msc_ms) ms /= per_repeat;

    BenchRow a;
    a.point = pt;
    a.method = kBenchVectorizedTsc;
    a.median_ms = median(vec_ms);
    a.min_ms = *std::min_element(vec_ms.begin(), vec_ms.end());
    a.problem_dim = static_cast<Index>(pt.col_dim) * pt.row_dim;
    a.problem_points = pt.points;
    result.rows.push_back(a);

    BenchRow b = a;
    b.method = kBenchMscTrial;
    b.median_ms = median(msc_ms);
    b.min_ms = *std::min_element(msc_ms.begin(), msc_ms.end());
    b.problem_dim = pt.col_dim + pt.row_dim;
    result.rows.push_back(b);
  }
  return result;
}

}  // namespace msc
