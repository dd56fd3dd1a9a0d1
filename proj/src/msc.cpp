#include "msc/msc.hpp"

#include "msc/error.hpp"
#include "msc/rng.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <thread>

namespace msc {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Index pick_fiber(std::uint64_t seed, SamplingMode mode, std::uint64_t axis, Index item, int trial, Index pool) {
  if (mode == SamplingMode::WithReplacement) {
    Rng rng = make_stream(seed, {stream_tag::kFiber, axis, static_cast<std::uint64_t>(item),
                                 static_cast<std::uint64_t>(trial)});
    std::uniform_int_distribution<Index> pick(0, pool - 1);
    return pick(rng);
  }
  const auto epoch = static_cast<std::uint64_t>(trial / pool);
  std::vector<Index> perm(pool);
  std::iota(perm.begin(), perm.end(), Index{0});
  Rng rng = make_stream(seed, {stream_tag::kFiber, axis + 2, static_cast<std::uint64_t>(item), epoch});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm[trial % pool];
}

SpectralParams spectral_params(const MscConfig& cfg) {
  SpectralParams sp;
  sp.clusters = cfg.clusters;
  sp.kmeans_restarts = cfg.kmeans_restarts;
  sp.kmeans_max_iter = cfg.kmeans_max_iter;
  sp.seed = derive_seed(cfg.seed, {stream_tag::kSpectral});
  return sp;
}

struct TrialOutput {
  bool ok = false;
  std::string reason;
  FiberDraw draw;
  Eigen::MatrixXd prepared[2];
  double sampling_ms = 0.0;
  double affinity_ms = 0.0;
  double combine_ms = 0.0;
};

}  // namespace

std::string_view to_string(BaseMethod m) { return m == BaseMethod::Tsc ? "tsc" : "ssc"; }

std::string_view to_string(SamplingMode m) {
  return m == SamplingMode::WithoutReplacement ? "without_replacement" : "with_replacement";
}

int default_threshold_q(Index points, int clusters) {
  Index q = points / std::max(clusters, 1) - 1;
  return static_cast<int>(std::clamp<Index>(q, 1, std::max<Index>(points - 1, 1)));
}

FiberSample sample_fibers(const Dataset& d, int trial, const MscConfig& cfg) {
  const Index n = d.size();
  const Index dc = d.col_fiber_length();
  const Index dr = d.row_fiber_length();
  if (trial < 0) throw InvalidArgument("trial index must be nonnegative");
  FiberSample s;
  s.cols.columns.resize(dc, n);
  s.rows.columns.resize(dr, n);
  s.draw.column.resize(n);
  s.draw.row.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Index c = pick_fiber(cfg.seed, cfg.sampling, 0, i, trial, dr);
    const Index r = pick_fiber(cfg.seed, cfg.sampling, 1, i, trial, dc);
    s.draw.column[i] = c;
    s.draw.row[i] = r;
    s.cols.columns.col(i) = d.items[i].col(c);
    s.rows.columns.col(i) = d.items[i].row(r).transpose();
  }
  s.cols.labels = d.labels;
  s.rows.labels = d.labels;
  return s;
}

AffinityMatrix base_affinity(const VectorDataset& fibers, const MscConfig& cfg, int tsc_q) {
  if (cfg.base == BaseMethod::Tsc) return tsc_affinity(fibers, TscParams{tsc_q});
  return ssc_affinity(fibers, cfg.ssc);
}

MscResult msc_cluster(const Dataset& d, const MscConfig& cfg) {
  require_valid(d);
  const Index n = d.size();
  if (cfg.clusters < 1 || cfg.clusters > n) {
    throw InvalidArgument("need 1 <= K <= N (K=" + std::to_string(cfg.clusters) + ", N=" + std::to_string(n) + ")");
  }
  if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (cfg.threads < 1) throw InvalidArgument("threads must be >= 1");

  MscResult result;
  MscReport& report = result.report;
  if (cfg.base == BaseMethod::Tsc) {
    report.tsc_q = cfg.tsc_q ? *cfg.tsc_q : default_tsc_threshold(n, cfg.clusters);
    if (report.tsc_q < 1 || report.tsc_q > n - 1) {
      throw InvalidArgument("TSC threshold q=" + std::to_string(report.tsc_q) + " outside [1, " + std::to_string(n - 1) +
                            "]");
    }
  }
  CombineOptions opts;
  opts.clusters = cfg.clusters;
  opts.seed = derive_seed(cfg.seed, {stream_tag::kSketch});
  if (cfg.combine == CombineRule::Threshold) {
    report.threshold_q = cfg.threshold_q ? *cfg.threshold_q : default_threshold_q(n, cfg.clusters);
    opts.threshold_q = report.threshold_q;
  }
  if (cfg.combine == CombineRule::Quantile && cfg.quantile_l) {
    if (*cfg.quantile_l < 1 || *cfg.quantile_l > 2 * cfg.trials) {
      throw InvalidArgument("quantile l=" + std::to_string(*cfg.quantile_l) + " outside [1, " +
                            std::to_string(2 * cfg.trials) + "]");
    }
  }
  // Quantile l is only fixed once the number of completed trials is known.
  opts.quantile_l = 1;
  RealizationCombiner combiner(cfg.combine, n, opts);

  auto run_trial = [&](int t) {
    TrialOutput out;
    auto t0 = Clock::now();
    FiberSample sample = sample_fibers(d, t, cfg);
    out.draw = std::move(sample.draw);
    out.sampling_ms = elapsed_ms(t0);
    try {
      t0 = Clock::now();
      AffinityMatrix w_cols = base_affinity(sample.cols, cfg, report.tsc_q);
      AffinityMatrix w_rows = base_affinity(sample.rows, cfg, report.tsc_q);
      out.affinity_ms = elapsed_ms(t0);
      t0 = Clock::now();
      out.prepared[0] = combiner.prepare(w_cols);
      out.prepared[1] = combiner.prepare(w_rows);
      out.combine_ms = elapsed_ms(t0);
      out.ok = true;
    } catch (const SolverError& e) {
      out.reason = e.what();
    } catch (const InvalidArgument& e) {
      // Degenerate fibers (e.g. an all-zero column) only sink this trial.
      out.reason = e.what();
    }
    return out;
  };

  report.draws.resize(cfg.trials);
  const int batch = cfg.threads;
  std::vector<TrialOutput> outputs(batch);
  std::vector<int> completed;
  for (int start = 0; start < cfg.trials; start += batch) {
    const int count = std::min(batch, cfg.trials - start);
    if (count == 1) {
      outputs[0] = run_trial(start);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(count);
      for (int w = 0; w < count; ++w) workers.emplace_back([&, w] { outputs[w] = run_trial(start + w); });
    }
    // Reduce in trial order so sums do not depend on scheduling.
    for (int w = 0; w < count; ++w) {
      TrialOutput& o = outputs[w];
      const int t = start + w;
      report.draws[t] = std::move(o.draw);
      report.timings.sampling_ms += o.sampling_ms;
      report.timings.affinity_ms += o.affinity_ms;
      report.timings.combine_ms += o.combine_ms;
      if (!o.ok) {
        report.skipped.push_back({t, o.reason});
        continue;
      }
      auto t0 = Clock::now();
      combiner.add(std::move(o.prepared[0]));
      combiner.add(std::move(o.prepared[1]));
      report.timings.combine_ms += elapsed_ms(t0);
      completed.push_back(t);
    }
  }
  if (completed.empty()) {
    throw Error("all " + std::to_string(cfg.trials) + " trials failed; first failure: " + report.skipped.front().reason);
  }
  report.realizations = static_cast<int>(combiner.count());

  auto t0 = Clock::now();
  if (cfg.combine == CombineRule::Quantile) {
    report.quantile_l = cfg.quantile_l ? *cfg.quantile_l : static_cast<int>(completed.size());
    combiner.set_quantile_l(report.quantile_l);
  }
  const AffinityMatrix combined = combiner.finish();
  report.timings.combine_ms += elapsed_ms(t0);

  t0 = Clock::now();
  result.labels = spectral_cluster(combined, spectral_params(cfg));
  report.timings.spectral_ms = elapsed_ms(t0);
  return result;
}

BaselineResult baseline_cluster(const Dataset& d, BaseMethod method, const MscConfig& cfg) {
  require_valid(d);
  const Index n = d.size();
  if (cfg.clusters < 1 || cfg.clusters > n) {
    throw InvalidArgument("need 1 <= K <= N (K=" + std::to_string(cfg.clusters) + ", N=" + std::to_string(n) + ")");
  }
  BaselineResult out;
  auto t0 = Clock::now();
  const VectorDataset x = vectorize(d);
  out.timings.sampling_ms = elapsed_ms(t0);

  t0 = Clock::now();
  AffinityMatrix w;
  if (method == BaseMethod::Tsc) {
    out.tsc_q = cfg.tsc_q ? *cfg.tsc_q : default_tsc_threshold(n, cfg.clusters);
    w = tsc_affinity(x, TscParams{out.tsc_q});
  } else {
    w = ssc_affinity(x, cfg.ssc);
  }
  out.timings.affinity_ms = elapsed_ms(t0);

  t0 = Clock::now();
  out.labels = spectral_cluster(w, spectral_params(cfg));
  out.timings.spectral_ms = elapsed_ms(t0);
  return out;
}

}  // namespace msc
