#include "cli.hpp"

#include "msc/bench.hpp"
#include "msc/error.hpp"
#include "msc/eval.hpp"
#include "msc/io.hpp"
#include "msc/msc.hpp"
#include "msc/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace msc::cli {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Flag values that are inconsistent with each other or with the data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::out | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + file.string());
  out << text;
  if (!out) throw IoError("write failed: " + file.string());
}

int report_failure(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << '\n';
  return code;
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    return report_failure(e, kExitConfig);
  } catch (const std::exception& e) {
    return report_failure(e, kExitRuntime);
  }
}

ordered_json timings_json(const StageTimings& t) {
  return {{"sampling", t.sampling_ms}, {"affinity", t.affinity_ms}, {"combine", t.combine_ms}, {"spectral", t.spectral_ms}};
}

int eval_clusters(const LabelVector& a, const LabelVector& b, int floor_k) {
  int k = floor_k;
  for (int v : a) k = std::max(k, v + 1);
  for (int v : b) k = std::max(k, v + 1);
  return k;
}

}  // namespace

int run_synth(const SynthOptions& o) {
  return guarded([&] {
    if (o.out.empty()) throw ConfigError("--out is required");
    Assignment assignment;
    if (o.assignment == "balanced") {
      assignment = Assignment::Balanced;
    } else if (o.assignment == "uniform") {
      assignment = Assignment::Uniform;
    } else {
      throw ConfigError("--assignment must be balanced or uniform");
    }

    ordered_json model;
    Dataset data;
    try {
      if (o.model == "uoms") {
        UomsSpec spec;
        spec.clusters = o.clusters;
        spec.points = o.points;
        spec.col_ambient = o.col_ambient;
        spec.row_ambient = o.row_ambient;
        spec.col_latent = o.col_latent;
        spec.row_latent = o.row_latent;
        spec.noise_sigma = o.sigma;
        spec.seed = o.seed;
        spec.assignment = assignment;
        data = generate_uoms(spec).data;
        model = {{"model", "uoms"},
                 {"clusters", o.clusters},
                 {"points", o.points},
                 {"Du", o.col_ambient},
                 {"Dv", o.row_ambient},
                 {"du", o.col_latent},
                 {"dv", o.row_latent},
                 {"sigma", o.sigma},
                 {"assignment", o.assignment},
                 {"seed", o.seed},
                 {"col_bases", {{"count", o.clusters}, {"shape", {o.col_ambient, o.col_latent}}}},
                 {"row_bases", {{"count", o.clusters}, {"shape", {o.row_ambient, o.row_latent}}}},
                 {"item_shape", {o.col_ambient, o.row_ambient}}};
      } else if (o.model == "uos") {
        UosSpec spec;
        spec.clusters = o.clusters;
        spec.points = o.points;
        spec.ambient_dim = o.ambient;
        spec.latent_dim = o.latent;
        spec.noise_sigma = o.sigma;
        spec.seed = o.seed;
        spec.assignment = assignment;
        UosSample s = generate_uos(spec);
        for (Index i = 0; i < s.data.size(); ++i) data.items.push_back(s.data.columns.col(i));
        data.labels = s.data.labels;
        model = {{"model", "uos"},
                 {"clusters", o.clusters},
                 {"points", o.points},
                 {"D", o.ambient},
                 {"d", o.latent},
                 {"sigma", o.sigma},
                 {"assignment", o.assignment},
                 {"seed", o.seed},
                 {"bases", {{"count", o.clusters}, {"shape", {o.ambient, o.latent}}}},
                 {"item_shape", {o.ambient, 1}}};
      } else {
        throw ConfigError("--model must be uoms or uos");
      }
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    write_dataset(o.out, data);
    write_text(fs::path(o.out) / "model.json", model.dump(2) + "\n");
    return kExitOk;
  });
}

int run_cluster(const ClusterOptions& o) {
  return guarded([&] {
    if (o.input.empty()) throw ConfigError("--input is required");
    if (o.clusters < 1) throw ConfigError("--clusters must be >= 1");
    if (o.trials < 1) throw ConfigError("--trials must be >= 1");
    if (o.threads < 1) throw ConfigError("--threads must be >= 1");
    if (o.alpha <= 0.0) throw ConfigError("--alpha must be positive");

    MscConfig cfg;
    cfg.clusters = o.clusters;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.tsc_q = o.q;
    cfg.ssc.alpha = o.alpha;
    cfg.ssc.outlier_rejection = o.outliers == "on";
    cfg.ssc.affine = o.affine == "on";
    cfg.sampling = o.sampling == "with" ? SamplingMode::WithReplacement : SamplingMode::WithoutReplacement;
    const auto rule = parse_combine_rule(o.combine);
    if (!rule) throw ConfigError("unknown --combine '" + o.combine + "'");
    cfg.combine = *rule;
    cfg.threshold_q = o.qc;
    cfg.quantile_l = o.l;
    const bool multilinear = o.method == "msc-tsc" || o.method == "msc-ssc";
    cfg.base = (o.method == "ssc" || o.method == "msc-ssc") ? BaseMethod::Ssc : BaseMethod::Tsc;

    const Dataset data = load_dataset(o.input);
    const Index n = data.size();
    if (n < 2) throw ConfigError("dataset needs at least 2 items");
    if (o.clusters > n) throw ConfigError("--clusters exceeds the number of items");
    if (o.q && (*o.q < 1 || *o.q > n - 1)) throw ConfigError("--q must lie in [1, N-1]");
    if (o.qc && (*o.qc < 1 || *o.qc > n - 1)) throw ConfigError("--qc must lie in [1, N-1]");
    if (o.l && (*o.l < 1 || *o.l > 2 * o.trials)) throw ConfigError("--l must lie in [1, 2T]");

    LabelVector labels;
    StageTimings timings;
    ordered_json skipped = ordered_json::array();
    int realizations = 0;
    int resolved_q = 0;
    int resolved_qc = 0;
    int resolved_l = 0;
    if (multilinear) {
      MscResult r = msc_cluster(data, cfg);
      labels = std::move(r.labels);
      timings = r.report.timings;
      for (const SkippedTrial& s : r.report.skipped) skipped.push_back(s.trial);
      realizations = r.report.realizations;
      resolved_q = r.report.tsc_q;
      resolved_qc = r.report.threshold_q;
      resolved_l = r.report.quantile_l;
    } else {
      BaselineResult r = baseline_cluster(data, cfg.base, cfg);
      labels = std::move(r.labels);
      timings = r.timings;
      realizations = 1;
      resolved_q = r.tsc_q;
    }

    ordered_json config = {{"input", o.input},
                           {"method", o.method},
                           {"clusters", o.clusters},
                           {"trials", o.trials},
                           {"combine", o.combine},
                           {"q", resolved_q ? ordered_json(resolved_q) : ordered_json(nullptr)},
                           {"qc", resolved_qc ? ordered_json(resolved_qc) : ordered_json(nullptr)},
                           {"l", resolved_l ? ordered_json(resolved_l) : ordered_json(nullptr)},
                           {"alpha", o.alpha},
                           {"outliers", o.outliers},
                           {"affine", o.affine},
                           {"sampling", std::string(to_string(cfg.sampling))},
                           {"seed", o.seed},
                           {"threads", o.threads}};
    ordered_json report = {{"config", config}};
    if (data.labels) {
      const int k = eval_clusters(labels, *data.labels, o.clusters);
      report["error"] = clustering_error(labels, *data.labels, k).clustering_error;
    } else {
      report["error"] = nullptr;
    }
    report["points"] = n;
    report["realizations"] = realizations;
    report["timings_ms"] = timings_json(timings);
    report["skipped_trials"] = skipped;
    report["seed"] = o.seed;

    const fs::path out_dir(o.out);
    fs::create_directories(out_dir);
    write_labels(out_dir / "labels.csv", labels);
    const fs::path report_path = o.report.empty() ? out_dir / "report.json" : fs::path(o.report);
    write_text(report_path, report.dump(2) + "\n");
    return kExitOk;
  });
}

int run_eval(const EvalOptions& o) {
  return guarded([&] {
    if (o.pred.empty() || o.input.empty()) throw ConfigError("--pred and --input are required");
    const LabelVector pred = read_labels(o.pred);
    const std::vector<ManifestEntry> entries = read_manifest(o.input);
    LabelVector truth;
    for (const ManifestEntry& e : entries) {
      if (!e.label) throw ConfigError("manifest in " + o.input + " carries no ground-truth labels");
      truth.push_back(*e.label);
    }
    const int k = eval_clusters(pred, truth, o.clusters.value_or(1));
    const EvalReport r = clustering_error(pred, truth, k);
    ordered_json matching = ordered_json::object();
    for (std::size_t p = 0; p < r.matching.size(); ++p) matching[std::to_string(p)] = r.matching[p];
    ordered_json out = {{"error", r.clustering_error},
                        {"misclassified", r.misclassified},
                        {"points", pred.size()},
                        {"clusters", k},
                        {"matching", matching},
                        {"confusion", r.confusion}};
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  });
}

int run_bench(const BenchOptions& o) {
  return guarded([&] {
    std::vector<BenchPoint> grid;
    try {
      grid = bench_grid(o.grid);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
    if (o.repeats < 1) throw ConfigError("--repeats must be >= 1");
    msc::BenchOptions opts;
    opts.repeats = o.repeats;
    opts.seed = o.seed;
    const BenchResult result = bench_scaling(grid, opts);
    std::string csv = "col_dim,row_dim,points,trials,method,median_ms,min_ms,problem_dim\n";
    for (const BenchRow& r : result.rows) {
      csv += std::to_string(r.point.col_dim) + "," + std::to_string(r.point.row_dim) + "," +
             std::to_string(r.point.points) + "," + std::to_string(r.point.trials) + "," + r.method + "," +
             format_double(r.median_ms) + "," + format_double(r.min_ms) + "," + std::to_string(r.problem_dim) + "\n";
    }
    const fs::path out = fs::path(o.out) / "bench.csv";
    write_text(out, csv);
    std::cout << csv;
    return kExitOk;
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Multilinear subspace clustering of matrix-shaped data"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic UOMS/UOS dataset directory");
  s->add_option("--model", synth.model, "Generative model")->check(CLI::IsMember({"uoms", "uos"}));
  s->add_option("--clusters", synth.clusters, "Number of clusters K");
  s->add_option("--Du", synth.col_ambient, "Column-fiber length D_u");
  s->add_option("--Dv", synth.row_ambient, "Row-fiber length D_v");
  s->add_option("--du", synth.col_latent, "Column latent dimension d_u");
  s->add_option("--dv", synth.row_latent, "Row latent dimension d_v");
  s->add_option("--D", synth.ambient, "Ambient dimension (uos)");
  s->add_option("--d", synth.latent, "Latent dimension (uos)");
  s->add_option("--n", synth.points, "Number of items N");
  s->add_option("--sigma", synth.sigma, "Additive Gaussian noise level");
  s->add_option("--assignment", synth.assignment, "Cluster assignment")->check(CLI::IsMember({"balanced", "uniform"}));
  s->add_option("--seed", synth.seed, "Random seed");
  s->add_option("--out", synth.out, "Output directory")->required();

  ClusterOptions cluster;
  auto* c = app.add_subcommand("cluster", "Cluster a dataset directory");
  c->add_option("--input", cluster.input, "Dataset directory containing manifest.tsv")->required();
  c->add_option("--out", cluster.out, "Output directory for labels.csv and report.json");
  c->add_option("--method", cluster.method, "Clustering method")
      ->check(CLI::IsMember({"tsc", "ssc", "msc-tsc", "msc-ssc"}));
  c->add_option("--clusters", cluster.clusters, "Number of clusters K")->required();
  c->add_option("--trials", cluster.trials, "Number of MSC trials T");
  c->add_option("--combine", cluster.combine, "Graph combination rule")
      ->check(CLI::IsMember({"addition", "threshold", "quantile", "projection"}));
  c->add_option("--q", cluster.q, "TSC neighbours kept per row");
  c->add_option("--qc", cluster.qc, "Edges kept per row by the threshold combination");
  c->add_option("--l", cluster.l, "Rank used by the quantile combination");
  c->add_option("--alpha", cluster.alpha, "SSC regularization scale");
  c->add_option("--outliers", cluster.outliers, "SSC outlier term")->check(CLI::IsMember({"on", "off"}));
  c->add_option("--affine", cluster.affine, "SSC affine constraint")->check(CLI::IsMember({"on", "off"}));
  c->add_option("--sampling", cluster.sampling, "Fiber sampling")->check(CLI::IsMember({"without", "with"}));
  c->add_option("--seed", cluster.seed, "Random seed");
  c->add_option("--report", cluster.report, "Report path (default <out>/report.json)");
  c->add_option("--threads", cluster.threads, "Worker threads for MSC trials");

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Score predicted labels against manifest ground truth");
  e->add_option("--pred", eval.pred, "Predicted labels file")->required();
  e->add_option("--input", eval.input, "Dataset directory")->required();
  e->add_option("--clusters", eval.clusters, "Number of clusters K");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Time vectorized TSC against one MSC-TSC trial");
  b->add_option("--grid", bench.grid, "Named grid")->check(CLI::IsMember({"default", "quick"}));
  b->add_option("--out", bench.out, "Output directory for bench.csv");
  b->add_option("--repeats", bench.repeats, "Timed repetitions per point");
  b->add_option("--seed", bench.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (s->parsed()) return run_synth(synth);
  if (c->parsed()) return run_cluster(cluster);
  if (e->parsed()) return run_eval(eval);
  return run_bench(bench);
}

}  // namespace msc::cli
