#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace msc::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct SynthOptions {
  std::string model = "uoms";
  int clusters = 2;
  int col_ambient = 20;  // --Du
  int row_ambient = 20;  // --Dv
  int col_latent = 2;    // --du
  int row_latent = 2;    // --dv
  int ambient = 10;      // --D (uos)
  int latent = 2;        // --d (uos)
  int points = 40;
  double sigma = 0.0;
  std::string assignment = "balanced";
  std::uint64_t seed = 0;
  std::string out;
};

struct ClusterOptions {
  std::string input;
  std::string out = ".";
  std::string method = "msc-tsc";
  int clusters = 0;
  int trials = 100;
  std::string combine = "projection";
  std::optional<int> q;
  std::optional<int> qc;
  std::optional<int> l;
  double alpha = 20.0;
  std::string outliers = "on";
  std::string affine = "off";
  std::string sampling = "without";
  std::uint64_t seed = 0;
  std::string report;  // default: <out>/report.json
  int threads = 1;
};

struct EvalOptions {
  std::string pred;
  std::string input;
  std::optional<int> clusters;
};

struct BenchOptions {
  std::string grid = "default";
  std::string out = ".";
  int repeats = 5;
  std::uint64_t seed = 0;
};

int run_synth(const SynthOptions& o);
int run_cluster(const ClusterOptions& o);
int run_eval(const EvalOptions& o);
int run_bench(const BenchOptions& o);

// Parses argv and dispatches to a subcommand.
int run(int argc, char** argv);

}  // namespace msc::cli
