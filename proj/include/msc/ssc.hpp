#pragma once

#include "msc/types.hpp"

#include <optional>
#include <vector>

namespace msc {

// Regularization and solver settings for the self-expressive program
//
//   min_{C,E} ||X - XC - E||_F^2 + lambda1 ||C||_1 + lambda2 ||E||_1
//   s.t. diag(C) = 0            (always)
//        1^T C = 1^T            (affine)
//        E = 0                  (outlier rejection off)
//
// Unset weights are derived from the data with the `alpha` scheme:
//   mu0     = min_i max_{j != i} |x_i^T x_j|
//   lambda1 = 2 mu0 / alpha
//   lambda2 = 2 mu0 / max_i ||x_i||_1
struct SscParams {
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  double alpha = 20.0;
  bool outlier_rejection = true;
  bool affine = false;
  double tolerance = 1e-6;  // on primal and dual residuals, max-abs, data scaled to max|X| = 1
  int max_iterations = 5000;
  // Multiplies the data-derived initial penalties.
  double penalty_scale = 1.0;
  // Residual balancing of the penalties during the first half of the run.
  bool adaptive_penalty = true;
  bool track_objective = false;
};

struct SscSolution {
  Eigen::MatrixXd coefficients;  // C, N x N, zero diagonal
  Eigen::MatrixXd outliers;      // E, D x N
  double objective = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::vector<double> objective_trace;  // filled when track_objective is set
};

struct SscWeights {
  double lambda1;
  double lambda2;
};

SscWeights resolve_ssc_weights(const Eigen::MatrixXd& x, const SscParams& p);

// Objective value of (C, E) for data X.
double ssc_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c, const Eigen::MatrixXd& e, double lambda1,
                     double lambda2);

// Alternating-direction augmented-Lagrangian solve. Throws SolverError when
// the residuals have not reached tolerance after max_iterations.
SscSolution ssc_solve(const VectorDataset& x, const SscParams& p);

// W = |C| + |C|^T.
AffinityMatrix ssc_affinity_from(const Eigen::MatrixXd& coefficients);
AffinityMatrix ssc_affinity(const VectorDataset& x, const SscParams& p);

}  // namespace msc
