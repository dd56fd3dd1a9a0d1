#include "msc/ssc.hpp"

#include "msc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace msc {
namespace {

Eigen::MatrixXd soft_threshold(const Eigen::MatrixXd& v, double t) {
  return (v.array().abs() - t).max(0.0) * v.array().sign();
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// min_i max_{j != i} |x_i^T x_j|
double self_expression_scale(const Eigen::MatrixXd& x) {
  const Index n = x.cols();
  Eigen::MatrixXd g = (x.transpose() * x).cwiseAbs();
  g.diagonal().setZero();
  double mu = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) mu = std::min(mu, g.col(i).maxCoeff());
  return std::isfinite(mu) ? mu : 0.0;
}

}  // namespace

SscWeights resolve_ssc_weights(const Eigen::MatrixXd& x, const SscParams& p) {
  if (p.alpha <= 0.0) throw InvalidArgument("SSC alpha must be positive");
  SscWeights w{0.0, 0.0};
  const double mu0 = (!p.lambda1 || !p.lambda2) ? self_expression_scale(x) : 0.0;
  w.lambda1 = p.lambda1 ? *p.lambda1 : 2.0 * mu0 / p.alpha;
  if (p.lambda2) {
    w.lambda2 = *p.lambda2;
  } else {
    const double l1 = x.size() ? x.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
    w.lambda2 = l1 > 0.0 ? 2.0 * mu0 / l1 : 0.0;
  }
  if (w.lambda1 < 0.0 || w.lambda2 < 0.0) throw InvalidArgument("SSC weights must be nonnegative");
  return w;
}

double ssc_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c, const Eigen::MatrixXd& e, double lambda1,
                     double lambda2) {
  return (x - x * c - e).squaredNorm() + lambda1 * c.cwiseAbs().sum() + lambda2 * e.cwiseAbs().sum();
}

SscSolution ssc_solve(const VectorDataset& data, const SscParams& p) {
  const Eigen::MatrixXd& x = data.columns;
  const Index n = x.cols();
  const Index dim = x.rows();
  if (n < 2) throw InvalidArgument("SSC needs at least 2 points");
  if (!x.allFinite()) throw InvalidArgument("SSC input has non-finite entries");
  if (!(p.tolerance > 0.0)) throw InvalidArgument("SSC tolerance must be positive");
  if (p.max_iterations < 1) throw InvalidArgument("SSC max_iterations must be >= 1");

  const SscWeights w = resolve_ssc_weights(x, p);
  SscSolution sol;
  sol.lambda1 = w.lambda1;
  sol.lambda2 = w.lambda2;
  sol.coefficients = Eigen::MatrixXd::Zero(n, n);
  sol.outliers = Eigen::MatrixXd::Zero(dim, n);

  const double peak = max_abs(x);
  if (peak == 0.0 && !p.affine) {
    sol.objective = 0.0;
    if (p.track_objective) sol.objective_trace.push_back(0.0);
    return sol;
  }

  // Work on X / max|X| so that residual tolerances are scale free.
  const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
  const Eigen::MatrixXd xs = scale * x;
  const double lam1 = w.lambda1 * scale * scale;
  const double lam2 = w.lambda2 * scale;
  const bool outliers = p.outlier_rejection;

  const Eigen::MatrixXd gram = xs.transpose() * xs;
  if (!(p.penalty_scale > 0.0)) throw InvalidArgument("SSC penalty scale must be positive");
  double rho_c = p.penalty_scale * std::max(2.0 * self_expression_scale(xs), 1e-3);
  double rho_e = p.penalty_scale;

  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);  // sparse copy of A
  Eigen::MatrixXd a = c;
  Eigen::MatrixXd dual_c = c;                          // scaled multiplier of A = C
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(dim, n);
  Eigen::MatrixXd f = e;                               // sparse copy of E
  Eigen::MatrixXd dual_e = e;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  // The (A, E) block is minimized exactly: eliminating E leaves
  //   beta ||X - B - X A||^2 + rho_c/2 ||A - C + dual_c||^2,
  //   beta = rho_e / (2 + rho_e), B = F - dual_e.
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::VectorXd affine_dir;
  double beta = 1.0;
  auto factor = [&] {
    beta = outliers ? rho_e / (2.0 + rho_e) : 1.0;
    Eigen::MatrixXd m = 2.0 * beta * gram;
    m.diagonal().array() += rho_c;
    llt.compute(m);
    if (p.affine) affine_dir = llt.solve(ones);
  };
  factor();

  auto current_objective = [&] {
    return ssc_objective(xs, c, outliers ? f : Eigen::MatrixXd::Zero(dim, n), lam1, lam2) / (scale * scale);
  };
  if (p.track_objective) sol.objective_trace.push_back(current_objective());

  double primal = std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();
  int it = 0;
  const int balance_until = p.max_iterations / 2;
  for (it = 1; it <= p.max_iterations; ++it) {
    Eigen::MatrixXd target = xs;
    if (outliers) target -= f - dual_e;
    Eigen::MatrixXd rhs = 2.0 * beta * (xs.transpose() * target) + rho_c * (c - dual_c);
    a = llt.solve(rhs);
    if (p.affine) {
      const Eigen::RowVectorXd gap = Eigen::RowVectorXd::Ones(n) - a.colwise().sum();
      a += affine_dir * (gap / affine_dir.sum());
    }
    if (outliers) e = (2.0 * (xs - xs * a) + rho_e * (f - dual_e)) / (2.0 + rho_e);

    const Eigen::MatrixXd c_prev = c;
    c = soft_threshold(a + dual_c, lam1 / rho_c);
    c.diagonal().setZero();
    dual_c += a - c;

    double primal_c = max_abs(a - c);
    double dual_c_res = rho_c * max_abs(c - c_prev);
    double primal_e = 0.0;
    double dual_e_res = 0.0;
    if (outliers) {
      const Eigen::MatrixXd f_prev = f;
      f = soft_threshold(e + dual_e, lam2 / rho_e);
      dual_e += e - f;
      primal_e = max_abs(e - f);
      dual_e_res = rho_e * max_abs(f - f_prev);
    }
    primal = std::max(primal_c, primal_e);
    dual = std::max(dual_c_res, dual_e_res);
    if (p.track_objective) sol.objective_trace.push_back(current_objective());
    if (primal <= p.tolerance && dual <= p.tolerance) break;

    // Residual balancing; the scaled multipliers follow the penalty.
    if (p.adaptive_penalty && it <= balance_until && it % 25 == 0) {
      bool changed = false;
      auto balance = [&changed](double r, double s, double& rho, Eigen::MatrixXd& u) {
        if (r > 10.0 * s) {
          rho *= 2.0;
          u /= 2.0;
          changed = true;
        } else if (s > 10.0 * r) {
          rho /= 2.0;
          u *= 2.0;
          changed = true;
        }
      };
      balance(primal_c, dual_c_res, rho_c, dual_c);
      if (outliers) balance(primal_e, dual_e_res, rho_e, dual_e);
      if (changed) factor();
    }
  }
  sol.iterations = std::min(it, p.max_iterations);
  sol.primal_residual = primal;
  sol.dual_residual = dual;
  if (it > p.max_iterations) {
    throw SolverError("SSC solver did not converge in " + std::to_string(p.max_iterations) +
                          " iterations (primal residual " + std::to_string(primal) + ", dual residual " +
                          std::to_string(dual) + ")",
                      primal, dual, p.max_iterations);
  }

  sol.coefficients = c;
  if (outliers) sol.outliers = f / scale;
  sol.objective = ssc_objective(x, sol.coefficients, sol.outliers, w.lambda1, w.lambda2);
  return sol;
}

AffinityMatrix ssc_affinity_from(const Eigen::MatrixXd& coefficients) {
  const Eigen::MatrixXd abs = coefficients.cwiseAbs();
  Eigen::MatrixXd w = abs + abs.transpose();
  w.diagonal().setZero();
  return AffinityMatrix::finalized(std::move(w));
}

AffinityMatrix ssc_affinity(const VectorDataset& x, const SscParams& p) {
  return ssc_affinity_from(ssc_solve(x, p).coefficients);
}

}  // namespace msc
