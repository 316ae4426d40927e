#pragma once

#include <Eigen/Dense>

namespace ggsp {

struct LassoOptions {
  /// Stop once the KKT residual is below tol * max(1, mu).
  double tolerance = 1e-8;
  int max_sweeps = 20000;
};

struct LassoResult {
  Eigen::VectorXd x;
  int sweeps = 0;
  double kkt = 0.0;
  bool converged = false;
};

/// Minimizes ||y - D x||^2 + mu ||x||_1 by cyclic coordinate descent with an
/// active set. `warm_start` (if nonempty) seeds the iterate.
LassoResult lasso(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, double mu,
                  const LassoOptions& options = {},
                  const Eigen::VectorXd& warm_start = Eigen::VectorXd());

double lasso_objective(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, double mu,
                       const Eigen::VectorXd& x);

/// Largest violation of the optimality conditions: for x_a != 0,
/// |2 d_a^T (D x - y) + mu sign(x_a)|; for x_a = 0, max(0, |2 d_a^T (D x - y)| - mu).
double lasso_kkt_residual(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, double mu,
                          const Eigen::VectorXd& x);

/// Smallest mu for which x = 0 is optimal: 2 max |D^T y|.
double lasso_mu_max(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

double soft_threshold(double z, double threshold);

}  // namespace ggsp
