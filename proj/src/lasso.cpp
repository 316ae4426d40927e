#include "ggsp/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ggsp {

namespace {

constexpr Eigen::Index kGramLimit = 2500;
constexpr Eigen::Index kMinGrowth = 50;

double kkt_from_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g, double mu) {
  double worst = 0.0;
  for (Eigen::Index a = 0; a < x.size(); ++a) {
    const double v = x(a) != 0.0 ? std::abs(g(a) + mu * (x(a) > 0.0 ? 1.0 : -1.0))
                                 : std::max(0.0, std::abs(g(a)) - mu);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace

double soft_threshold(double z, double threshold) {
  if (z > threshold) return z - threshold;
  if (z < -threshold) return z + threshold;
  return 0.0;
}

double lasso_objective(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, double mu,
                       const Eigen::VectorXd& x) {
  return (y - design * x).squaredNorm() + mu * x.lpNorm<1>();
}

double lasso_kkt_residual(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, double mu,
                          const Eigen::VectorXd& x) {
  const Eigen::VectorXd g = 2.0 * (design.transpose() * (design * x - y));
  return kkt_from_gradient(x, g, mu);
}

double lasso_mu_max(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  if (design.cols() == 0) return 0.0;
  return 2.0 * (design.transpose() * y).cwiseAbs().maxCoeff();
}

LassoResult lasso(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, double mu,
                  const LassoOptions& options, const Eigen::VectorXd& warm_start) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("lasso: mu must be positive");
  if (design.rows() != y.size()) throw std::invalid_argument("lasso: design and y sizes differ");
  if (!design.allFinite() || !y.allFinite()) throw std::invalid_argument("lasso: non-finite input");
  const Eigen::Index n_atoms = design.cols();

  LassoResult result;
  result.x = Eigen::VectorXd::Zero(n_atoms);
  if (warm_start.size() != 0) {
    if (warm_start.size() != n_atoms || !warm_start.allFinite()) {
      throw std::invalid_argument("lasso: warm start has the wrong size or non-finite entries");
    }
    result.x = warm_start;
  }
  if (n_atoms == 0) {
    result.converged = true;
    return result;
  }
  const Eigen::VectorXd sq = design.colwise().squaredNorm().transpose();
  Eigen::VectorXd& x = result.x;
  for (Eigen::Index a = 0; a < n_atoms; ++a) {
    if (sq(a) == 0.0) x(a) = 0.0;
  }
  Eigen::VectorXd r = y - design * x;
  const double half_mu = 0.5 * mu;
  const double stop = options.tolerance * std::max(1.0, mu);
  const double max_norm = std::sqrt(sq.maxCoeff());

  auto update = [&](Eigen::Index a) {
    if (sq(a) == 0.0) return 0.0;
    const double old = x(a);
    const double z = design.col(a).dot(r) + sq(a) * old;
    const double next = soft_threshold(z, half_mu) / sq(a);
    if (next != old) {
      r.noalias() -= (next - old) * design.col(a);
      x(a) = next;
    }
    return std::abs(next - old) * std::sqrt(sq(a));
  };

  // Working-set scheme: one gradient pass over all atoms, then coordinate
  // descent on the nonzeros plus the current violators. The Gram matrix of
  // the working set grows incrementally as atoms join.
  std::vector<Eigen::Index> active;
  std::vector<char> in_active(static_cast<std::size_t>(n_atoms), 0);
  Eigen::MatrixXd da(design.rows(), 0);
  Eigen::MatrixXd gram(0, 0);
  while (result.sweeps < options.max_sweeps) {
    r = y - design * x;
    const Eigen::VectorXd g = -2.0 * (design.transpose() * r);
    result.kkt = kkt_from_gradient(x, g, mu);
    ++result.sweeps;
    if (result.kkt <= stop) {
      result.converged = true;
      break;
    }
    // Nonzeros always join; of the remaining violators only the strongest
    // do, so the working set stays small for redundant dictionaries.
    const Eigen::Index old_na = static_cast<Eigen::Index>(active.size());
    std::vector<Eigen::Index> violators;
    Eigen::Index nonzeros = 0;
    for (Eigen::Index a = 0; a < n_atoms; ++a) {
      if (x(a) != 0.0) {
        ++nonzeros;
        if (!in_active[a]) {
          in_active[a] = 1;
          active.push_back(a);
        }
      } else if (!in_active[a] && sq(a) > 0.0 && std::abs(g(a)) > mu) {
        violators.push_back(a);
      }
    }
    const std::size_t budget = static_cast<std::size_t>(std::max<Eigen::Index>(kMinGrowth, nonzeros));
    if (violators.size() > budget) {
      std::partial_sort(violators.begin(), violators.begin() + static_cast<std::ptrdiff_t>(budget), violators.end(),
                        [&](Eigen::Index a, Eigen::Index b) {
                          const double ga = std::abs(g(a)), gb = std::abs(g(b));
                          return ga != gb ? ga > gb : a < b;
                        });
      violators.resize(budget);
    }
    for (Eigen::Index a : violators) {
      in_active[a] = 1;
      active.push_back(a);
    }
    const Eigen::Index na = static_cast<Eigen::Index>(active.size());
    if (na <= kGramLimit) {
      if (na > old_na) {
        const Eigen::Index added = na - old_na;
        Eigen::MatrixXd fresh(design.rows(), added);
        for (Eigen::Index i = 0; i < added; ++i) fresh.col(i) = design.col(active[old_na + i]);
        const Eigen::MatrixXd cross = da.transpose() * fresh;
        gram.conservativeResize(na, na);
        gram.topRightCorner(old_na, added) = cross;
        gram.bottomLeftCorner(added, old_na) = cross.transpose();
        gram.bottomRightCorner(added, added) = fresh.transpose() * fresh;
        da.conservativeResize(Eigen::NoChange, na);
        da.rightCols(added) = fresh;
      }
      // q holds D_A^T r.
      Eigen::VectorXd q = da.transpose() * r;
      // Stops once the working-set problem meets half the global tolerance.
      auto working_kkt = [&]() {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < na; ++i) {
          const double xa = x(active[i]);
          const double gi = -2.0 * q(i);
          const double v = xa != 0.0 ? std::abs(gi + mu * (xa > 0.0 ? 1.0 : -1.0))
                                     : std::max(0.0, std::abs(gi) - mu);
          worst = std::max(worst, v);
        }
        return worst;
      };
      for (int inner = 0; inner < 100000 && result.sweeps < options.max_sweeps; ++inner) {
        for (Eigen::Index i = 0; i < na; ++i) {
          const Eigen::Index a = active[i];
          const double gaa = gram(i, i);
          if (gaa == 0.0) continue;
          const double old = x(a);
          const double next = soft_threshold(q(i) + gaa * old, half_mu) / gaa;
          if (next != old) {
            q.noalias() -= (next - old) * gram.col(i);
            x(a) = next;
          }
        }
        if (inner % 16 == 15) ++result.sweeps;
        if (working_kkt() <= 0.5 * stop) break;
      }
    } else {
      for (int inner = 0; inner < 10000 && result.sweeps < options.max_sweeps; ++inner) {
        double change = 0.0;
        for (Eigen::Index a : active) change = std::max(change, update(a));
        ++result.sweeps;
        if (2.0 * change * max_norm <= 0.1 * stop) break;
      }
    }
  }
  return result;
}

}  // namespace ggsp
