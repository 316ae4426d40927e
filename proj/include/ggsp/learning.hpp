#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ggsp/dictionary.hpp"
#include "ggsp/lasso.hpp"
#include "ggsp/samples.hpp"

namespace ggsp {

struct LearnConfig {
  double mu = 1.0;
  /// Learning rates; a negative value selects 0.05 delta^2 / ||Y||^2.
  double eta1 = -1.0;
  double eta2 = -1.0;
  double epsilon = 1e-8;
  int max_outer_iters = 50;
  /// Finite-difference step; 0 selects 1e-3 delta.
  double h_fd = 0.0;
  bool backtracking = true;
  double backtrack_factor = 0.5;
  int max_backtracks = 20;
  LassoOptions lasso;
};

struct LearnState {
  std::vector<double> tc;
  std::vector<double> ell;
  Eigen::VectorXd x;
  std::vector<double> loss_trace;  // objective after each outer iteration
  std::vector<std::vector<double>> tc_trace;
  std::vector<std::vector<double>> ell_trace;
  int iterations = 0;
  bool converged = false;

  std::vector<TimeInterval> intervals() const;
};

/// Thrown when a dictionary rebuild fails inside the learning loop.
class LearnAborted : public std::runtime_error {
 public:
  LearnAborted(const std::string& what, LearnState snapshot)
      : std::runtime_error(what), snapshot_(std::move(snapshot)) {}
  const LearnState& snapshot() const { return snapshot_; }

 private:
  LearnState snapshot_;
};

/// ||y - D x||^2 + mu ||x||_1 for the dictionary at the state's parameters.
double loss(const JecdBuilder& builder, const LearnState& state, const SampleSet& samples,
            double mu);

struct ParamGradient {
  std::vector<double> tc;
  std::vector<double> ell;
};

/// Central differences of the data term ||y - D(t_c, l) x||^2 in each t_c and
/// l, with time atoms sign-aligned to the dictionary at the state.
ParamGradient grad_params(const JecdBuilder& builder, const LearnState& state,
                          const SampleSet& samples, double h_fd);

/// Alternating minimization over x (Lasso), t_c and l (projected gradient
/// steps with optional backtracking). The initial parameters come from the
/// builder's subsets.
LearnState jecd_learn(const JecdBuilder& builder, const SampleSet& train, const LearnConfig& config);

/// CSV `iter,loss,tc_0..,ell_0..` with one row per outer iteration.
void write_loss_trace(const LearnState& state, const std::string& path);
std::string loss_trace_csv(const LearnState& state);

struct MuSelection {
  double mu = 0.0;
  std::vector<double> candidates;
  std::vector<double> holdout_errors;
};

/// Picks mu from a logarithmic grid relative to mu_max by fitting on a seeded
/// 80% split of the rows and scoring the remaining 20%. The path runs from
/// large to small mu and stops after two consecutive values fail to improve
/// the held-out error. The chosen value is rescaled to the full row count.
MuSelection select_mu(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, std::uint64_t seed,
                      const std::vector<double>& relative_grid = {3e-1, 1e-1, 3e-2, 1e-2, 3e-3, 1e-3},
                      const LassoOptions& options = {});

}  // namespace ggsp
