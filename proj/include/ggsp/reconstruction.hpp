#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ggsp/dictionary.hpp"
#include "ggsp/lasso.hpp"
#include "ggsp/samples.hpp"

namespace ggsp {

/// Sparse code of the test observations in a frozen dictionary.
Eigen::VectorXd fit_codes(const JointDomain& domain, const Dictionary& dict,
                          const SampleSet& test, double mu, const LassoOptions& options = {});

/// f^(v, t) = sum_a x_a atom_a(v, t) at each point.
Eigen::VectorXd predict(const JointDomain& domain, const Dictionary& dict, const Eigen::VectorXd& x,
                        const std::vector<SamplePoint>& points);

/// Relative square error sum (f - f^)^2 / sum f^2. Throws when the truth is
/// identically zero.
double rse(const Eigen::VectorXd& truth, const Eigen::VectorXd& prediction);
/// RSE over grid points of full signals; point times must be grid points.
double rse(const JointDomain& domain, const Signal& truth, const Signal& prediction,
           const std::vector<SamplePoint>& points);

/// Values of a grid signal at grid-aligned points.
Eigen::VectorXd gather(const JointDomain& domain, const Signal& f, const std::vector<SamplePoint>& points);

}  // namespace ggsp
