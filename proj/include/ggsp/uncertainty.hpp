#pragma once

#include <array>
#include <string>
#include <vector>

#include "ggsp/operators.hpp"

namespace ggsp {

/// theta(f, g) = arccos(<f, g> / (||f|| ||g||)) in [0, pi].
double angle(const Signal& f, const Signal& g);

struct MinAngle {
  double theta = 0.0;
  double lambda = 0.0;  // lambda_max(Pi_Sigma Pi_S Pi_Sigma)
  Signal psi0;          // unit top eigenvector, in im(Pi_Sigma)
};

/// First principal angle between im(Pi_Sigma) and im(Pi_S). When
/// Pi_S Pi_Sigma = 0 the angle is pi/2 and psi0 is still a unit band-limited
/// signal. Throws if either projector is zero.
MinAngle min_angle(const JointDomain& domain, const VertexTimeMask& s,
                   const SpectralFrequencyMask& sigma);

struct BoundaryPoint {
  int arc = 0;  // 0: (S, Sigma), 1: (S-bar, Sigma), 2: (S, Sigma-bar), 3: (S-bar, Sigma-bar)
  double alpha2 = 0.0;
  double beta2 = 0.0;
};

/// Feasible set of (alpha_S, beta_Sigma) for unit-norm signals, described by
/// the largest eigenvalues of the four operators
///   Pi_Sigma Pi_S Pi_Sigma, Pi_Sigma Pi_S-bar Pi_Sigma,
///   Pi_Sigma-bar Pi_S Pi_Sigma-bar, Pi_Sigma-bar Pi_S-bar Pi_Sigma-bar.
struct FeasibleRegion {
  double lambda_s_sigma = 0.0;
  double lambda_sbar_sigma = 0.0;
  double lambda_s_sigmabar = 0.0;
  double lambda_sbar_sigmabar = 0.0;

  /// All four arccos inequalities, each allowed to fail by at most `tol` radians.
  bool is_feasible(double alpha, double beta, double tol = 1e-9) const;
  /// Slack of each inequality (left side minus right side).
  std::array<double, 4> slacks(double alpha, double beta) const;

  /// Axis intercepts of the four corner arcs in (alpha^2, beta^2).
  struct Intercepts {
    double top_left_alpha2, top_left_beta2;          // (1 - l_sbar_sigma, 1), (0, l_sbar_sigma)
    double top_right_alpha2, right_top_beta2;        // (l_s_sigma, 1), (1, l_s_sigma)
    double bottom_right_alpha2, right_bottom_beta2;  // (l_s_sigmabar, 0), (1, 1 - l_s_sigmabar)
    double bottom_left_alpha2, left_bottom_beta2;    // (1 - l_sbar_sigmabar, 0), (0, 1 - l_sbar_sigmabar)
  };
  Intercepts intercepts() const;

  /// Sampled equality curves of the four inequalities.
  std::vector<BoundaryPoint> boundary(int points_per_arc = 256) const;
  /// CSV with the corner values followed by the polyline.
  std::string to_csv(int points_per_arc = 256) const;
};

FeasibleRegion feasible_region(const JointDomain& domain, const VertexTimeMask& s,
                               const SpectralFrequencyMask& sigma);

/// Parameters of f = p psi0 + q Pi_S psi0.
struct AttainerParams {
  double p = 0.0;
  double q = 0.0;
  double lambda = 0.0;
  Signal psi0;
};

constexpr double kPerfectLocalizationTol = 1e-10;
/// feasible_region rounds characteristic eigenvalues this close to 0 or 1.
constexpr double kEigenSnapTol = 1e-12;

/// Builds the unit-norm signal with vt spread alpha^2 that meets the first
/// inequality with equality. Equality is reachable for alpha in
/// [sqrt(lambda), 1); smaller alpha throws std::domain_error, as does the
/// perfect-localization regime 1 - lambda <= 1e-10.
AttainerParams attainer_params(const JointDomain& domain, const VertexTimeMask& s,
                               const SpectralFrequencyMask& sigma, double alpha);
Signal boundary_attainer(const JointDomain& domain, const VertexTimeMask& s,
                         const SpectralFrequencyMask& sigma, double alpha);

struct LocalizationCertificate {
  bool localized = false;
  double residual = 0.0;     // ||Pi_Sigma Pi_S Pi_Sigma f - f|| / ||f||
  double vt_residual = 0.0;  // ||Pi_S f - f|| / ||f||
  double sf_residual = 0.0;  // ||Pi_Sigma f - f|| / ||f||
};

LocalizationCertificate certify_perfect_localization(const JointDomain& domain, const Signal& f,
                                                     const VertexTimeMask& s,
                                                     const SpectralFrequencyMask& sigma);

}  // namespace ggsp
