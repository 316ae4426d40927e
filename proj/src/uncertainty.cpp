#include "ggsp/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ggsp {

namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

double acos_sqrt(double lambda) { return std::acos(std::sqrt(clamp_unit(lambda))); }

// Eigenvalues within rounding of 0 or 1 are snapped; arccos(sqrt(x)) has an
// infinite slope at x = 1, so 1e-16 of eigensolver noise would cost 1e-8 rad.
double snap_unit(double lambda) {
  const double x = clamp_unit(lambda);
  if (1.0 - x <= kEigenSnapTol) return 1.0;
  if (x <= kEigenSnapTol) return 0.0;
  return x;
}

}  // namespace

double angle(const Signal& f, const Signal& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    throw std::invalid_argument("angle: signal dimensions differ");
  }
  const double nf = f.norm();
  const double ng = g.norm();
  if (!(nf > 0.0) || !(ng > 0.0)) throw std::invalid_argument("angle: zero-norm signal");
  const double c = (f.array() * g.array()).sum() / (nf * ng);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

MinAngle min_angle(const JointDomain& domain, const VertexTimeMask& s,
                   const SpectralFrequencyMask& sigma) {
  if (s.count() == 0) throw std::invalid_argument("min_angle: vertex-time projector is zero");
  if (sigma.count() == 0) throw std::invalid_argument("min_angle: spectral-frequency projector is zero");
  const BandlimitedBasis basis = bandlimited_basis(domain, sigma);
  const Eigen::MatrixXd m = restricted_operator(basis, s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("min_angle: eigensolver failed");
  const Eigen::Index top = m.rows() - 1;
  MinAngle out;
  out.lambda = clamp_unit(solver.eigenvalues()(top));
  out.theta = acos_sqrt(out.lambda);
  out.psi0 = basis.lift(domain, solver.eigenvectors().col(top));
  return out;
}

std::array<double, 4> FeasibleRegion::slacks(double alpha, double beta) const {
  const double a = clamp_unit(alpha);
  const double b = clamp_unit(beta);
  const double abar = std::sqrt(clamp_unit(1.0 - a * a));
  const double bbar = std::sqrt(clamp_unit(1.0 - b * b));
  return {std::acos(a) + std::acos(b) - acos_sqrt(lambda_s_sigma),
          std::acos(abar) + std::acos(b) - acos_sqrt(lambda_sbar_sigma),
          std::acos(a) + std::acos(bbar) - acos_sqrt(lambda_s_sigmabar),
          std::acos(abar) + std::acos(bbar) - acos_sqrt(lambda_sbar_sigmabar)};
}

bool FeasibleRegion::is_feasible(double alpha, double beta, double tol) const {
  const auto s = slacks(alpha, beta);
  return std::all_of(s.begin(), s.end(), [tol](double x) { return x >= -tol; });
}

FeasibleRegion::Intercepts FeasibleRegion::intercepts() const {
  return {1.0 - lambda_sbar_sigma,   lambda_sbar_sigma,
          lambda_s_sigma,            lambda_s_sigma,
          lambda_s_sigmabar,         1.0 - lambda_s_sigmabar,
          1.0 - lambda_sbar_sigmabar, 1.0 - lambda_sbar_sigmabar};
}

std::vector<BoundaryPoint> FeasibleRegion::boundary(int points_per_arc) const {
  if (points_per_arc < 2) throw std::invalid_argument("boundary: need at least 2 points per arc");
  const std::array<double, 4> lambdas = {lambda_s_sigma, lambda_sbar_sigma, lambda_s_sigmabar,
                                         lambda_sbar_sigmabar};
  std::vector<BoundaryPoint> points;
  points.reserve(4 * static_cast<std::size_t>(points_per_arc));
  for (int arc = 0; arc < 4; ++arc) {
    const double theta = acos_sqrt(lambdas[arc]);
    const double start = std::sqrt(clamp_unit(lambdas[arc]));
    const bool flip_alpha = arc == 1 || arc == 3;
    const bool flip_beta = arc == 2 || arc == 3;
    for (int i = 0; i < points_per_arc; ++i) {
      // a runs over [sqrt(lambda), 1]; on the equality curve acos a + acos b = theta.
      const double a = start + (1.0 - start) * i / (points_per_arc - 1);
      const double b = std::cos(theta - std::acos(clamp_unit(a)));
      const double a2 = a * a;
      const double b2 = b * b;
      points.push_back({arc, flip_alpha ? 1.0 - a2 : a2, flip_beta ? 1.0 - b2 : b2});
    }
  }
  return points;
}

std::string FeasibleRegion::to_csv(int points_per_arc) const {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "record,arc,lambda,alpha2,beta2\n";
  const std::array<double, 4> lambdas = {lambda_s_sigma, lambda_sbar_sigma, lambda_s_sigmabar,
                                         lambda_sbar_sigmabar};
  for (int arc = 0; arc < 4; ++arc) out << "corner," << arc << ',' << lambdas[arc] << ",,\n";
  for (const BoundaryPoint& p : boundary(points_per_arc)) {
    out << "boundary," << p.arc << ",," << p.alpha2 << ',' << p.beta2 << '\n';
  }
  return out.str();
}

FeasibleRegion feasible_region(const JointDomain& domain, const VertexTimeMask& s,
                               const SpectralFrequencyMask& sigma) {
  const VertexTimeMask sbar = s.complement();
  const SpectralFrequencyMask sigmabar = sigma.complement();
  FeasibleRegion region;
  region.lambda_s_sigma = snap_unit(lambda_max_product(domain, s, sigma));
  region.lambda_sbar_sigma = snap_unit(lambda_max_product(domain, sbar, sigma));
  region.lambda_s_sigmabar = snap_unit(lambda_max_product(domain, s, sigmabar));
  region.lambda_sbar_sigmabar = snap_unit(lambda_max_product(domain, sbar, sigmabar));
  return region;
}

AttainerParams attainer_params(const JointDomain& domain, const VertexTimeMask& s,
                               const SpectralFrequencyMask& sigma, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("boundary_attainer: alpha must lie in (0, 1)");
  }
  MinAngle top = min_angle(domain, s, sigma);
  const double lambda = top.lambda;
  if (1.0 - lambda <= kPerfectLocalizationTol) {
    throw std::domain_error(
        "boundary_attainer: lambda_max = 1 (perfect localization); the boundary formula is singular");
  }
  if (!(lambda > 0.0)) {
    throw std::domain_error("boundary_attainer: Pi_S Pi_Sigma = 0; no attainer of this form");
  }
  if (alpha < std::sqrt(lambda) * (1.0 - 1e-12)) {
    throw std::domain_error("boundary_attainer: alpha below sqrt(lambda_max) lies on the flat "
                            "beta = 1 edge, not on the first equality curve");
  }
  AttainerParams params;
  params.lambda = lambda;
  params.p = std::sqrt((1.0 - alpha * alpha) / (1.0 - lambda));
  params.q = alpha / std::sqrt(lambda) - params.p;
  params.psi0 = std::move(top.psi0);
  return params;
}

Signal boundary_attainer(const JointDomain& domain, const VertexTimeMask& s,
                         const SpectralFrequencyMask& sigma, double alpha) {
  const AttainerParams params = attainer_params(domain, s, sigma, alpha);
  return params.p * params.psi0 + params.q * apply_vt_limit(params.psi0, s);
}

LocalizationCertificate certify_perfect_localization(const JointDomain& domain, const Signal& f,
                                                     const VertexTimeMask& s,
                                                     const SpectralFrequencyMask& sigma) {
  const double norm = f.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("certify_perfect_localization: zero signal");
  const Signal pf = apply_sf_limit(domain, f, sigma);
  const Signal pspf = apply_vt_limit(pf, s);
  const Signal pps = apply_sf_limit(domain, pspf, sigma);
  LocalizationCertificate cert;
  cert.residual = (pps - f).norm() / norm;
  cert.vt_residual = (apply_vt_limit(f, s) - f).norm() / norm;
  cert.sf_residual = (pf - f).norm() / norm;
  cert.localized = cert.residual <= 1e-8;
  return cert;
}

}  // namespace ggsp
