#include <gtest/gtest.h>

#include <numbers>

#include "ggsp/uncertainty.hpp"
#include "test_support.hpp"

using namespace ggsp;
using namespace ggsp::testing;
using std::numbers::pi;

namespace {

struct Instance {
  std::mt19937_64 rng;
  JointDomain domain;
  VertexTimeMask s;
  SpectralFrequencyMask sigma;

  explicit Instance(std::uint64_t seed, int n = 3, int t = 4)
      : rng(seed), domain(random_graph(n, rng), TimeGrid(1.0, t)) {
    s = random_mask<VertexTimeMask>(n, t, rng);
    sigma = random_mask<SpectralFrequencyMask>(n, t, rng);
    if (s.count() == 0) s.mask(0, 0) = true;
    if (sigma.count() == 0) sigma.mask(0, 0) = true;
  }
};

}  // namespace

TEST(Angle, Basics) {
  std::mt19937_64 rng(1);
  const Signal f = random_signal(3, 4, rng);
  EXPECT_NEAR(angle(f, f), 0.0, 1e-7);
  EXPECT_NEAR(angle(f, -f), pi, 1e-7);
  Signal a = Signal::Zero(3, 4), b = Signal::Zero(3, 4);
  a(0, 0) = 1.0;
  b(1, 2) = 2.0;
  EXPECT_NEAR(angle(a, b), pi / 2, 1e-15);
  EXPECT_THROW(angle(a, Signal::Zero(3, 4)), std::invalid_argument);
}

TEST(MinAngle, FullSetGivesZero) {
  Instance in(2);
  const MinAngle m = min_angle(in.domain, VertexTimeMask::full(3, 4), in.sigma);
  EXPECT_NEAR(m.lambda, 1.0, 1e-12);
  EXPECT_NEAR(m.theta, 0.0, 1e-6);
  EXPECT_NEAR(m.psi0.norm(), 1.0, 1e-12);
}

TEST(MinAngle, OrthogonalProjectorsGiveRightAngle) {
  // A single spectral index k with a single frame column: Pi_Sigma f is
  // u_k f_c^T. Choosing S on a vertex where u_k vanishes makes Pi_S Pi_Sigma = 0.
  const JointDomain domain(path_graph(3), TimeGrid(1.0, 4));
  // Middle vertex of the path is a node of the second eigenvector.
  ASSERT_NEAR(domain.U()(1, 1), 0.0, 1e-12);
  const SpectralFrequencyMask sigma = SpectralFrequencyMask::separable(3, 4, {1}, {0, 1});
  VertexTimeMask s = VertexTimeMask::empty(3, 4);
  for (int j = 0; j < 4; ++j) s.mask(1, j) = true;
  const MinAngle m = min_angle(domain, s, sigma);
  EXPECT_NEAR(m.lambda, 0.0, 1e-12);
  EXPECT_NEAR(m.theta, pi / 2, 1e-6);
  EXPECT_NEAR(m.psi0.norm(), 1.0, 1e-12);
  EXPECT_THROW(min_angle(domain, VertexTimeMask::empty(3, 4), sigma), std::invalid_argument);
}

TEST(MinAngle, LowerBoundsSampledAngles) {
  Instance in(3);
  const MinAngle m = min_angle(in.domain, in.s, in.sigma);
  double smallest = pi;
  for (int i = 0; i < 10000; ++i) {
    const Signal f = apply_sf_limit(in.domain, random_signal(3, 4, in.rng), in.sigma);
    const Signal g = apply_vt_limit(random_signal(3, 4, in.rng), in.s);
    const double a = angle(f, g);
    EXPECT_GE(a, m.theta - 1e-9);
    smallest = std::min(smallest, a);
  }
  // The minimizing pair (psi0, Pi_S psi0) attains theta.
  EXPECT_NEAR(angle(m.psi0, apply_vt_limit(m.psi0, in.s)), m.theta, 1e-7);
  EXPECT_GE(smallest, m.theta);
}

TEST(FeasibleRegion, FullSetsContainCorner) {
  Instance in(4);
  const FeasibleRegion r =
      feasible_region(in.domain, VertexTimeMask::full(3, 4), SpectralFrequencyMask::full(3, 4));
  EXPECT_TRUE(r.is_feasible(1.0, 1.0));
  EXPECT_NEAR(r.lambda_s_sigma, 1.0, 1e-12);
}

TEST(FeasibleRegion, AlphaOneBetaRange) {
  // With alpha = 1, beta^2 ranges over [1 - l(Pi_S Pi_Sigma-bar Pi_S), l(Pi_S Pi_Sigma Pi_S)].
  for (std::uint64_t seed = 5; seed < 15; ++seed) {
    Instance in(seed);
    const FeasibleRegion r = feasible_region(in.domain, in.s, in.sigma);
    const Eigen::MatrixXd ps = dense_vt_projector(in.s);
    const Eigen::MatrixXd psig = dense_sf_projector(in.domain, in.sigma);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(12, 12);
    const double hi = lambda_max(ps * psig * ps);
    const double lo = 1.0 - lambda_max(ps * (id - psig) * ps);
    if (lo > hi + 1e-9) continue;
    for (int i = 0; i <= 20; ++i) {
      const double b2 = lo + (hi - lo) * i / 20.0;
      EXPECT_TRUE(r.is_feasible(1.0, std::sqrt(std::max(0.0, b2)))) << seed << " " << b2;
    }
    if (hi < 1.0 - 1e-6) {
      EXPECT_FALSE(r.is_feasible(1.0, std::sqrt(hi + 1e-3 * (1.0 - hi))));
    }
    if (lo > 1e-6) {
      EXPECT_FALSE(r.is_feasible(1.0, std::sqrt(lo * (1.0 - 1e-3))));
    }
  }
}

TEST(FeasibleRegion, RandomSignalsFeasible) {
  Instance in(6);
  const FeasibleRegion r = feasible_region(in.domain, in.s, in.sigma);
  for (int i = 0; i < 20000; ++i) {
    const Signal f = random_signal(3, 4, in.rng);
    const double a = std::sqrt(vt_spread(f, in.s));
    const double b = std::sqrt(sf_spread(in.domain, f, in.sigma));
    ASSERT_TRUE(r.is_feasible(a, b)) << i;
  }
}

TEST(FeasibleRegion, BoundaryAndCsv) {
  Instance in(7);
  const FeasibleRegion r = feasible_region(in.domain, in.s, in.sigma);
  const auto pts = r.boundary(16);
  ASSERT_EQ(pts.size(), 64u);
  for (const BoundaryPoint& p : pts) {
    const auto sl = r.slacks(std::sqrt(p.alpha2), std::sqrt(p.beta2));
    EXPECT_NEAR(sl[p.arc], 0.0, 1e-7);
  }
  const auto ic = r.intercepts();
  EXPECT_NEAR(ic.top_right_alpha2, pts[0].alpha2, 1e-12);
  EXPECT_NEAR(pts[15].beta2, ic.right_top_beta2, 1e-9);
  const std::string csv = r.to_csv(16);
  EXPECT_EQ(csv.rfind("record,arc,lambda,alpha2,beta2\n", 0), 0u);
  EXPECT_EQ(static_cast<int>(std::count(csv.begin(), csv.end(), '\n')), 1 + 4 + 64);
  EXPECT_THROW(r.boundary(1), std::invalid_argument);
}

TEST(BoundaryAttainer, EqualityAndLimits) {
  // Strict band and strict interval on a path graph keep lambda inside (0, 1).
  const JointDomain domain(path_graph(3), TimeGrid(1.0, 8));
  const VertexTimeMask s = VertexTimeMask::separable(3, {0, 1}, domain.grid(), {0.3, 0.4});
  const SpectralFrequencyMask sigma = SpectralFrequencyMask::separable(domain, {0, 1}, FrequencyBand(0.0, 2 * pi * 1));
  const FeasibleRegion r = feasible_region(domain, s, sigma);
  const double lam = r.lambda_s_sigma;
  ASSERT_GT(lam, 0.05);
  ASSERT_LT(lam, 0.999);
  for (double alpha : {std::sqrt(lam), 0.5 * (std::sqrt(lam) + 1.0), 0.999}) {
    const Signal f = boundary_attainer(domain, s, sigma, alpha);
    EXPECT_NEAR(f.norm(), 1.0, 1e-9);
    const double a = std::sqrt(vt_spread(f, s));
    const double b = std::sqrt(sf_spread(domain, f, sigma));
    EXPECT_NEAR(a, alpha, 1e-9);
    EXPECT_NEAR(std::acos(a) + std::acos(std::min(1.0, b)), std::acos(std::sqrt(lam)), 1e-6);
  }
  // At alpha = sqrt(lambda) the attainer is psi0 itself (beta = 1).
  const AttainerParams p = attainer_params(domain, s, sigma, std::sqrt(lam));
  EXPECT_NEAR(p.q, 0.0, 1e-9);
  EXPECT_NEAR(std::sqrt(sf_spread(domain, boundary_attainer(domain, s, sigma, std::sqrt(lam)), sigma)), 1.0, 1e-9);
  // As alpha -> 1, beta -> sqrt(lambda).
  const Signal near1 = boundary_attainer(domain, s, sigma, 1.0 - 1e-9);
  EXPECT_NEAR(std::sqrt(sf_spread(domain, near1, sigma)), std::sqrt(lam), 1e-4);
  EXPECT_THROW(boundary_attainer(domain, s, sigma, 0.0), std::domain_error);
  EXPECT_THROW(boundary_attainer(domain, s, sigma, 1.0), std::domain_error);
  EXPECT_THROW(boundary_attainer(domain, s, sigma, 0.5 * std::sqrt(lam)), std::domain_error);
  EXPECT_THROW(boundary_attainer(domain, VertexTimeMask::full(3, 8), sigma, 0.5), std::domain_error);
}

TEST(PerfectLocalization, FullSetInBandAtom) {
  const JointDomain domain(path_graph(3), TimeGrid(1.0, 4));
  const Signal f = domain.U().col(1) * domain.frame().matrix().col(2).transpose();
  const SpectralFrequencyMask sigma = SpectralFrequencyMask::separable(3, 4, {1}, {2});
  const LocalizationCertificate c = certify_perfect_localization(domain, f, VertexTimeMask::full(3, 4), sigma);
  EXPECT_TRUE(c.localized);
  EXPECT_LE(c.residual, 1e-12);
}

TEST(PerfectLocalization, SingleVertexStrictIntervalAndBand) {
  const JointDomain domain(single_vertex_graph(), TimeGrid(1.0, 32));
  const VertexTimeMask s = VertexTimeMask::separable(1, {0}, domain.grid(), {0.5, 0.5});
  const SpectralFrequencyMask sigma = SpectralFrequencyMask::separable(domain, {0}, FrequencyBand(0.0, 2 * pi * 3));
  const MinAngle m = min_angle(domain, s, sigma);
  EXPECT_LT(m.lambda, 1.0 - 1e-8);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const Signal f = random_signal(1, 32, rng);
    EXPECT_FALSE(certify_perfect_localization(domain, f, s, sigma).localized);
  }
  EXPECT_FALSE(certify_perfect_localization(domain, m.psi0, s, sigma).localized);
}

TEST(PerfectLocalization, UnitEigenvectorCertified) {
  // W' = all graph frequencies and a full frame make the band everything, so
  // any vertex-time indicator signal is localized.
  const JointDomain domain(path_graph(3), TimeGrid(1.0, 4));
  VertexTimeMask s = VertexTimeMask::empty(3, 4);
  s.mask(2, 1) = true;
  Signal f = Signal::Zero(3, 4);
  f(2, 1) = 1.0;
  const LocalizationCertificate c =
      certify_perfect_localization(domain, f, s, SpectralFrequencyMask::full(3, 4));
  EXPECT_TRUE(c.localized);
  EXPECT_NEAR(min_angle(domain, s, SpectralFrequencyMask::full(3, 4)).lambda, 1.0, 1e-12);
}
