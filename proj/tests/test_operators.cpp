#include <gtest/gtest.h>

#include <numbers>

#include "ggsp/operators.hpp"
#include "test_support.hpp"

using namespace ggsp;
using namespace ggsp::testing;

namespace {

struct Small {
  std::mt19937_64 rng{17};
  JointDomain domain{random_graph(4, rng), TimeGrid(1.0, 5)};
  int n = 4;
  int t = 5;
};

}  // namespace

TEST(JointDomain, FourierRoundTripAndParseval) {
  Small s;
  const Signal f = random_signal(s.n, s.t, s.rng);
  const Eigen::MatrixXd c = s.domain.jft(f);
  EXPECT_NEAR(c.norm(), f.norm(), 1e-12);
  EXPECT_LE((s.domain.ijft(c) - f).norm(), 1e-12);
  EXPECT_LE((vec(s.domain.ijft(c)) - dense_joint_fourier(s.domain) * vec(c)).norm(), 1e-12);
  EXPECT_THROW(s.domain.jft(Signal::Zero(3, 5)), std::invalid_argument);
}

TEST(VtLimit, FullEmptyAndPythagoras) {
  Small s;
  const Signal f = random_signal(s.n, s.t, s.rng);
  EXPECT_EQ((apply_vt_limit(f, VertexTimeMask::full(s.n, s.t)) - f).norm(), 0.0);
  EXPECT_EQ(apply_vt_limit(f, VertexTimeMask::empty(s.n, s.t)).norm(), 0.0);
  const auto m = random_mask<VertexTimeMask>(s.n, s.t, s.rng);
  const double in = apply_vt_limit(f, m).squaredNorm();
  const double out = apply_vt_limit(f, m.complement()).squaredNorm();
  EXPECT_NEAR(in + out, f.squaredNorm(), 1e-12);
}

TEST(SfLimit, InBandUnchangedFullIdentityContraction) {
  Small s;
  const auto sigma = random_mask<SpectralFrequencyMask>(s.n, s.t, s.rng);
  const std::vector<int> members = sigma.members();
  ASSERT_FALSE(members.empty());
  const int k = members[0] % s.n;
  const int c = members[0] / s.n;
  const Signal atom = s.domain.U().col(k) * s.domain.frame().matrix().col(c).transpose();
  EXPECT_LE((apply_sf_limit(s.domain, atom, sigma) - atom).norm(), 1e-10);
  const Signal f = random_signal(s.n, s.t, s.rng);
  EXPECT_LE((apply_sf_limit(s.domain, f, SpectralFrequencyMask::full(s.n, s.t)) - f).norm(), 1e-12);
  EXPECT_LE(apply_sf_limit(s.domain, f, sigma).norm(), f.norm() + 1e-12);
}

TEST(SfLimit, MatchesDenseProjector) {
  Small s;
  const auto sigma = random_mask<SpectralFrequencyMask>(s.n, s.t, s.rng);
  const Signal f = random_signal(s.n, s.t, s.rng);
  const Eigen::MatrixXd p = dense_sf_projector(s.domain, sigma);
  EXPECT_LE((vec(apply_sf_limit(s.domain, f, sigma)) - p * vec(f)).norm(), 1e-12);
}

TEST(Spread, VertexTime) {
  Small s;
  const auto m = random_mask<VertexTimeMask>(s.n, s.t, s.rng);
  const Signal f = random_signal(s.n, s.t, s.rng);
  EXPECT_NEAR(vt_spread(apply_vt_limit(f, m), m), 1.0, 1e-15);
  EXPECT_NEAR(vt_spread(apply_vt_limit(f, m.complement()), m), 0.0, 1e-15);
  Signal half = Signal::Zero(s.n, s.t);
  half(0, 0) = 1.0;
  half(1, 0) = -1.0;
  VertexTimeMask one = VertexTimeMask::empty(s.n, s.t);
  one.mask(0, 0) = true;
  EXPECT_DOUBLE_EQ(vt_spread(half, one), 0.5);
  EXPECT_THROW(vt_spread(Signal::Zero(s.n, s.t), m), std::invalid_argument);
}

TEST(Spread, SpectralFrequencyTwoPaths) {
  Small s;
  const auto sigma = random_mask<SpectralFrequencyMask>(s.n, s.t, s.rng);
  const Signal f = random_signal(s.n, s.t, s.rng);
  const double via_limit = apply_sf_limit(s.domain, f, sigma).squaredNorm() / f.squaredNorm();
  EXPECT_NEAR(sf_spread(s.domain, f, sigma), via_limit, 1e-10);
  const Signal band = apply_sf_limit(s.domain, f, sigma);
  EXPECT_NEAR(sf_spread(s.domain, band, sigma), 1.0, 1e-12);
  EXPECT_NEAR(sf_spread(s.domain, apply_sf_limit(s.domain, f, sigma.complement()), sigma), 0.0, 1e-12);
}

TEST(RestrictedOperator, FullAndEmpty) {
  Small s;
  const auto sigma = random_mask<SpectralFrequencyMask>(s.n, s.t, s.rng);
  const int d = sigma.count();
  const Eigen::MatrixXd id = restricted_operator(s.domain, VertexTimeMask::full(s.n, s.t), sigma);
  EXPECT_LE((id - Eigen::MatrixXd::Identity(d, d)).norm(), 1e-12);
  const Eigen::MatrixXd zero = restricted_operator(s.domain, VertexTimeMask::empty(s.n, s.t), sigma);
  EXPECT_EQ(zero.norm(), 0.0);
  const BandlimitedBasis b = bandlimited_basis(s.domain, sigma);
  EXPECT_LE((b.columns.transpose() * b.columns - Eigen::MatrixXd::Identity(d, d)).norm(), 1e-12);
}

TEST(RestrictedOperator, TinyPathMatchesDenseOperator) {
  // N = 3 path, T_g = 4, full band, S = vertex 0 over the first half.
  const JointDomain domain(path_graph(3), TimeGrid(1.0, 4));
  const VertexTimeMask s = VertexTimeMask::separable(3, {0}, domain.grid(), {0.25, 0.5});
  EXPECT_EQ(s.count(), 2);
  const SpectralFrequencyMask sigma = SpectralFrequencyMask::full(3, 4);
  const Eigen::MatrixXd m = restricted_operator(domain, s, sigma);
  const Eigen::MatrixXd ps = dense_vt_projector(s);
  const Eigen::MatrixXd psig = dense_sf_projector(domain, sigma);
  const Eigen::MatrixXd dense = psig * ps * psig;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(m), b(dense);
  EXPECT_LE((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(LambdaMax, Basics) {
  EXPECT_NEAR(lambda_max(Eigen::MatrixXd::Identity(4, 4)), 1.0, 1e-15);
  EXPECT_EQ(lambda_max(Eigen::MatrixXd::Zero(4, 4)), 0.0);
  EXPECT_EQ(lambda_max(Eigen::MatrixXd()), 0.0);
}

TEST(LambdaMax, ProductSidesAgree) {
  Small s;
  for (int trial = 0; trial < 5; ++trial) {
    const auto m = random_mask<VertexTimeMask>(s.n, s.t, s.rng, 0.2 + 0.15 * trial);
    const auto sigma = random_mask<SpectralFrequencyMask>(s.n, s.t, s.rng, 0.8 - 0.15 * trial);
    const Eigen::MatrixXd dense =
        dense_sf_projector(s.domain, sigma) * dense_vt_projector(m) * dense_sf_projector(s.domain, sigma);
    EXPECT_NEAR(lambda_max_product(s.domain, m, sigma), lambda_max(0.5 * (dense + dense.transpose())), 1e-10);
  }
}

TEST(LambdaMax, SeparableIsProductOfFactors) {
  std::mt19937_64 rng(23);
  const Graph g = random_graph(6, rng);
  const TimeGrid grid(1.0, 12);
  const JointDomain domain(g, grid);
  const std::vector<int> vertices = {1, 2, 4};
  const std::vector<int> spectral = {0, 1, 2};
  const TimeInterval interval{0.4, 0.45};
  const FrequencyBand band(0.0, 2 * std::numbers::pi * 2);
  const VertexTimeMask s = VertexTimeMask::separable(6, vertices, grid, interval);
  const SpectralFrequencyMask sigma = SpectralFrequencyMask::separable(domain, spectral, band);
  // Graph factor: U_W'^T P_V' U_W'. Time factor: F_Omega'^T P_T' F_Omega'.
  const Eigen::MatrixXd& u = domain.U();
  Eigen::MatrixXd uw(6, 3);
  for (int i = 0; i < 3; ++i) uw.col(i) = u.col(spectral[i]);
  Eigen::VectorXd pv = Eigen::VectorXd::Zero(6);
  for (int v : vertices) pv(v) = 1.0;
  const double graph_part = lambda_max(uw.transpose() * pv.asDiagonal() * uw);
  const std::vector<int> cols = domain.frame().band_columns(band);
  Eigen::MatrixXd fo(12, cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) fo.col(i) = domain.frame().matrix().col(cols[i]);
  const double time_part = lambda_max(fo.transpose() * interval_indicator(grid, interval).asDiagonal() * fo);
  EXPECT_NEAR(lambda_max(restricted_operator(domain, s, sigma)), graph_part * time_part, 1e-9);
  EXPECT_NEAR(lambda_max_product(domain, s, sigma), graph_part * time_part, 1e-9);
}

TEST(Masks, SeparableMembershipAndErrors) {
  const TimeGrid grid(1.0, 8);
  const VertexTimeMask s = VertexTimeMask::separable(3, {2}, grid, {0.5, 0.25});
  EXPECT_EQ(s.count(), 2);
  EXPECT_TRUE(s.mask(2, 3));
  EXPECT_TRUE(s.mask(2, 4));
  EXPECT_THROW(VertexTimeMask::separable(3, {3}, grid, {0.5, 0.25}), std::invalid_argument);
  EXPECT_THROW(SpectralFrequencyMask::separable(3, 8, {0}, {8}), std::invalid_argument);
  const std::vector<int> members = s.members();
  EXPECT_EQ(members, (std::vector<int>{2 + 3 * 3, 2 + 3 * 4}));
}
