#include <gtest/gtest.h>

#include <numbers>

#include "ggsp/dictionary.hpp"
#include "test_support.hpp"

using namespace ggsp;
using namespace ggsp::testing;
using std::numbers::pi;

namespace {

Eigen::MatrixXd dictionary_matrix(const Dictionary& d) {
  const Signal first = d.atom(0);
  Eigen::MatrixXd m(first.size(), d.size());
  for (Eigen::Index c = 0; c < d.size(); ++c) m.col(c) = vec(d.atom(c));
  return m;
}

}  // namespace

TEST(Itersine, Kernel) {
  EXPECT_DOUBLE_EQ(itersine(0.0), 1.0);
  EXPECT_NEAR(itersine(0.5), 0.0, 1e-15);
  EXPECT_EQ(itersine(0.51), 0.0);
  EXPECT_EQ(itersine(-0.7), 0.0);
  EXPECT_NEAR(itersine(0.25), std::sin(0.25 * pi), 1e-15);
  EXPECT_DOUBLE_EQ(itersine(0.3), itersine(-0.3));
  // Partition of unity of the squared translates spaced by 1/2.
  for (double x : {0.05, 0.2, 0.37}) {
    EXPECT_NEAR(itersine(x) * itersine(x) + itersine(x - 0.5) * itersine(x - 0.5), 1.0, 1e-14);
  }
}

TEST(SpectralFilter, EntrywiseOracleOnK2) {
  const LaplacianEigensystem eig = eigendecompose(build_laplacian(path_graph(2)));
  const auto h = [](double x) { return itersine(x - 1.0); };
  const Eigen::MatrixXd atoms = spectral_filter_atoms(eig, h);
  // Eigenvalues {0, 2}: normalized {0, 1}; h = {0, 1}.
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(2, 2);
  for (int k = 0; k < 2; ++k) {
    want += h(eig.eigenvalues(k) / 2.0) * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).transpose();
  }
  EXPECT_LE((atoms - want).norm(), 1e-14);
  EXPECT_NEAR(atoms(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(atoms(0, 1), -0.5, 1e-14);
}

TEST(Jft, CompleteBasisIsOrthonormal) {
  std::mt19937_64 rng(1);
  const JointDomain domain(random_graph(4, rng), TimeGrid(1.0, 9));
  const Dictionary d = build_jft(domain, 4, 4);
  ASSERT_EQ(d.size(), 36);
  const Eigen::MatrixXd m = dictionary_matrix(d);
  EXPECT_LE((m.transpose() * m - Eigen::MatrixXd::Identity(36, 36)).norm(), 1e-10);
  const Signal f = random_signal(4, 9, rng);
  const Eigen::VectorXd coeffs = m.transpose() * vec(f);
  EXPECT_LE((m * coeffs - vec(f)).norm(), 1e-10);
}

TEST(Jft, SingleConstantAtom) {
  std::mt19937_64 rng(2);
  const JointDomain domain(random_graph(5, rng), TimeGrid(1.0, 8));
  const Dictionary d = build_jft(domain, 1, 0);
  ASSERT_EQ(d.size(), 1);
  const Signal a = d.atom(0);
  EXPECT_NEAR(a.norm(), 1.0, 1e-14);
  EXPECT_LE((a.array() - a(0, 0)).abs().maxCoeff(), 1e-14);
  EXPECT_THROW(build_jft(domain, 6, 0), std::invalid_argument);
  EXPECT_THROW(build_jft(domain, 1, 4), std::invalid_argument);
}

TEST(Jft, RandomGramIdentity) {
  std::mt19937_64 rng(3);
  const JointDomain domain(random_graph(7, rng), TimeGrid(2.0, 20));
  for (auto [k, l] : {std::pair{3, 2}, std::pair{7, 5}, std::pair{1, 9}}) {
    const Eigen::MatrixXd m = dictionary_matrix(build_jft(domain, k, l));
    EXPECT_LE((m.transpose() * m - Eigen::MatrixXd::Identity(m.cols(), m.cols())).norm(), 1e-10);
  }
}

TEST(Stvft, AtomsAreFilteredDeltasTimesGabor) {
  std::mt19937_64 rng(4);
  const JointDomain domain(random_graph(5, rng), TimeGrid(1.0, 32));
  StvftParams p;
  p.Q = 2;
  p.tau0 = 0.5;
  p.omega0 = 2 * pi * 4;
  p.rho = 0.1;
  p.max_frequency = 2 * pi * 8;
  const Dictionary d = build_stvft(domain, p);
  const SeparableBlock& b = d.blocks[0];
  // Sine parts of n = 0 vanish and are dropped: 3 centers x (3 freqs x 2 parts - 1).
  EXPECT_EQ(b.n_time(), 3 * 5);
  EXPECT_EQ(d.dropped_atoms, 3 * b.n_graph());
  for (Eigen::Index a = 0; a < b.n_graph(); ++a) {
    const auto [vertex, q] = b.graph_keys[a];
    const Eigen::MatrixXd h = spectral_filter_atoms(domain.eigensystem(),
                                                    [q = q](double x) { return itersine(x - q / 2.0); });
    EXPECT_LE((b.graph.col(a) - h.col(vertex).normalized()).norm(), 1e-12);
  }
  for (Eigen::Index c = 0; c < b.n_time(); ++c) {
    const auto [m, n, part] = b.time_keys[c];
    const Eigen::VectorXcd g = gabor_atom(domain.grid(), m, n, p.tau0, p.omega0, p.rho);
    const Eigen::VectorXd raw = part == 0 ? Eigen::VectorXd(g.real()) : Eigen::VectorXd(g.imag());
    EXPECT_LE((b.time.grid_values.col(c) - raw.normalized()).norm(), 1e-12);
  }
  for (Eigen::Index c = 0; c < d.size(); ++c) EXPECT_NEAR(d.atom(c).norm(), 1.0, 1e-12);
}

TEST(Stvwt, SmallScaleIsDeltaTimesMorlet) {
  std::mt19937_64 rng(5);
  const JointDomain domain(random_graph(4, rng), TimeGrid(1.0, 32));
  StvwtParams p;
  p.scales = {1e-6};
  p.a_list = {0.1};
  p.b_list = {0.5};
  const Dictionary d = build_stvwt(domain, p);
  const SeparableBlock& b = d.blocks[0];
  EXPECT_EQ(b.n_graph(), 4);
  for (int v = 0; v < 4; ++v) {
    EXPECT_LE((b.graph.col(v) - Eigen::VectorXd::Unit(4, v)).norm(), 1e-6);
  }
  const Eigen::VectorXcd w = morlet_atom(domain.grid(), 0.1, 0.5, p.omega0);
  EXPECT_LE((b.time.grid_values.col(0) - Eigen::VectorXd(w.real()).normalized()).norm(), 1e-12);
  EXPECT_LE((b.time.grid_values.col(1) - Eigen::VectorXd(w.imag()).normalized()).norm(), 1e-12);
}

TEST(Stvwt, SingleVertexIsMorletDictionary) {
  const JointDomain domain(single_vertex_graph(), TimeGrid(1.0, 32));
  StvwtParams p;
  p.scales = {2.0};
  p.a_list = {0.1, 0.2};
  const Dictionary d = build_stvwt(domain, p);
  EXPECT_EQ(d.blocks[0].n_graph(), 1);
  EXPECT_NEAR(std::abs(d.blocks[0].graph(0, 0)), 1.0, 1e-15);
  // Default shifts b = 0, a, 2a, ... <= delta.
  EXPECT_EQ(d.size() + d.dropped_atoms, 2 * (11 + 6));
}

TEST(Dictionary, IndexMapRoundTrip) {
  std::mt19937_64 rng(6);
  const JointDomain domain(random_graph(5, rng), TimeGrid(1.0, 16));
  StvwtParams p;
  p.scales = {2.0, 4.0};
  p.a_list = {0.25};
  const Dictionary d = build_stvwt(domain, p);
  for (Eigen::Index c = 0; c < d.size(); ++c) {
    const AtomKey k = d.key(c);
    EXPECT_EQ(d.column(k), c);
  }
  EXPECT_THROW(d.key(d.size()), std::out_of_range);
  EXPECT_THROW(d.column({0, 99, 0}), std::out_of_range);
  EXPECT_EQ(parse_dictionary_kind(to_string(DictionaryKind::STVWT)), DictionaryKind::STVWT);
  EXPECT_THROW(parse_dictionary_kind("DCT"), std::invalid_argument);
}

TEST(EvaluateAtSamples, GridGatherRepeatAndRange) {
  std::mt19937_64 rng(7);
  const JointDomain domain(random_graph(4, rng), TimeGrid(1.0, 10));
  const Dictionary d = build_jft(domain, 3, 2);
  const std::vector<SamplePoint> pts = {{1, domain.grid().point(3)}, {1, domain.grid().point(3)}, {3, domain.grid().point(9)}};
  const Eigen::MatrixXd m = evaluate_at_samples(domain, d, pts);
  EXPECT_EQ((m.row(0) - m.row(1)).norm(), 0.0);
  for (Eigen::Index c = 0; c < d.size(); ++c) {
    EXPECT_EQ(m(0, c), d.atom(c)(1, 3));
    EXPECT_EQ(m(2, c), d.atom(c)(3, 9));
  }
  EXPECT_THROW(evaluate_at_samples(domain, d, {{4, 0.5}}), std::out_of_range);
  EXPECT_THROW(evaluate_at_samples(domain, d, {{0, 1.5}}), std::out_of_range);
  EXPECT_THROW(evaluate_at_samples(domain, d, {{0, -0.1}}), std::out_of_range);
}

TEST(Jecd, OffGridIsAnalyticBandExpansion) {
  std::mt19937_64 rng(8);
  const TimeGrid grid(1.0, 64);
  const JointDomain domain(random_graph(6, rng), grid);
  const JointBand band{{0, 1, 2}, FrequencyBand(0.0, 2 * pi * 5)};
  const Dictionary d = build_jecd(domain, {{{0, 1, 2}, {0.3, 0.4}, 0, 0}, {{3, 4, 5}, {0.7, 0.3}, 0, 0}}, band);
  const std::vector<int> cols = domain.frame().band_columns(band.frequency);
  // Each atom is band-limited, so its continuous extension is the frame
  // expansion of its grid samples projected on the band columns.
  for (Eigen::Index c = 0; c < d.size(); c += 5) {
    const Signal a = d.atom(c);
    const Eigen::MatrixXd coeff = a * domain.frame().matrix();
    for (double t : {0.0101, 0.33333, 0.9876}) {
      for (int v = 0; v < 6; ++v) {
        double want = 0.0;
        for (int col : cols) {
          const int k = (col + 1) / 2;
          const double amp = col == 0 ? 1.0 / 8.0 : std::sqrt(2.0 / 64.0);
          want += coeff(v, col) * (col == 0 ? amp : (col % 2 ? amp * std::cos(2 * pi * k * t) : amp * std::sin(2 * pi * k * t)));
        }
        const Eigen::MatrixXd row = evaluate_at_samples(domain, d, {{v, t}});
        EXPECT_NEAR(row(0, c), want, 1e-9);
      }
    }
    // Out-of-band content is zero.
    Eigen::MatrixXd residual = coeff;
    for (int col : cols) residual.col(col).setZero();
    EXPECT_LE(residual.norm(), 1e-10);
  }
}

TEST(Jecd, FullSetGivesJointFourierAtoms) {
  std::mt19937_64 rng(9);
  const JointDomain domain(random_graph(4, rng), TimeGrid(1.0, 16));
  const JointBand band{{0, 1, 2, 3}, FrequencyBand(0.0, 2 * pi * 2)};
  const int n_band = static_cast<int>(domain.frame().band_columns(band.frequency).size());
  const Dictionary d = build_jecd(domain, {{{0, 1, 2, 3}, {0.5, 1.0}, 4, n_band}}, band);
  ASSERT_EQ(d.size(), 4 * n_band);
  const Eigen::MatrixXd m = dictionary_matrix(d);
  EXPECT_LE((m.transpose() * m - Eigen::MatrixXd::Identity(m.cols(), m.cols())).norm(), 1e-10);
  const SpectralFrequencyMask sigma = SpectralFrequencyMask::separable(domain, band.spectral, band.frequency);
  for (Eigen::Index c = 0; c < d.size(); ++c) EXPECT_NEAR(sf_spread(domain, d.atom(c), sigma), 1.0, 1e-10);
}

TEST(Jecd, SingleVertexIsProlate) {
  const JointDomain domain(single_vertex_graph(), TimeGrid(1.0, 64));
  const JointBand band{{0}, FrequencyBand(0.0, 2 * pi * 6)};
  const Dictionary d = build_jecd(domain, {{{0}, {0.4, 0.3}, 1, 6}}, band);
  const ProlateBasis p = prolate_basis(domain.frame(), {0.4, 0.3}, band.frequency, 6);
  for (Eigen::Index c = 0; c < 6; ++c) {
    EXPECT_LE((d.atom(c).row(0).transpose() - p.atoms.col(c)).norm(), 1e-10);
  }
}

TEST(Jecd, DisjointIntervalsMatchIndependentEigensolves) {
  std::mt19937_64 rng(10);
  const JointDomain domain(random_graph(5, rng), TimeGrid(1.0, 64));
  const JointBand band{{0, 1}, FrequencyBand(0.0, 2 * pi * 4)};
  const std::vector<int> v = {0, 1, 2};
  const Dictionary d = build_jecd(domain, {{v, {0.2, 0.3}, 2, 4}, {v, {0.7, 0.3}, 2, 4}}, band);
  const FourierFrame& f = domain.frame();
  for (int blk = 0; blk < 2; ++blk) {
    const double center = blk == 0 ? 0.2 : 0.7;
    // Oracle: dense Pi_band Pi_T Pi_band on the grid.
    const std::vector<int> cols = f.band_columns(band.frequency);
    Eigen::MatrixXd b(64, cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) b.col(i) = f.matrix().col(cols[i]);
    const Eigen::MatrixXd op = b * b.transpose() * interval_indicator(domain.grid(), {center, 0.3}).asDiagonal() * b * b.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(op);
    const Eigen::MatrixXd top = s.eigenvectors().rightCols(4);
    EXPECT_LE(subspace_distance(d.blocks[blk].time.grid_values, top), 1e-8);
  }
  // Same graph atoms, time atoms of the second block are a shifted family.
  EXPECT_LE((d.blocks[0].graph - d.blocks[1].graph).norm(), 1e-14);
}

TEST(Jecd, ReferenceAlignsSigns) {
  std::mt19937_64 rng(11);
  const JointDomain domain(random_graph(5, rng), TimeGrid(1.0, 64));
  const JecdBuilder builder(domain, {{{0, 1}, {0.4, 0.3}, 0, 0}}, {{0, 1}, FrequencyBand(0.0, 2 * pi * 4)}, IntervalMask::Exact);
  const Dictionary base = builder.build();
  const Dictionary moved = builder.build({{0.41, 0.31}}, &base);
  const SeparableBlock& a = base.blocks[0];
  const SeparableBlock& b = moved.blocks[0];
  for (Eigen::Index c = 0; c < a.n_time(); ++c) {
    EXPECT_GT(a.time.grid_values.col(c).dot(b.time.grid_values.col(c)), 0.0);
  }
  EXPECT_THROW(JecdBuilder(domain, {{{0}, {1.5, 0.2}, 0, 0}}, {{0}, FrequencyBand(0.0, 10.0)}), std::invalid_argument);
  EXPECT_THROW(JecdBuilder(domain, {{{0}, {0.5, 0.2}, 3, 0}}, {{0, 1}, FrequencyBand(0.0, 10.0)}), std::invalid_argument);
}

TEST(DefaultTimeAtoms, Formula) {
  EXPECT_EQ(default_time_atoms(0.26, FrequencyBand(0.0, 2 * pi * 10), 21), 10);
  EXPECT_EQ(default_time_atoms(1.0, FrequencyBand(0.0, 2 * pi * 10), 21), 21);
  EXPECT_EQ(default_time_atoms(0.0, FrequencyBand(0.0, 2 * pi * 10), 3), 3);
}

TEST(SpectralClusters, PartitionAndDeterminism) {
  std::mt19937_64 rng(12);
  const LaplacianEigensystem eig = eigendecompose(build_laplacian(random_graph(20, rng)));
  const auto a = spectral_clusters(eig, 4, 3);
  const auto b = spectral_clusters(eig, 4, 3);
  EXPECT_EQ(a, b);
  std::vector<int> seen(20, 0);
  for (const auto& g : a) {
    EXPECT_FALSE(g.empty());
    for (int v : g) ++seen[v];
  }
  for (int c : seen) EXPECT_EQ(c, 1);
}

TEST(DictionaryMetadata, JsonRoundTrip) {
  DictionaryMetadata m;
  m.kind = DictionaryKind::JECD;
  m.subsets = {{{0, 2}, {0.3, 0.2}, 2, 5}};
  m.band = {{0, 1}, FrequencyBand(0.0, 12.5)};
  m.jft_K = 3;
  m.stvwt.b_list = {0.1, 0.4};
  m.atom_count = 10;
  EXPECT_EQ(DictionaryMetadata::from_json(m.to_json()), m);
}
