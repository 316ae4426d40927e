#include "ggsp/concentration.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ggsp {

namespace {

void descending(const Eigen::MatrixXd& m, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("concentration: eigensolver failed");
  values = solver.eigenvalues().reverse();
  vectors = solver.eigenvectors().rowwise().reverse();
}

// Applies the first-nonzero-positive convention to vectorized atoms and
// mirrors the flips on their coordinates.
void fix_signs(Eigen::MatrixXd& vectorized, Eigen::MatrixXd& coordinates) {
  Eigen::MatrixXd fixed = vectorized;
  fix_column_signs(fixed);
  for (Eigen::Index i = 0; i < vectorized.cols(); ++i) {
    if (fixed.col(i).dot(vectorized.col(i)) < 0.0) {
      vectorized.col(i) *= -1.0;
      coordinates.col(i) *= -1.0;
    }
  }
}

std::vector<Signal> unpack(const Eigen::MatrixXd& vectorized, int n, int t) {
  std::vector<Signal> atoms;
  atoms.reserve(static_cast<std::size_t>(vectorized.cols()));
  for (Eigen::Index i = 0; i < vectorized.cols(); ++i) {
    atoms.emplace_back(Eigen::Map<const Eigen::MatrixXd>(vectorized.col(i).data(), n, t));
  }
  return atoms;
}

}  // namespace

ConcentratedBasis max_concentrated_basis(const JointDomain& domain, const VertexTimeMask& s,
                                         const SpectralFrequencyMask& sigma, int k) {
  const BandlimitedBasis basis = bandlimited_basis(domain, sigma);
  if (k < 0 || k > basis.dimension()) {
    throw std::invalid_argument("max_concentrated_basis: k = " + std::to_string(k) +
                                " exceeds the band dimension " +
                                std::to_string(basis.dimension()));
  }
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  descending(restricted_operator(basis, s), values, vectors);

  ConcentratedBasis out;
  out.mask = s;
  out.band = sigma;
  out.coordinates = vectors.leftCols(k);
  Eigen::MatrixXd vectorized = basis.columns * out.coordinates;
  fix_signs(vectorized, out.coordinates);
  out.atoms = unpack(vectorized, domain.n_vertices(), domain.n_times());
  out.concentrations = values.head(k).cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

DualOrthogonality dual_orthogonality_check(const ConcentratedBasis& basis) {
  DualOrthogonality res;
  const std::size_t k = basis.atoms.size();
  std::vector<Signal> limited;
  limited.reserve(k);
  for (const Signal& a : basis.atoms) limited.push_back(apply_vt_limit(a, basis.mask));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double ip = (basis.atoms[i].array() * limited[j].array()).sum();
      if (i == j) {
        res.diagonal = std::max(res.diagonal, std::abs(ip - basis.concentrations(i)));
      } else {
        res.off_diagonal = std::max(res.off_diagonal, std::abs(ip));
      }
    }
  }
  return res;
}

GraphConcentratedBasis graph_concentrated_basis(const LaplacianEigensystem& eig,
                                                const std::vector<int>& vertices,
                                                const std::vector<int>& spectral, int k) {
  const int n = static_cast<int>(eig.size());
  const int w = static_cast<int>(spectral.size());
  if (k < 0 || k > w) {
    throw std::invalid_argument("graph_concentrated_basis: k = " + std::to_string(k) +
                                " exceeds rank(Pi_W') = " + std::to_string(w));
  }
  Eigen::MatrixXd uw(n, w);
  for (int i = 0; i < w; ++i) {
    if (spectral[i] < 0 || spectral[i] >= n) {
      throw std::invalid_argument("graph_concentrated_basis: spectral index out of range");
    }
    uw.col(i) = eig.eigenvectors.col(spectral[i]);
  }
  Eigen::VectorXd in_set = Eigen::VectorXd::Zero(n);
  for (int v : vertices) {
    if (v < 0 || v >= n) throw std::invalid_argument("graph_concentrated_basis: vertex out of range");
    in_set(v) = 1.0;
  }
  Eigen::MatrixXd gram = uw.transpose() * in_set.asDiagonal() * uw;
  gram = 0.5 * (gram + gram.transpose());
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  descending(gram, values, vectors);

  GraphConcentratedBasis out;
  out.spectral = spectral;
  out.coefficients = vectors.leftCols(k);
  out.atoms = uw * out.coefficients;
  fix_signs(out.atoms, out.coefficients);
  out.concentrations = values.head(k).cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

ConcentratedBasis separable_concentrated_basis(const JointDomain& domain,
                                               const std::vector<int>& vertices,
                                               const TimeInterval& interval,
                                               const std::vector<int>& spectral,
                                               const FrequencyBand& band, int k,
                                               IntervalMask mode) {
  const int n = domain.n_vertices();
  const int t = domain.n_times();
  const std::vector<int> columns = domain.frame().band_columns(band);
  const int gw = static_cast<int>(spectral.size());
  const int tw = static_cast<int>(columns.size());
  if (k < 0 || k > gw * tw) {
    throw std::invalid_argument("separable_concentrated_basis: k = " + std::to_string(k) +
                                " exceeds the band dimension " + std::to_string(gw * tw));
  }
  const GraphConcentratedBasis g = graph_concentrated_basis(domain.eigensystem(), vertices, spectral, gw);
  const ProlateBasis p = prolate_basis(domain.frame(), interval, columns, tw, mode);

  // Product eigenvalues, sorted descending with ties broken by (graph, time) index.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(gw * tw));
  for (int a = 0; a < gw; ++a) {
    for (int b = 0; b < tw; ++b) pairs.emplace_back(a, b);
  }
  auto value = [&](const std::pair<int, int>& ab) {
    return g.concentrations(ab.first) * p.concentrations(ab.second);
  };
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const auto& x, const auto& y) { return value(x) > value(y); });

  SpectralFrequencyMask sigma = SpectralFrequencyMask::separable(n, t, spectral, columns);
  const std::vector<int> members = sigma.members();
  std::vector<int> graph_pos(n, -1), time_pos(t, -1);
  for (int a = 0; a < gw; ++a) graph_pos[spectral[a]] = a;
  for (int b = 0; b < tw; ++b) time_pos[columns[b]] = b;

  ConcentratedBasis out;
  out.mask = VertexTimeMask::separable(n, vertices, domain.grid(), interval);
  out.band = std::move(sigma);
  out.concentrations.resize(k);
  out.coordinates.resize(static_cast<Eigen::Index>(members.size()), k);
  out.atoms.reserve(k);
  for (int i = 0; i < k; ++i) {
    const auto [a, b] = pairs[i];
    out.concentrations(i) = value(pairs[i]);
    for (std::size_t d = 0; d < members.size(); ++d) {
      const int row = graph_pos[members[d] % n];
      const int col = time_pos[members[d] / n];
      out.coordinates(static_cast<Eigen::Index>(d), i) =
          g.coefficients(row, a) * p.coefficients(col, b);
    }
    out.atoms.push_back(g.atoms.col(a) * p.atoms.col(b).transpose());
  }
  return out;
}

}  // namespace ggsp
