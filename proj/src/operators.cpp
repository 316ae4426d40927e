#include "ggsp/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ggsp {

namespace {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

std::vector<int> true_indices(const BoolArray& mask) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(mask.count()));
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    if (mask(i)) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

// Rows of the band basis restricted to the members of S: |S| x D.
Eigen::MatrixXd restricted_rows(const JointDomain& domain, const std::vector<int>& vt_members,
                                const std::vector<int>& sf_members) {
  const int n = domain.n_vertices();
  const Eigen::MatrixXd& u = domain.U();
  const Eigen::MatrixXd& f = domain.frame().matrix();
  Eigen::MatrixXd rows(vt_members.size(), sf_members.size());
  for (std::size_t d = 0; d < sf_members.size(); ++d) {
    const int k = sf_members[d] % n;
    const int c = sf_members[d] / n;
    for (std::size_t r = 0; r < vt_members.size(); ++r) {
      const int v = vt_members[r] % n;
      const int j = vt_members[r] / n;
      rows(r, d) = u(v, k) * f(j, c);
    }
  }
  return rows;
}

}  // namespace

JointDomain::JointDomain(LaplacianEigensystem eig, const TimeGrid& grid)
    : eig_(std::move(eig)), frame_(grid) {}

JointDomain::JointDomain(const Graph& graph, const TimeGrid& grid)
    : JointDomain(eigendecompose(build_laplacian(graph)), grid) {}

void JointDomain::check(const Signal& f, const char* where) const {
  if (f.rows() != n_vertices() || f.cols() != n_times()) {
    throw std::invalid_argument(std::string(where) + ": signal is " + std::to_string(f.rows()) +
                                "x" + std::to_string(f.cols()) + " but the domain is " +
                                std::to_string(n_vertices()) + "x" + std::to_string(n_times()));
  }
}

Eigen::MatrixXd JointDomain::jft(const Signal& f) const {
  check(f, "jft");
  return U().transpose() * f * frame_.matrix();
}

Signal JointDomain::ijft(const Eigen::MatrixXd& coefficients) const {
  check(coefficients, "ijft");
  return U() * coefficients * frame_.matrix().transpose();
}

VertexTimeMask VertexTimeMask::full(int n_vertices, int n_times) {
  return {BoolArray::Constant(n_vertices, n_times, true)};
}

VertexTimeMask VertexTimeMask::empty(int n_vertices, int n_times) {
  return {BoolArray::Constant(n_vertices, n_times, false)};
}

VertexTimeMask VertexTimeMask::separable(int n_vertices, const std::vector<int>& vertices,
                                         const TimeGrid& grid, const TimeInterval& interval) {
  VertexTimeMask s = empty(n_vertices, grid.n_samples);
  const Eigen::VectorXd in_interval = interval_indicator(grid, interval);
  for (int v : vertices) {
    if (v < 0 || v >= n_vertices) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " outside the graph");
    }
    for (int j = 0; j < grid.n_samples; ++j) s.mask(v, j) = in_interval(j) > 0.0;
  }
  return s;
}

VertexTimeMask VertexTimeMask::complement() const { return {!mask}; }

std::vector<int> VertexTimeMask::members() const { return true_indices(mask); }

SpectralFrequencyMask SpectralFrequencyMask::full(int n_vertices, int n_times) {
  return {BoolArray::Constant(n_vertices, n_times, true)};
}

SpectralFrequencyMask SpectralFrequencyMask::empty(int n_vertices, int n_times) {
  return {BoolArray::Constant(n_vertices, n_times, false)};
}

SpectralFrequencyMask SpectralFrequencyMask::separable(int n_vertices, int n_times,
                                                       const std::vector<int>& spectral,
                                                       const std::vector<int>& frequency_columns) {
  SpectralFrequencyMask sigma = empty(n_vertices, n_times);
  for (int k : spectral) {
    if (k < 0 || k >= n_vertices) {
      throw std::invalid_argument("spectral index " + std::to_string(k) + " out of range");
    }
    for (int c : frequency_columns) {
      if (c < 0 || c >= n_times) {
        throw std::invalid_argument("frequency column " + std::to_string(c) + " out of range");
      }
      sigma.mask(k, c) = true;
    }
  }
  return sigma;
}

SpectralFrequencyMask SpectralFrequencyMask::separable(const JointDomain& domain,
                                                       const std::vector<int>& spectral,
                                                       const FrequencyBand& band) {
  return separable(domain.n_vertices(), domain.n_times(), spectral,
                   domain.frame().band_columns(band));
}

SpectralFrequencyMask SpectralFrequencyMask::complement() const { return {!mask}; }

std::vector<int> SpectralFrequencyMask::members() const { return true_indices(mask); }

Signal apply_vt_limit(const Signal& f, const VertexTimeMask& s) {
  if (f.rows() != s.rows() || f.cols() != s.cols()) {
    throw std::invalid_argument("apply_vt_limit: mask and signal dimensions differ");
  }
  return s.mask.select(f, 0.0);
}

Signal apply_sf_limit(const JointDomain& domain, const Signal& f, const SpectralFrequencyMask& sigma) {
  domain.check(f, "apply_sf_limit");
  if (sigma.mask.rows() != f.rows() || sigma.mask.cols() != f.cols()) {
    throw std::invalid_argument("apply_sf_limit: band mask and signal dimensions differ");
  }
  const Eigen::MatrixXd c = domain.jft(f);
  return domain.ijft(sigma.mask.select(c, 0.0));
}

double vt_spread(const Signal& f, const VertexTimeMask& s) {
  const double total = f.squaredNorm();
  if (!(total > 0.0)) throw std::invalid_argument("vt_spread: signal has zero norm");
  return apply_vt_limit(f, s).squaredNorm() / total;
}

double sf_spread(const JointDomain& domain, const Signal& f, const SpectralFrequencyMask& sigma) {
  const double total = f.squaredNorm();
  if (!(total > 0.0)) throw std::invalid_argument("sf_spread: signal has zero norm");
  const Eigen::MatrixXd c = domain.jft(f);
  if (sigma.mask.rows() != c.rows() || sigma.mask.cols() != c.cols()) {
    throw std::invalid_argument("sf_spread: band mask and signal dimensions differ");
  }
  return sigma.mask.select(c, 0.0).squaredNorm() / c.squaredNorm();
}

Signal BandlimitedBasis::lift(const JointDomain& domain, const Eigen::VectorXd& coordinates) const {
  const Eigen::VectorXd v = columns * coordinates;
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), domain.n_vertices(), domain.n_times());
}

BandlimitedBasis bandlimited_basis(const JointDomain& domain, const SpectralFrequencyMask& sigma,
                                   int budget) {
  BandlimitedBasis basis;
  basis.members = sigma.members();
  if (static_cast<int>(basis.members.size()) > budget) {
    throw std::invalid_argument("band dimension " + std::to_string(basis.members.size()) +
                                " exceeds the budget of " + std::to_string(budget));
  }
  std::vector<int> all(domain.dimension());
  for (int i = 0; i < domain.dimension(); ++i) all[i] = i;
  basis.columns = restricted_rows(domain, all, basis.members);
  return basis;
}

Eigen::MatrixXd restricted_operator(const BandlimitedBasis& basis, const VertexTimeMask& s) {
  if (basis.columns.rows() != s.mask.size()) {
    throw std::invalid_argument("restricted_operator: mask does not match the basis domain");
  }
  const std::vector<int> rows = s.members();
  Eigen::MatrixXd bs(rows.size(), basis.dimension());
  for (std::size_t r = 0; r < rows.size(); ++r) bs.row(r) = basis.columns.row(rows[r]);
  Eigen::MatrixXd m = bs.transpose() * bs;
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd restricted_operator(const JointDomain& domain, const VertexTimeMask& s,
                                    const SpectralFrequencyMask& sigma, int budget) {
  const std::vector<int> sf = sigma.members();
  if (static_cast<int>(sf.size()) > budget) {
    throw std::invalid_argument("band dimension " + std::to_string(sf.size()) +
                                " exceeds the budget of " + std::to_string(budget));
  }
  const Eigen::MatrixXd bs = restricted_rows(domain, s.members(), sf);
  Eigen::MatrixXd m = bs.transpose() * bs;
  return 0.5 * (m + m.transpose());
}

double lambda_max(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("lambda_max: eigensolver failed");
  return solver.eigenvalues()(m.rows() - 1);
}

double lambda_max_product(const JointDomain& domain, const VertexTimeMask& s,
                          const SpectralFrequencyMask& sigma) {
  const std::vector<int> vt = s.members();
  const std::vector<int> sf = sigma.members();
  if (vt.empty() || sf.empty()) return 0.0;
  if (static_cast<int>(std::min(vt.size(), sf.size())) > kDefaultBandBudget) {
    throw std::invalid_argument("lambda_max_product: both sides exceed the dense budget");
  }
  const Eigen::MatrixXd bs = restricted_rows(domain, vt, sf);
  const Eigen::MatrixXd gram = vt.size() < sf.size() ? Eigen::MatrixXd(bs * bs.transpose())
                                                     : Eigen::MatrixXd(bs.transpose() * bs);
  return lambda_max(0.5 * (gram + gram.transpose()));
}

}  // namespace ggsp
