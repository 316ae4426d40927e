#include "ggsp/time_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ggsp/graph.hpp"

namespace ggsp {

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of cos(w t) (is_sine = false) or sin(w t) over [lo, hi].
double trig_integral(bool is_sine, double w, double lo, double hi) {
  if (w == 0.0) return is_sine ? 0.0 : hi - lo;
  if (is_sine) return (std::cos(w * lo) - std::cos(w * hi)) / w;
  return (std::sin(w * hi) - std::sin(w * lo)) / w;
}

// Symmetric eigensolve returning eigenpairs sorted by decreasing eigenvalue.
void descending_eigensystem(const Eigen::MatrixXd& m, Eigen::VectorXd& values,
                            Eigen::MatrixXd& vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  values = solver.eigenvalues().reverse();
  vectors = solver.eigenvectors().rowwise().reverse();
}

}  // namespace

TimeGrid::TimeGrid(double delta_, int n_samples_) : delta(delta_), n_samples(n_samples_) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("time grid: delta must be positive");
  }
  if (n_samples <= 0) throw std::invalid_argument("time grid: n_samples must be positive");
}

Eigen::VectorXd TimeGrid::points() const {
  Eigen::VectorXd t(n_samples);
  for (int j = 0; j < n_samples; ++j) t(j) = point(j);
  return t;
}

int TimeGrid::grid_index(double t) const {
  const double pos = t / spacing() - 0.5;
  const double j = std::round(pos);
  if (j < 0 || j >= n_samples) return -1;
  if (std::abs(point(static_cast<int>(j)) - t) <= 1e-12 * delta) return static_cast<int>(j);
  return -1;
}

FrequencyBand::FrequencyBand(double center_, double half_width_)
    : center(center_), half_width(half_width_) {
  if (!(half_width > 0.0)) throw std::invalid_argument("frequency band: half width must be positive");
}

FourierFrame::FourierFrame(const TimeGrid& grid) : grid_(grid), matrix_(grid.n_samples, grid.n_samples) {
  for (int j = 0; j < grid_.n_samples; ++j) {
    const double t = grid_.point(j);
    for (int c = 0; c < grid_.n_samples; ++c) matrix_(j, c) = evaluate(c, t);
  }
}

int FourierFrame::harmonic(int column) const { return (column + 1) / 2; }

bool FourierFrame::is_sine(int column) const {
  if (column == 0) return false;
  if (2 * harmonic(column) == grid_.n_samples) return true;
  return column % 2 == 0;
}

double FourierFrame::angular_frequency(int column) const {
  return 2.0 * kPi * harmonic(column) / grid_.delta;
}

double frame_value(const TimeGrid& grid, int column, double t) {
  const int n = grid.n_samples;
  if (column == 0) return 1.0 / std::sqrt(static_cast<double>(n));
  const int k = (column + 1) / 2;
  const double arg = 2.0 * kPi * k * t / grid.delta;
  if (2 * k == n) return std::sin(arg) / std::sqrt(static_cast<double>(n));
  const double scale = std::sqrt(2.0 / n);
  return column % 2 == 0 ? scale * std::sin(arg) : scale * std::cos(arg);
}

double FourierFrame::evaluate(int column, double t) const { return frame_value(grid_, column, t); }

Eigen::RowVectorXd frame_row(const TimeGrid& grid, double t, const std::vector<int>& columns) {
  Eigen::RowVectorXd row(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) row(i) = frame_value(grid, columns[i], t);
  return row;
}

Eigen::RowVectorXd FourierFrame::evaluate_row(double t, const std::vector<int>& columns) const {
  return frame_row(grid_, t, columns);
}

std::vector<int> FourierFrame::band_columns(const FrequencyBand& band) const {
  std::vector<int> cols;
  const double tol = 1e-12 * std::max(1.0, std::abs(band.center) + band.half_width);
  for (int c = 0; c < grid_.n_samples; ++c) {
    const double w = angular_frequency(c);
    const double dist = std::min(std::abs(w - band.center), std::abs(-w - band.center));
    if (dist <= band.half_width + tol) cols.push_back(c);
  }
  return cols;
}

std::vector<int> FourierFrame::lowpass_columns(int max_harmonic) const {
  std::vector<int> cols;
  for (int c = 0; c < grid_.n_samples; ++c) {
    if (harmonic(c) <= max_harmonic) cols.push_back(c);
  }
  return cols;
}

Eigen::MatrixXd FourierFrame::interval_gram(const std::vector<int>& columns, double lo,
                                            double hi) const {
  const int n = static_cast<int>(columns.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  lo = std::max(lo, 0.0);
  hi = std::min(hi, grid_.delta);
  if (!(hi > lo)) return g;
  const double total = static_cast<double>(grid_.n_samples);
  auto amplitude = [&](int c) {
    if (c == 0) return 1.0 / std::sqrt(total);
    if (2 * harmonic(c) == grid_.n_samples) return 1.0 / std::sqrt(total);
    return std::sqrt(2.0 / total);
  };
  for (int a = 0; a < n; ++a) {
    const int ca = columns[a];
    const double wa = angular_frequency(ca);
    const bool sa = is_sine(ca);
    for (int b = a; b < n; ++b) {
      const int cb = columns[b];
      const double wb = angular_frequency(cb);
      const bool sb = is_sine(cb);
      const double diff = wa - wb;
      const double sum = wa + wb;
      double value = 0.0;
      if (!sa && !sb) {
        value = 0.5 * (trig_integral(false, diff, lo, hi) + trig_integral(false, sum, lo, hi));
      } else if (sa && sb) {
        value = 0.5 * (trig_integral(false, diff, lo, hi) - trig_integral(false, sum, lo, hi));
      } else if (sa) {
        // sin(wa t) cos(wb t)
        value = 0.5 * (trig_integral(true, sum, lo, hi) + trig_integral(true, diff, lo, hi));
      } else {
        // cos(wa t) sin(wb t)
        value = 0.5 * (trig_integral(true, sum, lo, hi) - trig_integral(true, diff, lo, hi));
      }
      value *= amplitude(ca) * amplitude(cb) * total / grid_.delta;
      g(a, b) = value;
      g(b, a) = value;
    }
  }
  return g;
}

Eigen::VectorXd interval_indicator(const TimeGrid& grid, const TimeInterval& interval) {
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(grid.n_samples);
  if (interval.length <= 0.0) return mask;
  for (int j = 0; j < grid.n_samples; ++j) {
    const double t = grid.point(j);
    if (t >= interval.lo() && t <= interval.hi()) mask(j) = 1.0;
  }
  return mask;
}

Eigen::RowVectorXd FourierBasis::evaluate(double t) const {
  Eigen::RowVectorXd raw(2 * n_harmonics + 1);
  raw(0) = 1.0;
  for (int l = 1; l <= n_harmonics; ++l) {
    const double arg = 2.0 * kPi * l * t / delta;
    raw(2 * l - 1) = std::cos(arg);
    raw(2 * l) = std::sin(arg);
  }
  return raw * transform;
}

FourierBasis fourier_basis(const TimeGrid& grid, int n_harmonics) {
  if (n_harmonics < 0) throw std::invalid_argument("fourier_basis: negative harmonic count");
  const int count = 2 * n_harmonics + 1;
  if (count > grid.n_samples) {
    throw std::invalid_argument("fourier_basis: " + std::to_string(count) +
                                " harmonics exceed grid size " + std::to_string(grid.n_samples));
  }
  FourierBasis basis;
  basis.n_harmonics = n_harmonics;
  basis.delta = grid.delta;
  Eigen::MatrixXd raw(grid.n_samples, count);
  for (int j = 0; j < grid.n_samples; ++j) {
    const double t = grid.point(j);
    raw(j, 0) = 1.0;
    for (int l = 1; l <= n_harmonics; ++l) {
      const double arg = 2.0 * kPi * l * t / grid.delta;
      raw(j, 2 * l - 1) = std::cos(arg);
      raw(j, 2 * l) = std::sin(arg);
    }
  }
  // Modified Gram-Schmidt with one reorthogonalization pass; the transform
  // T satisfies atoms = raw * T.
  Eigen::MatrixXd q = raw;
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(count, count);
  for (int c = 0; c < count; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int p = 0; p < c; ++p) {
        const double r = q.col(p).dot(q.col(c));
        q.col(c) -= r * q.col(p);
        t.col(c) -= r * t.col(p);
      }
    }
    const double norm = q.col(c).norm();
    if (norm < 1e-12) throw std::runtime_error("fourier_basis: harmonics are dependent on this grid");
    q.col(c) /= norm;
    t.col(c) /= norm;
  }
  basis.atoms = std::move(q);
  basis.transform = std::move(t);
  return basis;
}

Eigen::RowVectorXd ProlateBasis::evaluate(const FourierFrame& frame, double t) const {
  return frame.evaluate_row(t, band_columns) * coefficients;
}

ProlateBasis prolate_basis(const FourierFrame& frame, const TimeInterval& interval,
                           const std::vector<int>& band_columns, int n_atoms, IntervalMask mode) {
  const int dim = static_cast<int>(band_columns.size());
  if (n_atoms < 0 || n_atoms > dim) {
    throw std::invalid_argument("prolate_basis: " + std::to_string(n_atoms) +
                                " atoms requested but the band has dimension " +
                                std::to_string(dim));
  }
  Eigen::MatrixXd b(frame.size(), dim);
  for (int i = 0; i < dim; ++i) b.col(i) = frame.matrix().col(band_columns[i]);

  Eigen::MatrixXd gram;
  if (mode == IntervalMask::Midpoint) {
    const Eigen::VectorXd mask = interval_indicator(frame.grid(), interval);
    gram = b.transpose() * mask.asDiagonal() * b;
  } else {
    gram = frame.interval_gram(band_columns, interval.lo(), interval.hi());
  }

  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  descending_eigensystem(gram, values, vectors);

  ProlateBasis basis;
  basis.band_columns = band_columns;
  basis.interval = interval;
  basis.coefficients = vectors.leftCols(n_atoms);
  basis.atoms = b * basis.coefficients;
  // Sign convention is decided on the grid samples, then mirrored on the coefficients.
  Eigen::MatrixXd signed_atoms = basis.atoms;
  fix_column_signs(signed_atoms);
  for (int i = 0; i < n_atoms; ++i) {
    if (signed_atoms.col(i).dot(basis.atoms.col(i)) < 0.0) {
      basis.atoms.col(i) *= -1.0;
      basis.coefficients.col(i) *= -1.0;
    }
  }
  basis.concentrations = values.head(n_atoms).cwiseMax(0.0);
  return basis;
}

ProlateBasis prolate_basis(const FourierFrame& frame, const TimeInterval& interval,
                           const FrequencyBand& band, int n_atoms, IntervalMask mode) {
  ProlateBasis basis = prolate_basis(frame, interval, frame.band_columns(band), n_atoms, mode);
  basis.band = band;
  return basis;
}

std::complex<double> gabor_value(double t, int m, int n, double tau0, double omega0, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("gabor: rho must be positive");
  const double shift = t - m * tau0;
  const double envelope =
      std::exp(-shift * shift / (2.0 * rho * rho)) / (std::sqrt(2.0 * kPi) * rho);
  return envelope * std::polar(1.0, n * omega0 * t);
}

Eigen::VectorXcd gabor_atom(const TimeGrid& grid, int m, int n, double tau0, double omega0,
                            double rho) {
  Eigen::VectorXcd atom(grid.n_samples);
  for (int j = 0; j < grid.n_samples; ++j) atom(j) = gabor_value(grid.point(j), m, n, tau0, omega0, rho);
  return atom;
}

std::complex<double> morlet_value(double t, double a, double b, double omega0) {
  if (!(a > 0.0)) throw std::invalid_argument("morlet: scale a must be positive");
  const double u = t - b;
  return std::exp(-u * u / (2.0 * a * a)) / std::sqrt(a) * std::polar(1.0, omega0 * u / a);
}

Eigen::VectorXcd morlet_atom(const TimeGrid& grid, double a, double b, double omega0) {
  if (!(a > 0.0)) throw std::invalid_argument("morlet: scale a must be positive");
  Eigen::VectorXcd atom(grid.n_samples);
  for (int j = 0; j < grid.n_samples; ++j) atom(j) = morlet_value(grid.point(j), a, b, omega0);
  return atom;
}

}  // namespace ggsp
