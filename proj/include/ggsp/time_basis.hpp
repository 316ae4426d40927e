#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace ggsp {

/// Uniform midpoint grid on [0, delta]: t_j = (j + 1/2) * delta / n_samples.
struct TimeGrid {
  double delta = 1.0;
  int n_samples = 1;

  TimeGrid() = default;
  TimeGrid(double delta, int n_samples);

  double spacing() const { return delta / n_samples; }
  double point(int j) const { return (j + 0.5) * spacing(); }
  Eigen::VectorXd points() const;
  /// Index of the grid point equal to t (within 1e-12 * delta), or -1.
  int grid_index(double t) const;

  bool operator==(const TimeGrid&) const = default;
};

/// Angular frequency band [center - half_width, center + half_width] in rad/s.
struct FrequencyBand {
  double center = 0.0;
  double half_width = 1.0;

  FrequencyBand() = default;
  FrequencyBand(double center, double half_width);

  bool operator==(const FrequencyBand&) const = default;
};

/// [center - length/2, center + length/2], clipped to [0, delta] when used.
struct TimeInterval {
  double center = 0.0;
  double length = 0.0;

  double lo() const { return center - 0.5 * length; }
  double hi() const { return center + 0.5 * length; }

  bool operator==(const TimeInterval&) const = default;
};

/// Value at t of frame column `column` of the grid (see FourierFrame).
double frame_value(const TimeGrid& grid, int column, double t);
Eigen::RowVectorXd frame_row(const TimeGrid& grid, double t, const std::vector<int>& columns);

/// Orthonormal real discrete Fourier frame of a TimeGrid.
///
/// Column 0 is the constant; columns 2k-1 and 2k are cos and sin of
/// harmonic k. For even grids the last column is the Nyquist harmonic,
/// which is a sine on the midpoint grid since the cosine vanishes there.
/// Every column is also a closed-form function of continuous t, so the
/// frame doubles as a band-limited interpolator.
class FourierFrame {
 public:
  explicit FourierFrame(const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }
  int size() const { return grid_.n_samples; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  int harmonic(int column) const;
  bool is_sine(int column) const;
  double angular_frequency(int column) const;

  /// Value of one frame column at continuous time t.
  double evaluate(int column, double t) const;
  /// Values of the listed columns at t.
  Eigen::RowVectorXd evaluate_row(double t, const std::vector<int>& columns) const;

  /// Columns whose frequency (or its negative mirror) lies in the band.
  std::vector<int> band_columns(const FrequencyBand& band) const;
  /// Columns with harmonic index <= max_harmonic.
  std::vector<int> lowpass_columns(int max_harmonic) const;

  /// (T_g / delta) * integral over [lo, hi] n [0, delta] of f_a f_b for the
  /// listed columns; the exact continuous-time counterpart of B^T Pi_T B.
  Eigen::MatrixXd interval_gram(const std::vector<int>& columns, double lo, double hi) const;

 private:
  TimeGrid grid_;
  Eigen::MatrixXd matrix_;
};

/// Midpoint membership of grid samples in an interval (0/1 per sample).
Eigen::VectorXd interval_indicator(const TimeGrid& grid, const TimeInterval& interval);

/// Orthonormal harmonics {1, cos(2 pi l t / delta), sin(2 pi l t / delta)}_{l <= L}.
struct FourierBasis {
  Eigen::MatrixXd atoms;      // T_g x (2L+1)
  Eigen::MatrixXd transform;  // raw harmonics -> orthonormal atoms
  int n_harmonics = 0;
  double delta = 1.0;

  Eigen::RowVectorXd evaluate(double t) const;
};

FourierBasis fourier_basis(const TimeGrid& grid, int n_harmonics);

/// How the time-limiting operator acts on band-limited functions.
enum class IntervalMask {
  /// Grid samples whose midpoint lies in the interval; Pi_T is a 0/1 diagonal.
  Midpoint,
  /// Exact integral over the interval; smooth in (center, length).
  Exact,
};

struct ProlateBasis {
  Eigen::MatrixXd atoms;           // T_g x n, orthonormal on the grid
  Eigen::MatrixXd coefficients;    // |band| x n, atoms in frame coordinates
  std::vector<int> band_columns;   // frame columns spanning the band
  Eigen::VectorXd concentrations;  // nonincreasing
  TimeInterval interval;
  FrequencyBand band;

  Eigen::Index size() const { return atoms.cols(); }
  Eigen::RowVectorXd evaluate(const FourierFrame& frame, double t) const;
};

/// Eigenvectors of the discretized Pi_band Pi_interval Pi_band, computed on
/// the in-band subspace. Throws if n_atoms exceeds the band dimension.
ProlateBasis prolate_basis(const FourierFrame& frame, const TimeInterval& interval,
                           const std::vector<int>& band_columns, int n_atoms,
                           IntervalMask mode = IntervalMask::Midpoint);
ProlateBasis prolate_basis(const FourierFrame& frame, const TimeInterval& interval,
                           const FrequencyBand& band, int n_atoms,
                           IntervalMask mode = IntervalMask::Midpoint);

/// (1 / (sqrt(2 pi) rho)) exp(-(t - m tau0)^2 / (2 rho^2)) exp(j n omega0 t).
std::complex<double> gabor_value(double t, int m, int n, double tau0, double omega0, double rho);
Eigen::VectorXcd gabor_atom(const TimeGrid& grid, int m, int n, double tau0, double omega0,
                            double rho);

/// (1 / sqrt(a)) exp(-(t - b)^2 / (2 a^2)) exp(j omega0 (t - b) / a).
std::complex<double> morlet_value(double t, double a, double b, double omega0);
Eigen::VectorXcd morlet_atom(const TimeGrid& grid, double a, double b, double omega0);

}  // namespace ggsp
