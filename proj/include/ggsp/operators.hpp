#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ggsp/graph.hpp"
#include "ggsp/time_basis.hpp"

namespace ggsp {

/// A discretized generalized graph signal f(v, t_j): N x T_g, rows are vertices.
using Signal = Eigen::MatrixXd;

/// Vertex-time domain of a graph and a time grid together with the joint
/// Fourier transform (graph Fourier in rows, real DFT frame in columns).
class JointDomain {
 public:
  JointDomain(LaplacianEigensystem eig, const TimeGrid& grid);
  JointDomain(const Graph& graph, const TimeGrid& grid);

  const LaplacianEigensystem& eigensystem() const { return eig_; }
  const Eigen::MatrixXd& U() const { return eig_.eigenvectors; }
  const FourierFrame& frame() const { return frame_; }
  const TimeGrid& grid() const { return frame_.grid(); }
  int n_vertices() const { return static_cast<int>(eig_.size()); }
  int n_times() const { return frame_.size(); }
  int dimension() const { return n_vertices() * n_times(); }

  /// Coefficients <f, u_k (x) frame_c> arranged N x T_g.
  Eigen::MatrixXd jft(const Signal& f) const;
  Signal ijft(const Eigen::MatrixXd& coefficients) const;

  void check(const Signal& f, const char* where) const;

 private:
  LaplacianEigensystem eig_;
  FourierFrame frame_;
};

/// Subset S of V x T as a 0/1 mask over (vertex, grid sample).
struct VertexTimeMask {
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;

  static VertexTimeMask full(int n_vertices, int n_times);
  static VertexTimeMask empty(int n_vertices, int n_times);
  /// V' x T' with midpoint membership of grid samples.
  static VertexTimeMask separable(int n_vertices, const std::vector<int>& vertices,
                                  const TimeGrid& grid, const TimeInterval& interval);

  VertexTimeMask complement() const;
  int count() const { return static_cast<int>(mask.count()); }
  int rows() const { return static_cast<int>(mask.rows()); }
  int cols() const { return static_cast<int>(mask.cols()); }
  /// Vectorized (column-major) indices of the members.
  std::vector<int> members() const;
};

/// Subset Sigma of W x Omega as a 0/1 mask over (Laplacian eigen index,
/// frame column).
struct SpectralFrequencyMask {
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;

  static SpectralFrequencyMask full(int n_vertices, int n_times);
  static SpectralFrequencyMask empty(int n_vertices, int n_times);
  /// W' x Omega' from explicit spectral indices and frame columns.
  static SpectralFrequencyMask separable(int n_vertices, int n_times,
                                         const std::vector<int>& spectral,
                                         const std::vector<int>& frequency_columns);
  static SpectralFrequencyMask separable(const JointDomain& domain,
                                         const std::vector<int>& spectral,
                                         const FrequencyBand& band);

  SpectralFrequencyMask complement() const;
  int count() const { return static_cast<int>(mask.count()); }
  std::vector<int> members() const;
};

Signal apply_vt_limit(const Signal& f, const VertexTimeMask& s);
Signal apply_sf_limit(const JointDomain& domain, const Signal& f, const SpectralFrequencyMask& sigma);

/// alpha_S^2 = ||Pi_S f||^2 / ||f||^2. Throws for a zero signal.
double vt_spread(const Signal& f, const VertexTimeMask& s);
/// beta_Sigma^2 = ||Pi_Sigma f||^2 / ||f||^2, computed from JFT coefficients.
double sf_spread(const JointDomain& domain, const Signal& f, const SpectralFrequencyMask& sigma);

constexpr int kDefaultBandBudget = 4096;

/// Orthonormal basis of im(Pi_Sigma): columns vec(u_k frame_c^T) for (k, c)
/// in Sigma, vectorized column-major (index v + N j).
struct BandlimitedBasis {
  Eigen::MatrixXd columns;   // (N T_g) x D_Sigma
  std::vector<int> members;  // vectorized (k, c) indices, same order as columns

  Eigen::Index dimension() const { return columns.cols(); }
  Signal lift(const JointDomain& domain, const Eigen::VectorXd& coordinates) const;
};

BandlimitedBasis bandlimited_basis(const JointDomain& domain, const SpectralFrequencyMask& sigma,
                                   int budget = kDefaultBandBudget);

/// M = B^* Pi_S B in band coordinates (D_Sigma x D_Sigma).
Eigen::MatrixXd restricted_operator(const JointDomain& domain, const VertexTimeMask& s,
                                    const SpectralFrequencyMask& sigma,
                                    int budget = kDefaultBandBudget);
Eigen::MatrixXd restricted_operator(const BandlimitedBasis& basis, const VertexTimeMask& s);

/// Largest eigenvalue of a symmetric matrix (0 for an empty matrix).
double lambda_max(const Eigen::MatrixXd& m);

/// lambda_max(Pi_Sigma Pi_S Pi_Sigma) through whichever of B_S^T B_S (band
/// side) or B_S B_S^T (vertex-time side) is smaller; both share their
/// nonzero spectrum. B_S is the band basis restricted to the rows in S.
double lambda_max_product(const JointDomain& domain, const VertexTimeMask& s,
                          const SpectralFrequencyMask& sigma);

}  // namespace ggsp
