#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ggsp/operators.hpp"

namespace ggsp {

/// Orthonormal band-limited signals ordered by their energy fraction inside S.
struct ConcentratedBasis {
  std::vector<Signal> atoms;       // unit norm, band-limited to sigma
  Eigen::VectorXd concentrations;  // nonincreasing, in [0, 1]
  Eigen::MatrixXd coordinates;     // D_Sigma x k, atoms in band coordinates
  VertexTimeMask mask;
  SpectralFrequencyMask band;

  Eigen::Index size() const { return concentrations.size(); }
};

/// Top-k eigenvectors of Pi_Sigma Pi_S Pi_Sigma. Throws if k exceeds D_Sigma.
ConcentratedBasis max_concentrated_basis(const JointDomain& domain, const VertexTimeMask& s,
                                         const SpectralFrequencyMask& sigma, int k);

struct DualOrthogonality {
  double off_diagonal = 0.0;  // max_{i != j} |<xi_i, Pi_S xi_j>|
  double diagonal = 0.0;      // max_i |<xi_i, Pi_S xi_i> - lambda_i|

  double max() const { return off_diagonal > diagonal ? off_diagonal : diagonal; }
};

DualOrthogonality dual_orthogonality_check(const ConcentratedBasis& basis);

/// Graph-only concentration: eigenvectors of Pi_W' Pi_V' Pi_W' with W' given
/// as Laplacian eigen indices.
struct GraphConcentratedBasis {
  Eigen::MatrixXd atoms;           // N x k, orthonormal
  Eigen::MatrixXd coefficients;    // |W'| x k
  Eigen::VectorXd concentrations;  // nonincreasing
  std::vector<int> spectral;
};

GraphConcentratedBasis graph_concentrated_basis(const LaplacianEigensystem& eig,
                                                const std::vector<int>& vertices,
                                                const std::vector<int>& spectral, int k);

/// Concentrated basis of a separable pair S = V' x T', Sigma = W' x Omega'
/// assembled from the graph and time factors: every joint eigenpair is a
/// tensor product with the product eigenvalue. Returns the top k products.
/// With IntervalMask::Midpoint this equals max_concentrated_basis on the
/// corresponding masks, up to rotations inside degenerate eigenspaces.
ConcentratedBasis separable_concentrated_basis(const JointDomain& domain,
                                               const std::vector<int>& vertices,
                                               const TimeInterval& interval,
                                               const std::vector<int>& spectral,
                                               const FrequencyBand& band, int k,
                                               IntervalMask mode = IntervalMask::Midpoint);

}  // namespace ggsp
