#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace ggsp {

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 1.0;
};

/// Simple, connected, undirected weighted graph. Construction validates
/// symmetry, zero diagonal, nonnegative weights and connectivity.
class Graph {
 public:
  explicit Graph(Eigen::MatrixXd weights);

  static Graph from_edges(int n_vertices, const std::vector<Edge>& edges);

  Eigen::Index size() const { return weights_.rows(); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  Eigen::VectorXd degrees() const { return weights_.rowwise().sum(); }

 private:
  Eigen::MatrixXd weights_;
};

/// Connected components of the support of a weight matrix, each sorted.
std::vector<std::vector<int>> connected_components(const Eigen::MatrixXd& weights);

/// L = D - A.
Eigen::MatrixXd build_laplacian(const Graph& g);

/// Eigenpairs of the graph Laplacian, eigenvalues ascending.
struct LaplacianEigensystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
  double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// Flips each column so that its first entry with magnitude above
/// `rel_tol * max|column|` is positive.
void fix_column_signs(Eigen::MatrixXd& columns, double rel_tol = 1e-9);

/// Symmetric eigensolve with ascending eigenvalues and the first-nonzero-positive
/// sign convention. Throws std::invalid_argument for non-symmetric input.
LaplacianEigensystem eigendecompose(const Eigen::MatrixXd& laplacian);

Eigen::VectorXd gft(const LaplacianEigensystem& eig, const Eigen::VectorXd& x);
Eigen::VectorXd igft(const LaplacianEigensystem& eig, const Eigen::VectorXd& x_hat);

/// Reads a `src,dst,weight` CSV with a header line. Vertex count is
/// max id + 1 unless `n_vertices` is positive.
Graph read_edge_list_csv(const std::string& path, int n_vertices = 0);
void write_edge_list_csv(const Graph& g, const std::string& path);

}  // namespace ggsp
