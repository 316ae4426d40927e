#include "ggsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ggsp/io_util.hpp"

namespace ggsp {

std::vector<std::vector<int>> connected_components(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> components;
  for (int start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<int> stack{start};
    label[start] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      components[id].push_back(v);
      for (int u = 0; u < n; ++u) {
        if (label[u] < 0 && weights(v, u) > 0.0) {
          label[u] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

Graph::Graph(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  const Eigen::Index n = weights_.rows();
  if (n == 0 || weights_.cols() != n) {
    throw std::invalid_argument("graph weight matrix must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw std::invalid_argument("graph has a self-loop at vertex " + std::to_string(i));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument("graph weight (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative or not finite");
      }
      if (w != weights_(j, i)) {
        throw std::invalid_argument("graph weight matrix is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  const auto components = connected_components(weights_);
  if (components.size() > 1) {
    std::ostringstream msg;
    msg << "graph is disconnected: " << components.size() << " components";
    for (const auto& c : components) {
      msg << " {";
      for (std::size_t k = 0; k < c.size(); ++k) msg << (k ? "," : "") << c[k];
      msg << "}";
    }
    throw std::invalid_argument(msg.str());
  }
}

Graph Graph::from_edges(int n_vertices, const std::vector<Edge>& edges) {
  if (n_vertices <= 0) throw std::invalid_argument("graph needs at least one vertex");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_vertices, n_vertices);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.src < 0 || e.dst < 0 || e.src >= n_vertices || e.dst >= n_vertices) {
      throw std::invalid_argument("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                                  ") references a vertex outside [0," +
                                  std::to_string(n_vertices) + ")");
    }
    if (e.src == e.dst) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.src));
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw std::invalid_argument("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                                  ") has a negative weight");
    }
    const auto key = std::minmax(e.src, e.dst);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ")");
    }
    w(e.src, e.dst) = e.weight;
    w(e.dst, e.src) = e.weight;
  }
  return Graph(std::move(w));
}

Eigen::MatrixXd build_laplacian(const Graph& g) {
  Eigen::MatrixXd L = -g.weights();
  L.diagonal() = g.degrees();
  return L;
}

void fix_column_signs(Eigen::MatrixXd& columns, double rel_tol) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    auto col = columns.col(c);
    const double scale = col.cwiseAbs().maxCoeff();
    if (scale == 0.0) continue;
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) > rel_tol * scale) {
        if (col(r) < 0.0) col = -col;
        break;
      }
    }
  }
}

LaplacianEigensystem eigendecompose(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() != laplacian.cols() || laplacian.rows() == 0) {
    throw std::invalid_argument("eigendecompose: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, laplacian.cwiseAbs().maxCoeff());
  if ((laplacian - laplacian.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("eigendecompose: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecompose: eigensolver failed");
  }
  LaplacianEigensystem eig{solver.eigenvalues(), solver.eigenvectors()};
  fix_column_signs(eig.eigenvectors);
  return eig;
}

Eigen::VectorXd gft(const LaplacianEigensystem& eig, const Eigen::VectorXd& x) {
  if (x.size() != eig.size()) {
    throw std::invalid_argument("gft: signal length " + std::to_string(x.size()) +
                                " does not match graph size " + std::to_string(eig.size()));
  }
  return eig.eigenvectors.transpose() * x;
}

Eigen::VectorXd igft(const LaplacianEigensystem& eig, const Eigen::VectorXd& x_hat) {
  if (x_hat.size() != eig.size()) {
    throw std::invalid_argument("igft: coefficient length " + std::to_string(x_hat.size()) +
                                " does not match graph size " + std::to_string(eig.size()));
  }
  return eig.eigenvectors * x_hat;
}

Graph read_edge_list_csv(const std::string& path, int n_vertices) {
  CsvReader reader(path);
  reader.expect_header({"src", "dst", "weight"});
  std::vector<Edge> edges;
  int max_id = -1;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 3) reader.fail("expected 3 fields");
    Edge e;
    e.src = reader.parse_int(fields[0]);
    e.dst = reader.parse_int(fields[1]);
    e.weight = reader.parse_double(fields[2]);
    if (e.src < 0 || e.dst < 0) reader.fail("negative vertex id");
    if (e.src == e.dst) reader.fail("self-loop");
    if (e.weight < 0.0) reader.fail("negative weight");
    max_id = std::max({max_id, e.src, e.dst});
    edges.push_back(e);
  }
  const int n = n_vertices > 0 ? n_vertices : max_id + 1;
  if (n <= 0) throw std::runtime_error(path + ": edge list is empty");
  return Graph::from_edges(n, edges);
}

void write_edge_list_csv(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "src,dst,weight\n" << std::setprecision(17);
  const auto& w = g.weights();
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
      if (w(i, j) > 0.0) out << i << ',' << j << ',' << w(i, j) << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace ggsp
