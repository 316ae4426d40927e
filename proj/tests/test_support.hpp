#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ggsp/graph.hpp"
#include "ggsp/operators.hpp"
#include "ggsp/time_basis.hpp"

namespace ggsp::testing {

inline Graph path_graph(int n, double w = 1.0) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return Graph::from_edges(n, edges);
}

inline Graph complete_graph(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  a.diagonal().setZero();
  return Graph(a);
}

inline Graph single_vertex_graph() { return Graph(Eigen::MatrixXd::Zero(1, 1)); }

/// Connected random graph: a shuffled spanning path plus extra random edges.
inline Graph random_graph(int n, std::mt19937_64& rng, double extra_prob = 0.3) {
  std::uniform_real_distribution<double> weight(0.2, 2.0);
  std::bernoulli_distribution extra(extra_prob);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double w = weight(rng);
    a(order[i], order[i + 1]) = a(order[i + 1], order[i]) = w;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) == 0.0 && extra(rng)) a(i, j) = a(j, i) = weight(rng);
    }
  }
  return Graph(a);
}

inline Eigen::VectorXd vec(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

inline Signal unvec(const Eigen::VectorXd& v, int rows, int cols) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

inline Signal random_signal(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Signal f(rows, cols);
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = g(rng);
  return f;
}

template <typename Mask>
Mask random_mask(int rows, int cols, std::mt19937_64& rng, double p = 0.5) {
  std::bernoulli_distribution b(p);
  Mask m{Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>(rows, cols)};
  for (Eigen::Index i = 0; i < m.mask.size(); ++i) m.mask(i) = b(rng);
  return m;
}

/// Dense (N T) x (N T) joint Fourier matrix Q with vec(ijft(C)) = Q vec(C).
inline Eigen::MatrixXd dense_joint_fourier(const JointDomain& d) {
  const int n = d.n_vertices();
  const int t = d.n_times();
  const Eigen::MatrixXd& u = d.U();
  const Eigen::MatrixXd& f = d.frame().matrix();
  Eigen::MatrixXd q(n * t, n * t);
  for (int c = 0; c < t; ++c)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < t; ++j)
        for (int v = 0; v < n; ++v) q(v + n * j, k + n * c) = u(v, k) * f(j, c);
  return q;
}

inline Eigen::MatrixXd dense_vt_projector(const VertexTimeMask& s) {
  Eigen::VectorXd diag(s.mask.size());
  for (Eigen::Index i = 0; i < s.mask.size(); ++i) diag(i) = s.mask(i) ? 1.0 : 0.0;
  return diag.asDiagonal();
}

inline Eigen::MatrixXd dense_sf_projector(const JointDomain& d, const SpectralFrequencyMask& sigma) {
  const Eigen::MatrixXd q = dense_joint_fourier(d);
  Eigen::VectorXd diag(sigma.mask.size());
  for (Eigen::Index i = 0; i < sigma.mask.size(); ++i) diag(i) = sigma.mask(i) ? 1.0 : 0.0;
  return q * diag.asDiagonal() * q.transpose();
}

/// Projection distance ||P_a - P_b||_2 between the column spaces of two
/// orthonormal bases.
inline double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd pa = a * a.transpose();
  const Eigen::MatrixXd pb = b * b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(pa - pb, Eigen::EigenvaluesOnly);
  return s.eigenvalues().cwiseAbs().maxCoeff();
}

/// Composite Simpson rule on [lo, hi] with an even number of panels.
template <typename F>
double simpson(F&& f, double lo, double hi, int panels) {
  if (panels % 2) ++panels;
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

}  // namespace ggsp::testing
