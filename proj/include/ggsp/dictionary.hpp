#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ggsp/concentration.hpp"
#include "ggsp/operators.hpp"

namespace ggsp {

/// A point (v, t) of the vertex-time domain.
struct SamplePoint {
  int vertex = 0;
  double t = 0.0;
};

/// Time-side factor of a separable block: atom values on the grid plus an
/// evaluator for arbitrary t that returns all columns at once.
struct TimeFactor {
  Eigen::MatrixXd grid_values;  // T_g x n
  std::function<Eigen::RowVectorXd(double)> evaluate;

  Eigen::Index size() const { return grid_values.cols(); }
  /// Row of values at t; grid points are gathered exactly.
  Eigen::RowVectorXd row(const TimeGrid& grid, double t) const;
};

/// All tensor products g_a (x) h_b of the graph columns with the time
/// columns. Atom (a, b) has local index a * n_time + b.
struct SeparableBlock {
  Eigen::MatrixXd graph;  // N x n_graph
  TimeFactor time;
  std::vector<std::array<int, 2>> graph_keys;  // kind-specific labels per graph column
  std::vector<std::array<int, 3>> time_keys;   // kind-specific labels per time column

  Eigen::Index n_graph() const { return graph.cols(); }
  Eigen::Index n_time() const { return time.size(); }
  Eigen::Index size() const { return n_graph() * n_time(); }
  Signal atom(Eigen::Index a, Eigen::Index b) const;
  /// Design rows of this block at the samples (M x size()).
  Eigen::MatrixXd evaluate(const TimeGrid& grid, const std::vector<SamplePoint>& samples) const;
};

enum class DictionaryKind { JECD, JFT, STVFT, STVWT };

std::string to_string(DictionaryKind kind);
DictionaryKind parse_dictionary_kind(const std::string& name);

struct AtomKey {
  int block = 0;
  int graph = 0;  // column of the block's graph factor
  int time = 0;   // column of the block's time factor
};

/// A finite dictionary made of separable blocks. Every atom has unit norm on
/// the grid.
struct Dictionary {
  DictionaryKind kind = DictionaryKind::JFT;
  std::vector<SeparableBlock> blocks;
  int dropped_atoms = 0;  // zero-norm atoms removed during construction

  Eigen::Index size() const;
  Eigen::Index block_offset(int block) const;
  Eigen::Index column(const AtomKey& key) const;
  AtomKey key(Eigen::Index column) const;
  Signal atom(Eigen::Index column) const;
};

/// Design matrix of the dictionary at the samples: entry (m, a) is
/// atom_a(v_m, t_m). Throws naming the first sample out of range.
Eigen::MatrixXd evaluate_at_samples(const JointDomain& domain, const Dictionary& dict,
                                    const std::vector<SamplePoint>& samples);
void check_samples(const JointDomain& domain, const std::vector<SamplePoint>& samples);

/// Spectral-frequency band W' x Omega' shared by the JECD subsets.
struct JointBand {
  std::vector<int> spectral;  // Laplacian eigen indices W'
  FrequencyBand frequency;    // Omega'

  bool operator==(const JointBand&) const = default;
};

struct SubsetSpec {
  std::vector<int> vertices;  // V'
  TimeInterval interval;      // T' = [t_c - l/2, t_c + l/2]
  int n_graph_atoms = 0;      // k
  int n_time_atoms = 0;       // n

  bool operator==(const SubsetSpec&) const = default;
};

/// Default time-atom count ceil(l W / pi) + 4, capped at the band dimension.
int default_time_atoms(double length, const FrequencyBand& band, int band_dimension);

/// Builds JECD blocks for a fixed set of vertex subsets as the intervals
/// change. Time atoms can be sign-aligned with a reference so that the
/// dictionary varies continuously with (t_c, l).
class JecdBuilder {
 public:
  JecdBuilder(const JointDomain& domain, std::vector<SubsetSpec> subsets, JointBand band,
              IntervalMask mode = IntervalMask::Midpoint);

  const JointDomain& domain() const { return *domain_; }
  const std::vector<SubsetSpec>& subsets() const { return subsets_; }
  const JointBand& band() const { return band_; }
  const std::vector<int>& band_columns() const { return columns_; }
  IntervalMask mode() const { return mode_; }
  int n_subsets() const { return static_cast<int>(subsets_.size()); }

  /// Block of subset i for the given interval. If `reference` is given, each
  /// time atom is flipped to have a nonnegative inner product with the
  /// matching reference atom.
  SeparableBlock block(int i, const TimeInterval& interval,
                       const SeparableBlock* reference = nullptr) const;
  Dictionary build(const std::vector<TimeInterval>& intervals,
                   const Dictionary* reference = nullptr) const;
  Dictionary build() const;

 private:
  const JointDomain* domain_;
  std::vector<SubsetSpec> subsets_;
  JointBand band_;
  std::vector<int> columns_;
  IntervalMask mode_;
  std::vector<GraphConcentratedBasis> graph_atoms_;
};

Dictionary build_jecd(const JointDomain& domain, const std::vector<SubsetSpec>& subsets,
                      const JointBand& band, IntervalMask mode = IntervalMask::Midpoint);

/// {u_k (x) psi_l}: the first K Laplacian eigenvectors times the orthonormal
/// harmonics up to order L.
Dictionary build_jft(const JointDomain& domain, int K, int L);

/// Itersine window sin(0.5 pi cos^2(pi x)) on |x| <= 1/2, zero outside.
double itersine(double x);

/// Column p of U h(Lambda) U^T for every vertex p, with h given on the
/// normalized eigenvalues lambda / lambda_max.
Eigen::MatrixXd spectral_filter_atoms(const LaplacianEigensystem& eig,
                                      const std::function<double(double)>& h);

struct StvftParams {
  int Q = 2;
  double tau0 = 0.25;
  double omega0 = 25.132741228718345;  // 8 pi
  double rho = 0.125;
  double max_frequency = 0.0;          // rad/s; 0 selects the grid Nyquist

  bool operator==(const StvftParams&) const = default;
};

/// Graph atoms h(lambda~ - q/Q) for q = 1..Q and Gabor time atoms with
/// centers m tau0 covering [0, delta] and frequencies n omega0 up to the
/// frequency cap; complex atoms give a cosine and a sine part.
Dictionary build_stvft(const JointDomain& domain, const StvftParams& params);

struct StvwtParams {
  std::vector<double> scales = {2.0, 4.0};
  std::vector<double> a_list = {0.1, 0.2};
  std::vector<double> b_list;  // empty: grid-covering shifts spaced by a
  double omega0 = 6.0;

  bool operator==(const StvwtParams&) const = default;
};

/// Graph atoms h(s lambda~) per scale and Morlet time atoms per (a, b).
Dictionary build_stvwt(const JointDomain& domain, const StvwtParams& params);

/// Seeded spectral clustering of the vertices into `count` groups using
/// k-means++ on the lowest nontrivial Laplacian eigenvectors. Groups are
/// sorted and ordered by their smallest vertex.
std::vector<std::vector<int>> spectral_clusters(const LaplacianEigensystem& eig, int count,
                                                std::uint64_t seed);

/// Structural description of a dictionary for provenance files.
struct DictionaryMetadata {
  DictionaryKind kind = DictionaryKind::JFT;
  std::vector<SubsetSpec> subsets;
  JointBand band;
  int jft_K = 0;
  int jft_L = 0;
  StvftParams stvft;
  StvwtParams stvwt;
  long long atom_count = 0;
  int dropped_atoms = 0;

  std::string to_json() const;
  static DictionaryMetadata from_json(const std::string& text);
  bool operator==(const DictionaryMetadata&) const = default;
};

}  // namespace ggsp
