#include "ggsp/dictionary.hpp"

#include <algorithm>
#include <cctype>
#include <complex>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace ggsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroNorm = 1e-12;

using Json = nlohmann::json;

// Normalizes the columns of a time factor, dropping the zero ones. Returns
// the number of dropped columns.
int normalize_time_factor(TimeFactor& factor, std::vector<std::array<int, 3>>& keys) {
  const Eigen::Index n = factor.size();
  std::vector<Eigen::Index> keep;
  Eigen::RowVectorXd scale(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double norm = factor.grid_values.col(c).norm();
    scale(c) = norm > kZeroNorm ? 1.0 / norm : 0.0;
    if (norm > kZeroNorm) keep.push_back(c);
  }
  Eigen::MatrixXd values(factor.grid_values.rows(), static_cast<Eigen::Index>(keep.size()));
  std::vector<std::array<int, 3>> kept_keys;
  Eigen::RowVectorXd kept_scale(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    values.col(static_cast<Eigen::Index>(i)) = factor.grid_values.col(keep[i]) * scale(keep[i]);
    kept_scale(static_cast<Eigen::Index>(i)) = scale(keep[i]);
    kept_keys.push_back(keys[keep[i]]);
  }
  auto inner = std::move(factor.evaluate);
  factor.grid_values = std::move(values);
  factor.evaluate = [inner = std::move(inner), keep, kept_scale](double t) {
    const Eigen::RowVectorXd raw = inner(t);
    Eigen::RowVectorXd out(kept_scale.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      out(static_cast<Eigen::Index>(i)) = raw(keep[i]) * kept_scale(static_cast<Eigen::Index>(i));
    }
    return out;
  };
  keys = std::move(kept_keys);
  return static_cast<int>(n - static_cast<Eigen::Index>(keep.size()));
}

int normalize_graph_factor(Eigen::MatrixXd& graph, std::vector<std::array<int, 2>>& keys) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = 0; c < graph.cols(); ++c) {
    if (graph.col(c).norm() > kZeroNorm) keep.push_back(c);
  }
  Eigen::MatrixXd out(graph.rows(), static_cast<Eigen::Index>(keep.size()));
  std::vector<std::array<int, 2>> kept_keys;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = graph.col(keep[i]).normalized();
    kept_keys.push_back(keys[keep[i]]);
  }
  const int dropped = static_cast<int>(graph.cols() - out.cols());
  graph = std::move(out);
  keys = std::move(kept_keys);
  return dropped;
}

// Normalizes both factors and returns the number of atoms removed.
int finalize_block(SeparableBlock& block) {
  const Eigen::Index g0 = block.n_graph();
  const Eigen::Index t0 = block.n_time();
  normalize_graph_factor(block.graph, block.graph_keys);
  normalize_time_factor(block.time, block.time_keys);
  return static_cast<int>(g0 * t0 - block.size());
}

}  // namespace

Eigen::RowVectorXd TimeFactor::row(const TimeGrid& grid, double t) const {
  const int j = grid.grid_index(t);
  if (j >= 0) return grid_values.row(j);
  return evaluate(t);
}

Signal SeparableBlock::atom(Eigen::Index a, Eigen::Index b) const {
  return graph.col(a) * time.grid_values.col(b).transpose();
}

Eigen::MatrixXd SeparableBlock::evaluate(const TimeGrid& grid,
                                         const std::vector<SamplePoint>& samples) const {
  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index ng = n_graph();
  const Eigen::Index nt = n_time();
  Eigen::MatrixXd design(m, ng * nt);
  for (Eigen::Index r = 0; r < m; ++r) {
    const SamplePoint& s = samples[static_cast<std::size_t>(r)];
    const Eigen::RowVectorXd h = time.row(grid, s.t);
    for (Eigen::Index a = 0; a < ng; ++a) {
      design.row(r).segment(a * nt, nt) = graph(s.vertex, a) * h;
    }
  }
  return design;
}

std::string to_string(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::JECD: return "JECD";
    case DictionaryKind::JFT: return "JFT";
    case DictionaryKind::STVFT: return "STVFT";
    case DictionaryKind::STVWT: return "STVWT";
  }
  return "?";
}

DictionaryKind parse_dictionary_kind(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "JECD") return DictionaryKind::JECD;
  if (upper == "JFT") return DictionaryKind::JFT;
  if (upper == "STVFT") return DictionaryKind::STVFT;
  if (upper == "STVWT") return DictionaryKind::STVWT;
  throw std::invalid_argument("unknown dictionary kind '" + name + "'");
}

Eigen::Index Dictionary::size() const {
  Eigen::Index total = 0;
  for (const SeparableBlock& b : blocks) total += b.size();
  return total;
}

Eigen::Index Dictionary::block_offset(int block) const {
  if (block < 0 || block > static_cast<int>(blocks.size())) {
    throw std::out_of_range("dictionary: block index out of range");
  }
  Eigen::Index offset = 0;
  for (int i = 0; i < block; ++i) offset += blocks[i].size();
  return offset;
}

Eigen::Index Dictionary::column(const AtomKey& key) const {
  if (key.block < 0 || key.block >= static_cast<int>(blocks.size())) {
    throw std::out_of_range("dictionary: block index out of range");
  }
  const SeparableBlock& b = blocks[key.block];
  if (key.graph < 0 || key.graph >= b.n_graph() || key.time < 0 || key.time >= b.n_time()) {
    throw std::out_of_range("dictionary: atom key out of range");
  }
  return block_offset(key.block) + key.graph * b.n_time() + key.time;
}

AtomKey Dictionary::key(Eigen::Index column) const {
  if (column < 0) throw std::out_of_range("dictionary: negative column");
  Eigen::Index rest = column;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (rest < blocks[i].size()) {
      return {static_cast<int>(i), static_cast<int>(rest / blocks[i].n_time()),
              static_cast<int>(rest % blocks[i].n_time())};
    }
    rest -= blocks[i].size();
  }
  throw std::out_of_range("dictionary: column out of range");
}

Signal Dictionary::atom(Eigen::Index column) const {
  const AtomKey k = key(column);
  return blocks[k.block].atom(k.graph, k.time);
}

void check_samples(const JointDomain& domain, const std::vector<SamplePoint>& samples) {
  const double delta = domain.grid().delta;
  for (std::size_t m = 0; m < samples.size(); ++m) {
    const SamplePoint& s = samples[m];
    if (s.vertex < 0 || s.vertex >= domain.n_vertices() || !(s.t >= 0.0 && s.t <= delta)) {
      throw std::out_of_range("sample " + std::to_string(m) + " (v = " + std::to_string(s.vertex) +
                              ", t = " + std::to_string(s.t) + ") is outside the domain");
    }
  }
}

Eigen::MatrixXd evaluate_at_samples(const JointDomain& domain, const Dictionary& dict,
                                    const std::vector<SamplePoint>& samples) {
  check_samples(domain, samples);
  Eigen::MatrixXd design(static_cast<Eigen::Index>(samples.size()), dict.size());
  Eigen::Index offset = 0;
  for (const SeparableBlock& b : dict.blocks) {
    design.middleCols(offset, b.size()) = b.evaluate(domain.grid(), samples);
    offset += b.size();
  }
  return design;
}

int default_time_atoms(double length, const FrequencyBand& band, int band_dimension) {
  const int n = static_cast<int>(std::ceil(length * band.half_width / kPi)) + 4;
  return std::clamp(n, 1, band_dimension);
}

JecdBuilder::JecdBuilder(const JointDomain& domain, std::vector<SubsetSpec> subsets, JointBand band,
                         IntervalMask mode)
    : domain_(&domain), subsets_(std::move(subsets)), band_(std::move(band)), mode_(mode) {
  if (subsets_.empty()) throw std::invalid_argument("jecd: at least one subset is required");
  if (band_.spectral.empty()) throw std::invalid_argument("jecd: empty spectral band W'");
  columns_ = domain.frame().band_columns(band_.frequency);
  if (columns_.empty()) throw std::invalid_argument("jecd: frequency band contains no frame column");
  const double delta = domain.grid().delta;
  const int w = static_cast<int>(band_.spectral.size());
  const int omega = static_cast<int>(columns_.size());
  for (std::size_t i = 0; i < subsets_.size(); ++i) {
    SubsetSpec& s = subsets_[i];
    const std::string name = "jecd subset " + std::to_string(i);
    if (s.vertices.empty()) throw std::invalid_argument(name + ": empty vertex set");
    if (!(s.interval.center >= 0.0 && s.interval.center <= delta)) {
      throw std::invalid_argument(name + ": t_c outside [0, delta]");
    }
    if (!(s.interval.length >= 0.0 && s.interval.length <= delta)) {
      throw std::invalid_argument(name + ": length outside [0, delta]");
    }
    if (s.n_graph_atoms <= 0) s.n_graph_atoms = w;
    if (s.n_time_atoms <= 0) s.n_time_atoms = default_time_atoms(s.interval.length, band_.frequency, omega);
    if (s.n_graph_atoms > w) {
      throw std::invalid_argument(name + ": " + std::to_string(s.n_graph_atoms) +
                                  " graph atoms exceed rank(Pi_W') = " + std::to_string(w));
    }
    if (s.n_time_atoms > omega) {
      throw std::invalid_argument(name + ": " + std::to_string(s.n_time_atoms) +
                                  " time atoms exceed the band dimension " + std::to_string(omega));
    }
    graph_atoms_.push_back(
        graph_concentrated_basis(domain.eigensystem(), s.vertices, band_.spectral, s.n_graph_atoms));
  }
}

SeparableBlock JecdBuilder::block(int i, const TimeInterval& interval,
                                  const SeparableBlock* reference) const {
  const SubsetSpec& spec = subsets_.at(static_cast<std::size_t>(i));
  const ProlateBasis p = prolate_basis(domain_->frame(), interval, columns_, spec.n_time_atoms, mode_);
  SeparableBlock block;
  block.graph = graph_atoms_[i].atoms;
  Eigen::MatrixXd coefficients = p.coefficients;
  block.time.grid_values = p.atoms;
  if (reference != nullptr) {
    if (reference->n_time() != p.size()) {
      throw std::invalid_argument("jecd: reference block has a different time atom count");
    }
    for (Eigen::Index b = 0; b < p.size(); ++b) {
      if (block.time.grid_values.col(b).dot(reference->time.grid_values.col(b)) < 0.0) {
        block.time.grid_values.col(b) *= -1.0;
        coefficients.col(b) *= -1.0;
      }
    }
  }
  block.time.evaluate = [grid = domain_->grid(), columns = columns_,
                         coefficients = std::move(coefficients)](double t) -> Eigen::RowVectorXd {
    return frame_row(grid, t, columns) * coefficients;
  };
  for (int k = 0; k < spec.n_graph_atoms; ++k) block.graph_keys.push_back({i, k});
  for (int n = 0; n < spec.n_time_atoms; ++n) block.time_keys.push_back({i, n, 0});
  return block;
}

Dictionary JecdBuilder::build(const std::vector<TimeInterval>& intervals,
                              const Dictionary* reference) const {
  if (intervals.size() != subsets_.size()) {
    throw std::invalid_argument("jecd: interval count does not match the subset count");
  }
  Dictionary dict;
  dict.kind = DictionaryKind::JECD;
  for (int i = 0; i < n_subsets(); ++i) {
    dict.blocks.push_back(block(i, intervals[i], reference ? &reference->blocks.at(i) : nullptr));
  }
  return dict;
}

Dictionary JecdBuilder::build() const {
  std::vector<TimeInterval> intervals;
  for (const SubsetSpec& s : subsets_) intervals.push_back(s.interval);
  return build(intervals);
}

Dictionary build_jecd(const JointDomain& domain, const std::vector<SubsetSpec>& subsets,
                      const JointBand& band, IntervalMask mode) {
  return JecdBuilder(domain, subsets, band, mode).build();
}

Dictionary build_jft(const JointDomain& domain, int K, int L) {
  if (K < 1 || K > domain.n_vertices()) {
    throw std::invalid_argument("jft: K must lie in [1, N]");
  }
  if (L < 0 || 2 * L + 1 > domain.n_times()) {
    throw std::invalid_argument("jft: need 0 <= L and 2L + 1 <= T_g");
  }
  const FourierBasis harmonics = fourier_basis(domain.grid(), L);
  SeparableBlock block;
  block.graph = domain.U().leftCols(K);
  block.time.grid_values = harmonics.atoms;
  block.time.evaluate = [harmonics](double t) { return harmonics.evaluate(t); };
  for (int k = 0; k < K; ++k) block.graph_keys.push_back({k, 0});
  for (int l = 0; l < 2 * L + 1; ++l) block.time_keys.push_back({l, 0, 0});
  Dictionary dict;
  dict.kind = DictionaryKind::JFT;
  dict.blocks.push_back(std::move(block));
  return dict;
}

double itersine(double x) {
  if (std::abs(x) > 0.5) return 0.0;
  const double c = std::cos(kPi * x);
  return std::sin(0.5 * kPi * c * c);
}

Eigen::MatrixXd spectral_filter_atoms(const LaplacianEigensystem& eig,
                                      const std::function<double(double)>& h) {
  const double lmax = eig.lambda_max();
  Eigen::VectorXd response(eig.size());
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    const double normalized = lmax > 0.0 ? std::max(eig.eigenvalues(k), 0.0) / lmax : 0.0;
    response(k) = h(normalized);
  }
  return eig.eigenvectors * response.asDiagonal() * eig.eigenvectors.transpose();
}

Dictionary build_stvft(const JointDomain& domain, const StvftParams& params) {
  if (params.Q < 1) throw std::invalid_argument("stvft: Q must be at least 1");
  if (!(params.rho > 0.0)) throw std::invalid_argument("stvft: rho must be positive");
  if (!(params.tau0 > 0.0) || !(params.omega0 > 0.0)) {
    throw std::invalid_argument("stvft: tau0 and omega0 must be positive");
  }
  const int n = domain.n_vertices();
  const TimeGrid grid = domain.grid();
  SeparableBlock block;
  block.graph.resize(n, static_cast<Eigen::Index>(n) * params.Q);
  for (int q = 1; q <= params.Q; ++q) {
    const double shift = static_cast<double>(q) / params.Q;
    const Eigen::MatrixXd h =
        spectral_filter_atoms(domain.eigensystem(), [shift](double x) { return itersine(x - shift); });
    block.graph.middleCols(static_cast<Eigen::Index>(q - 1) * n, n) = h;
    for (int p = 0; p < n; ++p) block.graph_keys.push_back({p, q});
  }

  const double nyquist = kPi * grid.n_samples / grid.delta;
  const double cap = params.max_frequency > 0.0 ? std::min(params.max_frequency, nyquist) : nyquist;
  const int m_max = static_cast<int>(std::floor(grid.delta / params.tau0 + 1e-9));
  const int n_max = static_cast<int>(std::floor(cap / params.omega0 + 1e-9));
  for (int m = 0; m <= m_max; ++m) {
    for (int f = 0; f <= n_max; ++f) {
      block.time_keys.push_back({m, f, 0});
      block.time_keys.push_back({m, f, 1});
    }
  }
  const std::vector<std::array<int, 3>> keys = block.time_keys;
  auto eval = [keys, params](double t) {
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(keys.size()));
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const std::complex<double> g = gabor_value(t, keys[i][0], keys[i][1], params.tau0, params.omega0, params.rho);
      row(static_cast<Eigen::Index>(i)) = keys[i][2] == 0 ? g.real() : g.imag();
    }
    return row;
  };
  block.time.grid_values.resize(grid.n_samples, static_cast<Eigen::Index>(keys.size()));
  for (int j = 0; j < grid.n_samples; ++j) block.time.grid_values.row(j) = eval(grid.point(j));
  block.time.evaluate = eval;

  Dictionary dict;
  dict.kind = DictionaryKind::STVFT;
  dict.dropped_atoms = finalize_block(block);
  dict.blocks.push_back(std::move(block));
  return dict;
}

Dictionary build_stvwt(const JointDomain& domain, const StvwtParams& params) {
  if (params.scales.empty() || params.a_list.empty()) {
    throw std::invalid_argument("stvwt: scale lists must be nonempty");
  }
  for (double s : params.scales) {
    if (!(s > 0.0)) throw std::invalid_argument("stvwt: graph scales must be positive");
  }
  for (double a : params.a_list) {
    if (!(a > 0.0)) throw std::invalid_argument("stvwt: Morlet scales must be positive");
  }
  const int n = domain.n_vertices();
  const TimeGrid grid = domain.grid();
  SeparableBlock block;
  block.graph.resize(n, static_cast<Eigen::Index>(n * params.scales.size()));
  for (std::size_t si = 0; si < params.scales.size(); ++si) {
    const double s = params.scales[si];
    const Eigen::MatrixXd h =
        spectral_filter_atoms(domain.eigensystem(), [s](double x) { return itersine(s * x); });
    block.graph.middleCols(static_cast<Eigen::Index>(si) * n, n) = h;
    for (int p = 0; p < n; ++p) block.graph_keys.push_back({p, static_cast<int>(si)});
  }

  std::vector<std::array<double, 2>> ab;
  for (std::size_t ai = 0; ai < params.a_list.size(); ++ai) {
    const double a = params.a_list[ai];
    std::vector<double> shifts = params.b_list;
    if (shifts.empty()) {
      const int count = static_cast<int>(std::floor(grid.delta / a + 1e-9));
      for (int b = 0; b <= count; ++b) shifts.push_back(b * a);
    }
    for (std::size_t bi = 0; bi < shifts.size(); ++bi) {
      for (int part = 0; part < 2; ++part) {
        block.time_keys.push_back({static_cast<int>(ai), static_cast<int>(bi), part});
        ab.push_back({a, shifts[bi]});
      }
    }
  }
  const std::vector<std::array<int, 3>> keys = block.time_keys;
  const double omega0 = params.omega0;
  auto eval = [keys, ab, omega0](double t) {
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(keys.size()));
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const std::complex<double> w = morlet_value(t, ab[i][0], ab[i][1], omega0);
      row(static_cast<Eigen::Index>(i)) = keys[i][2] == 0 ? w.real() : w.imag();
    }
    return row;
  };
  block.time.grid_values.resize(grid.n_samples, static_cast<Eigen::Index>(keys.size()));
  for (int j = 0; j < grid.n_samples; ++j) block.time.grid_values.row(j) = eval(grid.point(j));
  block.time.evaluate = eval;

  Dictionary dict;
  dict.kind = DictionaryKind::STVWT;
  dict.dropped_atoms = finalize_block(block);
  dict.blocks.push_back(std::move(block));
  return dict;
}

std::vector<std::vector<int>> spectral_clusters(const LaplacianEigensystem& eig, int count,
                                                std::uint64_t seed) {
  const int n = static_cast<int>(eig.size());
  if (count < 1 || count > n) throw std::invalid_argument("spectral_clusters: need 1 <= count <= N");
  if (count == 1) {
    std::vector<int> all(n);
    for (int v = 0; v < n; ++v) all[v] = v;
    return {all};
  }
  const int dims = std::min(count, n - 1);
  const Eigen::MatrixXd x = eig.eigenvectors.middleCols(1, dims);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd centers(count, dims);
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)));
  Eigen::VectorXd d2(n);
  for (int c = 1; c < count; ++c) {
    for (int v = 0; v < n; ++v) {
      double best = std::numeric_limits<double>::infinity();
      for (int p = 0; p < c; ++p) best = std::min(best, (x.row(v) - centers.row(p)).squaredNorm());
      d2(v) = best;
    }
    const double total = d2.sum();
    int pick = n - 1;
    if (total > 0.0) {
      double r = unit(rng) * total;
      for (int v = 0; v < n; ++v) {
        r -= d2(v);
        if (r <= 0.0) {
          pick = v;
          break;
        }
      }
    } else {
      pick = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    }
    centers.row(c) = x.row(pick);
  }

  std::vector<int> label(n, -1);
  for (int iter = 0; iter < 200; ++iter) {
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < count; ++c) {
        const double d = (x.row(v) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (label[v] != best) {
        label[v] = best;
        changed = true;
      }
    }
    // Refill empty clusters with the point farthest from its center.
    for (int c = 0; c < count; ++c) {
      if (std::find(label.begin(), label.end(), c) != label.end()) continue;
      int far = 0;
      double far_d = -1.0;
      for (int v = 0; v < n; ++v) {
        const double d = (x.row(v) - centers.row(label[v])).squaredNorm();
        const bool donor_ok = std::count(label.begin(), label.end(), label[v]) > 1;
        if (donor_ok && d > far_d) {
          far_d = d;
          far = v;
        }
      }
      label[far] = c;
      changed = true;
    }
    centers.setZero();
    Eigen::VectorXd sizes = Eigen::VectorXd::Zero(count);
    for (int v = 0; v < n; ++v) {
      centers.row(label[v]) += x.row(v);
      sizes(label[v]) += 1.0;
    }
    for (int c = 0; c < count; ++c) centers.row(c) /= sizes(c);
    if (!changed) break;
  }

  std::vector<std::vector<int>> groups(count);
  for (int v = 0; v < n; ++v) groups[label[v]].push_back(v);
  std::sort(groups.begin(), groups.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  return groups;
}

namespace {

Json subset_to_json(const SubsetSpec& s) {
  return {{"vertices", s.vertices},
          {"t_c", s.interval.center},
          {"length", s.interval.length},
          {"n_graph_atoms", s.n_graph_atoms},
          {"n_time_atoms", s.n_time_atoms}};
}

SubsetSpec subset_from_json(const Json& j) {
  SubsetSpec s;
  s.vertices = j.at("vertices").get<std::vector<int>>();
  s.interval.center = j.at("t_c").get<double>();
  s.interval.length = j.at("length").get<double>();
  s.n_graph_atoms = j.at("n_graph_atoms").get<int>();
  s.n_time_atoms = j.at("n_time_atoms").get<int>();
  return s;
}

}  // namespace

std::string DictionaryMetadata::to_json() const {
  Json j;
  j["kind"] = ggsp::to_string(kind);
  j["subsets"] = Json::array();
  for (const SubsetSpec& s : subsets) j["subsets"].push_back(subset_to_json(s));
  j["band"] = {{"spectral", band.spectral},
               {"center", band.frequency.center},
               {"half_width", band.frequency.half_width}};
  j["jft"] = {{"K", jft_K}, {"L", jft_L}};
  j["stvft"] = {{"Q", stvft.Q},
                {"tau0", stvft.tau0},
                {"omega0", stvft.omega0},
                {"rho", stvft.rho},
                {"max_frequency", stvft.max_frequency}};
  j["stvwt"] = {{"scales", stvwt.scales},
                {"a_list", stvwt.a_list},
                {"b_list", stvwt.b_list},
                {"omega0", stvwt.omega0}};
  j["atom_count"] = atom_count;
  j["dropped_atoms"] = dropped_atoms;
  return j.dump(2);
}

DictionaryMetadata DictionaryMetadata::from_json(const std::string& text) {
  const Json j = Json::parse(text);
  DictionaryMetadata m;
  m.kind = parse_dictionary_kind(j.at("kind").get<std::string>());
  for (const Json& s : j.at("subsets")) m.subsets.push_back(subset_from_json(s));
  const Json& band = j.at("band");
  m.band.spectral = band.at("spectral").get<std::vector<int>>();
  m.band.frequency.center = band.at("center").get<double>();
  m.band.frequency.half_width = band.at("half_width").get<double>();
  m.jft_K = j.at("jft").at("K").get<int>();
  m.jft_L = j.at("jft").at("L").get<int>();
  const Json& f = j.at("stvft");
  m.stvft.Q = f.at("Q").get<int>();
  m.stvft.tau0 = f.at("tau0").get<double>();
  m.stvft.omega0 = f.at("omega0").get<double>();
  m.stvft.rho = f.at("rho").get<double>();
  m.stvft.max_frequency = f.at("max_frequency").get<double>();
  const Json& w = j.at("stvwt");
  m.stvwt.scales = w.at("scales").get<std::vector<double>>();
  m.stvwt.a_list = w.at("a_list").get<std::vector<double>>();
  m.stvwt.b_list = w.at("b_list").get<std::vector<double>>();
  m.stvwt.omega0 = w.at("omega0").get<double>();
  m.atom_count = j.at("atom_count").get<long long>();
  m.dropped_atoms = j.at("dropped_atoms").get<int>();
  return m;
}

}  // namespace ggsp
