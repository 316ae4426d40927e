#include "ggsp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ggsp/io_util.hpp"
#include "ggsp/reconstruction.hpp"
#include "json.hpp"

namespace ggsp {

namespace {

using Json = nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

}  // namespace

Signal ingest_timeseries(const std::string& path, int n_vertices, const TimeGrid& grid,
                         double t_offset, double t_scale) {
  if (!(t_scale > 0.0)) throw std::invalid_argument("ingest_timeseries: time scale must be positive");
  CsvReader reader(path);
  reader.expect_header({"vertex_id", "t", "value"});
  std::map<int, std::vector<std::pair<double, double>>> series;
  std::vector<std::string> fields;
  int max_id = -1;
  while (reader.next(fields)) {
    if (fields.size() != 3) reader.fail("expected 3 fields");
    const int v = reader.parse_int(fields[0]);
    if (v < 0) reader.fail("negative vertex id");
    const double t = (reader.parse_double(fields[1]) - t_offset) * t_scale;
    const double value = reader.parse_double(fields[2]);
    if (t < -1e-12 * grid.delta || t > grid.delta * (1.0 + 1e-12)) {
      reader.fail("time outside [0, delta] after rescaling");
    }
    if (n_vertices > 0 && v >= n_vertices) reader.fail("vertex id exceeds the graph size");
    series[v].emplace_back(t, value);
    max_id = std::max(max_id, v);
  }
  if (series.empty()) throw std::runtime_error(path + ": no observations");
  const int n = n_vertices > 0 ? n_vertices : max_id + 1;
  Signal f(n, grid.n_samples);
  for (int v = 0; v < n; ++v) {
    auto it = series.find(v);
    if (it == series.end()) throw std::runtime_error(path + ": vertex " + std::to_string(v) + " has no observations");
    auto& obs = it->second;
    std::stable_sort(obs.begin(), obs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int j = 0; j < grid.n_samples; ++j) {
      const double t = grid.point(j);
      if (t <= obs.front().first) {
        f(v, j) = obs.front().second;
      } else if (t >= obs.back().first) {
        f(v, j) = obs.back().second;
      } else {
        const auto hi = std::upper_bound(obs.begin(), obs.end(), t,
                                         [](double x, const auto& p) { return x < p.first; });
        const auto lo = hi - 1;
        const double span = hi->first - lo->first;
        const double w = span > 0.0 ? (t - lo->first) / span : 0.0;
        f(v, j) = (1.0 - w) * lo->second + w * hi->second;
      }
    }
  }
  return f;
}

void export_timeseries(const Signal& f, const TimeGrid& grid, const std::string& path) {
  if (f.cols() != grid.n_samples) throw std::invalid_argument("export_timeseries: grid mismatch");
  std::string text = "vertex_id,t,value\n";
  for (Eigen::Index v = 0; v < f.rows(); ++v) {
    for (int j = 0; j < grid.n_samples; ++j) {
      text += std::to_string(v) + ',' + format_double(grid.point(j)) + ',' + format_double(f(v, j)) + '\n';
    }
  }
  write_file(path, text);
}

double noise_sigma(const Signal& f, double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
  const double power = f.squaredNorm() / static_cast<double>(f.size());
  return std::sqrt(power / std::pow(10.0, snr_db / 10.0));
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a * 0x9E3779B97F4A7C15ull + b + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

SampleSplit make_samples(const Signal& f, const TimeGrid& grid, double p_o, double snr_db,
                         std::uint64_t seed) {
  if (!(p_o > 0.0 && p_o < 1.0)) throw std::invalid_argument("make_samples: p_o must lie in (0, 1)");
  if (f.cols() != grid.n_samples) throw std::invalid_argument("make_samples: grid mismatch");
  const long long total = static_cast<long long>(f.size());
  const long long count = std::llround(p_o * static_cast<double>(total));
  if (count == 0) throw std::invalid_argument("make_samples: p_o rounds to zero samples");
  if (2 * count >= total) {
    throw std::invalid_argument("make_samples: train and test splits leave no validation points");
  }
  std::vector<long long> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0LL);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const long long n = f.rows();
  const double sigma = noise_sigma(f, snr_db);
  std::normal_distribution<double> noise(0.0, 1.0);

  SampleSplit split;
  split.train.role = SampleRole::Train;
  split.test.role = SampleRole::Test;
  split.val.role = SampleRole::Validation;
  auto fill = [&](SampleSet& set, long long begin, long long end) {
    std::vector<long long> idx(order.begin() + begin, order.begin() + end);
    std::sort(idx.begin(), idx.end());
    set.noise_sigma = sigma;
    set.entries.reserve(idx.size());
    for (long long k : idx) {
      const int v = static_cast<int>(k % n);
      const int j = static_cast<int>(k / n);
      const double eps = sigma > 0.0 ? sigma * noise(rng) : 0.0;
      set.entries.push_back({v, grid.point(j), f(v, j) + eps});
    }
  };
  fill(split.train, 0, count);
  fill(split.test, count, 2 * count);
  fill(split.val, 2 * count, total);
  return split;
}

Graph synthetic_graph(const SyntheticGraphSpec& spec) {
  const int n = spec.n_vertices;
  if (n < 1) throw std::invalid_argument("synthetic_graph: need at least one vertex");
  if (n == 1) return Graph(Eigen::MatrixXd::Zero(1, 1));
  const int k = std::clamp(spec.neighbors, 1, n - 1);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd pos(n, 2);
  for (int v = 0; v < n; ++v) {
    pos(v, 0) = unit(rng);
    pos(v, 1) = unit(rng);
  }
  Eigen::MatrixXd dist(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) dist(a, b) = (pos.row(a) - pos.row(b)).norm();
  }
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  double scale = 0.0;
  for (int a = 0; a < n; ++a) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return dist(a, x) < dist(a, y); });
    for (int i = 1; i <= k; ++i) {
      adj(a, order[i]) = 1.0;
      adj(order[i], a) = 1.0;
    }
    scale += dist(a, order[k]);
  }
  scale /= n;
  // Link components through their closest vertex pair until connected.
  while (true) {
    const auto comps = connected_components(adj);
    if (comps.size() <= 1) break;
    double best = std::numeric_limits<double>::infinity();
    int ba = 0, bb = 0;
    for (int a : comps[0]) {
      for (std::size_t c = 1; c < comps.size(); ++c) {
        for (int b : comps[c]) {
          if (dist(a, b) < best) {
            best = dist(a, b);
            ba = a;
            bb = b;
          }
        }
      }
    }
    adj(ba, bb) = 1.0;
    adj(bb, ba) = 1.0;
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (adj(a, b) > 0.0) w(a, b) = std::exp(-dist(a, b) * dist(a, b) / (scale * scale));
    }
  }
  return Graph(w);
}

// ---- configuration ----

void ExperimentConfig::validate() const {
  if (grid.n_samples < 1 || !(grid.delta > 0.0)) throw std::invalid_argument("config: invalid grid");
  if (band.n_spectral < 1) throw std::invalid_argument("config: band.n_spectral must be positive");
  if (!(band.half_width > 0.0)) throw std::invalid_argument("config: band.half_width must be positive");
  if (subsets.count < 1) throw std::invalid_argument("config: subsets.count must be positive");
  if (subsets.mode != "spectral" && subsets.mode != "explicit") {
    throw std::invalid_argument("config: subsets.mode must be 'spectral' or 'explicit'");
  }
  if (repetitions < 1) throw std::invalid_argument("config: repetitions must be at least 1");
  if (sweep.kind != "p_o" && sweep.kind != "snr") {
    throw std::invalid_argument("config: sweep.kind must be 'p_o' or 'snr'");
  }
  for (double p : sweep.p_o) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("config: p_o values must lie in (0, 1)");
  }
  if (!(sweep.fixed_p_o > 0.0 && sweep.fixed_p_o < 1.0)) {
    throw std::invalid_argument("config: sweep.fixed_p_o must lie in (0, 1)");
  }
  if (dictionaries.empty()) throw std::invalid_argument("config: no dictionary kinds");
  for (const std::string& d : dictionaries) parse_dictionary_kind(d);
  if (mu < 0.0) throw std::invalid_argument("config: mu must be nonnegative (0 selects it)");
  if (!(lasso_tolerance > 0.0)) throw std::invalid_argument("config: lasso_tolerance must be positive");
  if (lasso_max_sweeps < 1) throw std::invalid_argument("config: lasso_max_sweeps must be positive");
  if (signal_day1.empty() != signal_day2.empty()) {
    throw std::invalid_argument("config: dataset mode needs both signal_day1 and signal_day2");
  }
}

namespace {

Json double_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double double_from(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_null()) return kNoiseless;
  return v.get<double>();
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string ExperimentConfig::to_json() const {
  Json j;
  j["graph_file"] = graph_file;
  j["graph"] = {{"n_vertices", graph.n_vertices}, {"neighbors", graph.neighbors}, {"seed", graph.seed}};
  j["signal_day1"] = signal_day1;
  j["signal_day2"] = signal_day2;
  j["time_offset"] = time_offset;
  j["time_scale"] = time_scale;
  j["synthetic"] = {{"tc", synthetic.tc},
                    {"ell", synthetic.ell},
                    {"atoms_per_subset", synthetic.atoms_per_subset},
                    {"top_graph", synthetic.top_graph},
                    {"top_time", synthetic.top_time},
                    {"background", synthetic.background},
                    {"background_K", synthetic.background_K},
                    {"background_L", synthetic.background_L}};
  j["grid"] = {{"delta", grid.delta}, {"n_samples", grid.n_samples}};
  j["band"] = {{"n_spectral", band.n_spectral}, {"center", band.center}, {"half_width", band.half_width}};
  j["subsets"] = {{"count", subsets.count},
                  {"mode", subsets.mode},
                  {"vertices", subsets.vertices},
                  {"seed", subsets.seed}};
  j["dictionaries"] = dictionaries;
  j["jecd"] = {{"max_outer_iters", jecd.max_outer_iters},
               {"epsilon_relative", jecd.epsilon_relative},
               {"eta_scale", jecd.eta_scale},
               {"backtracking", jecd.backtracking},
               {"exact_intervals", jecd.exact_intervals},
               {"n_graph_atoms", jecd.n_graph_atoms}};
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
  j["mu"] = mu;
  j["mu_grid"] = mu_grid;
  j["lasso_tolerance"] = lasso_tolerance;
  j["lasso_max_sweeps"] = lasso_max_sweeps;
  Json snr = Json::array();
  for (double s : sweep.snr_db) snr.push_back(double_or_null(s));
  j["sweep"] = {{"kind", sweep.kind},
                {"p_o", sweep.p_o},
                {"snr_db", snr},
                {"fixed_p_o", sweep.fixed_p_o},
                {"fixed_snr_db", double_or_null(sweep.fixed_snr_db)}};
  j["repetitions"] = repetitions;
  j["seed"] = seed;
  j["output_dir"] = output_dir;
  return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const Json j = Json::parse(text);
  ExperimentConfig c;
  read(j, "graph_file", c.graph_file);
  if (j.contains("graph")) {
    const Json& g = j.at("graph");
    read(g, "n_vertices", c.graph.n_vertices);
    read(g, "neighbors", c.graph.neighbors);
    read(g, "seed", c.graph.seed);
  }
  read(j, "signal_day1", c.signal_day1);
  read(j, "signal_day2", c.signal_day2);
  read(j, "time_offset", c.time_offset);
  read(j, "time_scale", c.time_scale);
  if (j.contains("synthetic")) {
    const Json& s = j.at("synthetic");
    read(s, "tc", c.synthetic.tc);
    read(s, "ell", c.synthetic.ell);
    read(s, "atoms_per_subset", c.synthetic.atoms_per_subset);
    read(s, "top_graph", c.synthetic.top_graph);
    read(s, "top_time", c.synthetic.top_time);
    read(s, "background", c.synthetic.background);
    read(s, "background_K", c.synthetic.background_K);
    read(s, "background_L", c.synthetic.background_L);
  }
  if (j.contains("grid")) {
    read(j.at("grid"), "delta", c.grid.delta);
    read(j.at("grid"), "n_samples", c.grid.n_samples);
  }
  if (j.contains("band")) {
    read(j.at("band"), "n_spectral", c.band.n_spectral);
    read(j.at("band"), "center", c.band.center);
    read(j.at("band"), "half_width", c.band.half_width);
  }
  if (j.contains("subsets")) {
    const Json& s = j.at("subsets");
    read(s, "count", c.subsets.count);
    read(s, "mode", c.subsets.mode);
    read(s, "vertices", c.subsets.vertices);
    read(s, "seed", c.subsets.seed);
  }
  read(j, "dictionaries", c.dictionaries);
  if (j.contains("jecd")) {
    const Json& s = j.at("jecd");
    read(s, "max_outer_iters", c.jecd.max_outer_iters);
    read(s, "epsilon_relative", c.jecd.epsilon_relative);
    read(s, "eta_scale", c.jecd.eta_scale);
    read(s, "backtracking", c.jecd.backtracking);
    read(s, "exact_intervals", c.jecd.exact_intervals);
    read(s, "n_graph_atoms", c.jecd.n_graph_atoms);
  }
  if (j.contains("jft")) {
    read(j.at("jft"), "K", c.jft_K);
    read(j.at("jft"), "L", c.jft_L);
  }
  if (j.contains("stvft")) {
    const Json& s = j.at("stvft");
    read(s, "Q", c.stvft.Q);
    read(s, "tau0", c.stvft.tau0);
    read(s, "omega0", c.stvft.omega0);
    read(s, "rho", c.stvft.rho);
    read(s, "max_frequency", c.stvft.max_frequency);
  }
  if (j.contains("stvwt")) {
    const Json& s = j.at("stvwt");
    read(s, "scales", c.stvwt.scales);
    read(s, "a_list", c.stvwt.a_list);
    read(s, "b_list", c.stvwt.b_list);
    read(s, "omega0", c.stvwt.omega0);
  }
  read(j, "mu", c.mu);
  read(j, "mu_grid", c.mu_grid);
  read(j, "lasso_tolerance", c.lasso_tolerance);
  read(j, "lasso_max_sweeps", c.lasso_max_sweeps);
  if (j.contains("sweep")) {
    const Json& s = j.at("sweep");
    read(s, "kind", c.sweep.kind);
    read(s, "p_o", c.sweep.p_o);
    if (s.contains("snr_db")) {
      c.sweep.snr_db.clear();
      for (const Json& v : s.at("snr_db")) c.sweep.snr_db.push_back(v.is_null() ? kNoiseless : v.get<double>());
    }
    read(s, "fixed_p_o", c.sweep.fixed_p_o);
    c.sweep.fixed_snr_db = double_from(s, "fixed_snr_db", c.sweep.fixed_snr_db);
  }
  read(j, "repetitions", c.repetitions);
  read(j, "seed", c.seed);
  read(j, "output_dir", c.output_dir);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  try {
    return from_json(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

// ---- setup ----

namespace {

Graph load_graph(const ExperimentConfig& c) {
  if (!c.graph_file.empty()) return read_edge_list_csv(c.graph_file);
  return synthetic_graph(c.graph);
}

}  // namespace

ExperimentSetup::ExperimentSetup(const ExperimentConfig& config)
    : config_(config), graph_(load_graph(config)) {
  config_.validate();
  domain_ = std::make_unique<JointDomain>(graph_, TimeGrid(config_.grid.delta, config_.grid.n_samples));
  const int n = domain_->n_vertices();
  if (config_.band.n_spectral > n) throw std::invalid_argument("config: band.n_spectral exceeds N");
  band_.spectral.resize(config_.band.n_spectral);
  std::iota(band_.spectral.begin(), band_.spectral.end(), 0);
  band_.frequency = FrequencyBand(config_.band.center, config_.band.half_width);
  if (config_.subsets.mode == "explicit") {
    vertex_sets_ = config_.subsets.vertices;
    if (static_cast<int>(vertex_sets_.size()) != config_.subsets.count) {
      throw std::invalid_argument("config: explicit subsets do not match subsets.count");
    }
  } else {
    vertex_sets_ = spectral_clusters(domain_->eigensystem(), config_.subsets.count, config_.subsets.seed);
  }
}

IntervalMask ExperimentSetup::interval_mode() const {
  return config_.jecd.exact_intervals ? IntervalMask::Exact : IntervalMask::Midpoint;
}

std::vector<SubsetSpec> ExperimentSetup::initial_subsets() const {
  const int count = config_.subsets.count;
  const double delta = config_.grid.delta;
  const int omega = static_cast<int>(domain_->frame().band_columns(band_.frequency).size());
  std::vector<SubsetSpec> out;
  for (int i = 0; i < count; ++i) {
    SubsetSpec s;
    s.vertices = vertex_sets_[i];
    s.interval = {(i + 0.5) * delta / count, delta / count};
    s.n_graph_atoms = config_.jecd.n_graph_atoms > 0 ? config_.jecd.n_graph_atoms
                                                     : static_cast<int>(band_.spectral.size());
    s.n_time_atoms = default_time_atoms(s.interval.length, band_.frequency, omega);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SubsetSpec> ExperimentSetup::planted_subsets() const {
  const SyntheticSignalSpec& syn = config_.synthetic;
  if (static_cast<int>(syn.tc.size()) != config_.subsets.count ||
      static_cast<int>(syn.ell.size()) != config_.subsets.count) {
    throw std::invalid_argument("config: synthetic tc/ell lengths must equal subsets.count");
  }
  std::vector<SubsetSpec> out;
  for (int i = 0; i < config_.subsets.count; ++i) {
    SubsetSpec s;
    s.vertices = vertex_sets_[i];
    s.interval = {syn.tc[i], syn.ell[i]};
    s.n_graph_atoms = syn.top_graph;
    s.n_time_atoms = syn.top_time;
    out.push_back(std::move(s));
  }
  return out;
}

Signal ExperimentSetup::synthetic_signal(std::uint64_t seed) const {
  const SyntheticSignalSpec& syn = config_.synthetic;
  const Dictionary planted = build_jecd(*domain_, planted_subsets(), band_, interval_mode());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Signal f = Signal::Zero(domain_->n_vertices(), domain_->n_times());
  for (const SeparableBlock& block : planted.blocks) {
    std::vector<Eigen::Index> choices(static_cast<std::size_t>(block.size()));
    std::iota(choices.begin(), choices.end(), 0);
    std::shuffle(choices.begin(), choices.end(), rng);
    const int take = std::min<int>(syn.atoms_per_subset, static_cast<int>(choices.size()));
    for (int c = 0; c < take; ++c) {
      const Eigen::Index a = choices[c] / block.n_time();
      const Eigen::Index b = choices[c] % block.n_time();
      const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
      f += sign * (1.0 + unit(rng)) * block.atom(a, b);
    }
  }
  if (syn.background > 0.0) {
    const Dictionary bg = build_jft(*domain_, syn.background_K, syn.background_L);
    std::normal_distribution<double> normal(0.0, 1.0);
    Signal g = Signal::Zero(f.rows(), f.cols());
    for (Eigen::Index a = 0; a < bg.size(); ++a) g += normal(rng) * bg.atom(a);
    const double gn = g.squaredNorm();
    if (gn > 0.0) f += std::sqrt(syn.background * f.squaredNorm() / gn) * g;
  }
  return f;
}

std::pair<Signal, Signal> ExperimentSetup::signals(int repetition) const {
  if (!config_.signal_day1.empty()) {
    const TimeGrid& grid = domain_->grid();
    return {ingest_timeseries(config_.signal_day1, domain_->n_vertices(), grid, config_.time_offset,
                              config_.time_scale),
            ingest_timeseries(config_.signal_day2, domain_->n_vertices(), grid, config_.time_offset,
                              config_.time_scale)};
  }
  const std::uint64_t base = mix_seed(config_.seed, static_cast<std::uint64_t>(repetition));
  return {synthetic_signal(mix_seed(base, 1)), synthetic_signal(mix_seed(base, 2))};
}

// ---- runs ----

namespace {

Dictionary baseline_dictionary(const ExperimentSetup& setup, DictionaryKind kind) {
  const ExperimentConfig& c = setup.config();
  switch (kind) {
    case DictionaryKind::JFT: return build_jft(setup.domain(), c.jft_K, c.jft_L);
    case DictionaryKind::STVFT: return build_stvft(setup.domain(), c.stvft);
    case DictionaryKind::STVWT: return build_stvwt(setup.domain(), c.stvwt);
    case DictionaryKind::JECD: break;
  }
  throw std::logic_error("baseline_dictionary: JECD is learned");
}

std::uint64_t sampling_seed(const ExperimentConfig& c, int repetition, int point_index, int day) {
  std::uint64_t s = mix_seed(c.seed, static_cast<std::uint64_t>(repetition));
  s = mix_seed(s, 1000 + static_cast<std::uint64_t>(point_index));
  return mix_seed(s, static_cast<std::uint64_t>(day));
}

}  // namespace

RunOutcome run_once(const ExperimentSetup& setup, DictionaryKind kind, double p_o, double snr_db,
                    int repetition, int point_index) {
  const ExperimentConfig& c = setup.config();
  const JointDomain& domain = setup.domain();
  const auto [day1, day2] = setup.signals(repetition);
  const SampleSplit s1 = make_samples(day1, domain.grid(), p_o, snr_db, sampling_seed(c, repetition, point_index, 1));
  const SampleSplit s2 = make_samples(day2, domain.grid(), p_o, snr_db, sampling_seed(c, repetition, point_index, 2));
  const bool synthetic = c.signal_day1.empty();
  LassoOptions lasso_options;
  lasso_options.tolerance = c.lasso_tolerance;
  lasso_options.max_sweeps = c.lasso_max_sweeps;
  const std::uint64_t mu_seed = sampling_seed(c, repetition, point_index, 3);

  RunOutcome outcome;
  Dictionary dict;
  const Eigen::VectorXd y1 = s1.train.values();
  if (kind == DictionaryKind::JECD) {
    const JecdBuilder builder(domain, setup.initial_subsets(), setup.band(), setup.interval_mode());
    const Eigen::MatrixXd d0 = evaluate_at_samples(domain, builder.build(), s1.train.points());
    outcome.mu = c.mu > 0.0 ? c.mu : select_mu(d0, y1, mu_seed, c.mu_grid, lasso_options).mu;
    LearnConfig lc;
    lc.mu = outcome.mu;
    const double y2 = y1.squaredNorm();
    const double delta = c.grid.delta;
    lc.eta1 = lc.eta2 = y2 > 0.0 ? c.jecd.eta_scale * delta * delta / y2 : 0.0;
    lc.epsilon = std::max(c.jecd.epsilon_relative * y2, std::numeric_limits<double>::min());
    lc.max_outer_iters = c.jecd.max_outer_iters;
    lc.backtracking = c.jecd.backtracking;
    lc.lasso = lasso_options;
    LearnState state = jecd_learn(builder, s1.train, lc);
    dict = builder.build(state.intervals());
    outcome.learned = std::move(state);
  } else {
    dict = baseline_dictionary(setup, kind);
    const Eigen::MatrixXd d1 = evaluate_at_samples(domain, dict, s1.train.points());
    outcome.mu = c.mu > 0.0 ? c.mu : select_mu(d1, y1, mu_seed, c.mu_grid, lasso_options).mu;
  }
  const Eigen::VectorXd x = fit_codes(domain, dict, s2.test, outcome.mu, lasso_options);
  const std::vector<SamplePoint> val = s2.val.points();
  const Eigen::VectorXd truth = synthetic ? gather(domain, day2, val) : s2.val.values();
  outcome.rse = rse(truth, predict(domain, dict, x, val));
  return outcome;
}

ResultsTable run_sweep(const ExperimentConfig& config) {
  const ExperimentSetup setup(config);
  return run_sweep(setup);
}

ResultsTable run_sweep(const ExperimentSetup& setup) {
  const ExperimentConfig& c = setup.config();
  const bool by_po = c.sweep.kind == "p_o";
  const std::vector<double>& points = by_po ? c.sweep.p_o : c.sweep.snr_db;
  ResultsTable table;
  for (const std::string& name : c.dictionaries) {
    const DictionaryKind kind = parse_dictionary_kind(name);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const double p_o = by_po ? points[p] : c.sweep.fixed_p_o;
      const double snr = by_po ? c.sweep.fixed_snr_db : points[p];
      for (int r = 0; r < c.repetitions; ++r) {
        ResultRow row;
        row.kind = to_string(kind);
        row.sweep = c.sweep.kind;
        row.point = points[p];
        row.repetition = r;
        row.seed = sampling_seed(c, r, static_cast<int>(p), 0);
        const auto start = std::chrono::steady_clock::now();
        try {
          row.rse = run_once(setup, kind, p_o, snr, r, static_cast<int>(p)).rse;
        } catch (const std::exception& e) {
          row.rse = std::numeric_limits<double>::quiet_NaN();
          row.error = sanitize(e.what());
        }
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

std::vector<SummaryRow> summarize(const ResultsTable& table) {
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> values;
  for (const ResultRow& row : table.rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SummaryRow& s) {
      return s.kind == row.kind && s.sweep == row.sweep && s.point == row.point;
    });
    std::size_t idx;
    if (it == out.end()) {
      out.push_back({row.kind, row.sweep, row.point, 0, 0.0, 0.0, 0.0});
      values.emplace_back();
      idx = out.size() - 1;
    } else {
      idx = static_cast<std::size_t>(it - out.begin());
    }
    if (row.error.empty() && std::isfinite(row.rse)) values[idx].push_back(row.rse);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::vector<double>& v = values[i];
    SummaryRow& s = out[i];
    s.count = static_cast<int>(v.size());
    if (v.empty()) {
      s.mean = s.stddev = s.stderr_ = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stddev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(v.size()));
  }
  return out;
}

std::string results_csv(const ResultsTable& table) {
  std::string text = "kind,sweep,point,repetition,seed,rse,error\n";
  for (const ResultRow& r : table.rows) {
    text += r.kind + ',' + r.sweep + ',' + format_double(r.point) + ',' + std::to_string(r.repetition) + ',' +
            std::to_string(r.seed) + ',' + format_double(r.rse) + ',' + sanitize(r.error) + '\n';
  }
  return text;
}

std::string summary_csv(const std::vector<SummaryRow>& summary) {
  std::string text = "kind,sweep,point,n,mean,std,stderr\n";
  for (const SummaryRow& s : summary) {
    text += s.kind + ',' + s.sweep + ',' + format_double(s.point) + ',' + std::to_string(s.count) + ',' +
            format_double(s.mean) + ',' + format_double(s.stddev) + ',' + format_double(s.stderr_) + '\n';
  }
  return text;
}

std::string timing_csv(const ResultsTable& table) {
  std::string text = "kind,sweep,point,repetition,wall_seconds\n";
  for (const ResultRow& r : table.rows) {
    text += r.kind + ',' + r.sweep + ',' + format_double(r.point) + ',' + std::to_string(r.repetition) + ',' +
            format_double(r.wall_seconds) + '\n';
  }
  return text;
}

ResultsTable parse_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "kind,sweep,point,repetition,seed,rse,error") {
    throw std::runtime_error("results.csv: unexpected header");
  }
  ResultsTable table;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 7) throw std::runtime_error("results.csv:" + std::to_string(line_no) + ": expected 7 fields");
    ResultRow r;
    r.kind = f[0];
    r.sweep = f[1];
    r.point = std::stod(f[2]);
    r.repetition = std::stoi(f[3]);
    r.seed = std::stoull(f[4]);
    r.rse = f[5] == "nan" || f[5] == "-nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(f[5]);
    r.error = f[6];
    table.rows.push_back(std::move(r));
  }
  return table;
}

std::string resolve_output_dir(const std::string& configured) {
  if (const char* env = std::getenv("GGSP_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return configured;
}

void emit(const ResultsTable& table, const ExperimentConfig& config, const std::string& dir) {
  const std::filesystem::path out(dir);
  std::filesystem::create_directories(out);
  write_file(out / "results.csv", results_csv(table));
  write_file(out / "summary.csv", summary_csv(summarize(table)));
  write_file(out / "timing.csv", timing_csv(table));
  write_file(out / "config.json", config.to_json());
}

}  // namespace ggsp
