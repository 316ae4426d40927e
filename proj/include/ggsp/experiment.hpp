#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ggsp/dictionary.hpp"
#include "ggsp/graph.hpp"
#include "ggsp/learning.hpp"
#include "ggsp/samples.hpp"

namespace ggsp {

/// Reads a `vertex_id,t,value` CSV and resamples each vertex onto the grid by
/// linear interpolation (constant beyond the first and last observation).
/// Times are mapped through t' = (t - t_offset) * t_scale first.
Signal ingest_timeseries(const std::string& path, int n_vertices, const TimeGrid& grid,
                         double t_offset = 0.0, double t_scale = 1.0);
void export_timeseries(const Signal& f, const TimeGrid& grid, const std::string& path);

/// snr_db value meaning noiseless samples.
constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// sigma with 10 log10(mean(f^2) / sigma^2) = snr_db.
double noise_sigma(const Signal& f, double snr_db);

struct SampleSplit {
  SampleSet train;
  SampleSet test;
  SampleSet val;
};

/// Draws round(p_o M) train and test grid points and keeps the remaining
/// points for validation, all disjoint, then adds Gaussian noise at the
/// given SNR to every observation.
SampleSplit make_samples(const Signal& f, const TimeGrid& grid, double p_o, double snr_db,
                         std::uint64_t seed);

/// splitmix64-style mixing of seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

struct SyntheticGraphSpec {
  int n_vertices = 70;
  int neighbors = 4;
  std::uint64_t seed = 7;

  bool operator==(const SyntheticGraphSpec&) const = default;
};

/// Random points in the unit square joined to their nearest neighbors with
/// Gaussian weights; components are linked through their closest pairs.
Graph synthetic_graph(const SyntheticGraphSpec& spec);

struct SyntheticSignalSpec {
  std::vector<double> tc = {0.15, 0.4, 0.6, 0.85};
  std::vector<double> ell = {0.3, 0.2, 0.25, 0.35};
  int atoms_per_subset = 3;
  int top_graph = 3;
  int top_time = 3;
  double background = 0.05;  // background energy relative to the planted part
  int background_K = 4;
  int background_L = 3;

  bool operator==(const SyntheticSignalSpec&) const = default;
};

struct GridSpec {
  double delta = 1.0;
  int n_samples = 256;

  bool operator==(const GridSpec&) const = default;
};

struct BandSpec {
  int n_spectral = 10;        // W' = the lowest n_spectral Laplacian indices
  double center = 0.0;        // Omega' in rad/s
  double half_width = 62.83185307179586;

  bool operator==(const BandSpec&) const = default;
};

struct SubsetAssignment {
  int count = 4;
  std::string mode = "spectral";            // "spectral" or "explicit"
  std::vector<std::vector<int>> vertices;   // used for "explicit"
  std::uint64_t seed = 11;

  bool operator==(const SubsetAssignment&) const = default;
};

struct JecdSettings {
  int max_outer_iters = 30;
  double epsilon_relative = 1e-9;  // epsilon = epsilon_relative * ||Y_train||^2
  double eta_scale = 0.05;         // eta = eta_scale * delta^2 / ||Y_train||^2
  bool backtracking = true;
  bool exact_intervals = true;
  int n_graph_atoms = 0;           // 0: |W'|

  bool operator==(const JecdSettings&) const = default;
};

struct SweepSpec {
  std::string kind = "p_o";  // "p_o" or "snr"
  std::vector<double> p_o = {0.03, 0.05, 0.07, 0.10, 0.15};
  std::vector<double> snr_db = {0.0, 5.0, 10.0, 15.0, 20.0};
  double fixed_p_o = 0.10;
  double fixed_snr_db = 10.0;

  bool operator==(const SweepSpec&) const = default;
};

struct ExperimentConfig {
  std::string graph_file;   // empty: synthetic graph
  SyntheticGraphSpec graph;
  std::string signal_day1;  // empty: synthetic signals
  std::string signal_day2;
  double time_offset = 0.0;
  double time_scale = 1.0;
  SyntheticSignalSpec synthetic;
  GridSpec grid;
  BandSpec band;
  SubsetAssignment subsets;
  std::vector<std::string> dictionaries = {"JECD", "JFT", "STVFT", "STVWT"};
  JecdSettings jecd;
  int jft_K = 10;
  int jft_L = 10;
  StvftParams stvft;
  StvwtParams stvwt;
  double mu = 0.0;  // 0: selected on a held-out split
  std::vector<double> mu_grid = {3e-1, 1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  double lasso_tolerance = 1e-4;
  int lasso_max_sweeps = 2000;
  SweepSpec sweep;
  int repetitions = 10;
  std::uint64_t seed = 1;
  std::string output_dir = "results";

  void validate() const;
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  bool operator==(const ExperimentConfig&) const = default;
};

/// Graph, domain, band and subsets shared by all runs of a sweep.
class ExperimentSetup {
 public:
  explicit ExperimentSetup(const ExperimentConfig& config);

  const ExperimentConfig& config() const { return config_; }
  const Graph& graph() const { return graph_; }
  const JointDomain& domain() const { return *domain_; }
  const JointBand& band() const { return band_; }
  const std::vector<std::vector<int>>& vertex_sets() const { return vertex_sets_; }

  /// Subsets with the default initialization t_c = (i + 1/2) delta / I, l = delta / I.
  std::vector<SubsetSpec> initial_subsets() const;
  /// Subsets at the hidden parameters of the synthetic model.
  std::vector<SubsetSpec> planted_subsets() const;
  IntervalMask interval_mode() const;

  /// Signal pair (day 1, day 2) for a repetition.
  std::pair<Signal, Signal> signals(int repetition) const;
  /// One draw of the synthetic model.
  Signal synthetic_signal(std::uint64_t seed) const;

 private:
  ExperimentConfig config_;
  Graph graph_;
  std::unique_ptr<JointDomain> domain_;
  JointBand band_;
  std::vector<std::vector<int>> vertex_sets_;
};

struct ResultRow {
  std::string kind;
  std::string sweep;
  double point = 0.0;
  int repetition = 0;
  std::uint64_t seed = 0;
  double rse = 0.0;
  std::string error;  // empty when the run succeeded
  double wall_seconds = 0.0;
};

struct ResultsTable {
  std::vector<ResultRow> rows;
};

struct RunOutcome {
  double rse = 0.0;
  double mu = 0.0;
  std::optional<LearnState> learned;
};

/// One (kind, p_o, snr, repetition) run: fit on day 1, reconstruct day 2 from
/// its test split and score on its validation split.
RunOutcome run_once(const ExperimentSetup& setup, DictionaryKind kind, double p_o, double snr_db,
                    int repetition, int point_index);

ResultsTable run_sweep(const ExperimentConfig& config);
ResultsTable run_sweep(const ExperimentSetup& setup);

struct SummaryRow {
  std::string kind;
  std::string sweep;
  double point = 0.0;
  int count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_ = 0.0;
};

std::vector<SummaryRow> summarize(const ResultsTable& table);

std::string results_csv(const ResultsTable& table);
std::string summary_csv(const std::vector<SummaryRow>& summary);
std::string timing_csv(const ResultsTable& table);
ResultsTable parse_results_csv(const std::string& text);

/// Writes results.csv, summary.csv, timing.csv and config.json into dir.
void emit(const ResultsTable& table, const ExperimentConfig& config, const std::string& dir);

/// Output directory with the GGSP_OUTPUT_DIR override applied.
std::string resolve_output_dir(const std::string& configured);

}  // namespace ggsp
