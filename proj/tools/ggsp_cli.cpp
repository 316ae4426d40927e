#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ggsp/concentration.hpp"
#include "ggsp/experiment.hpp"
#include "ggsp/learning.hpp"
#include "ggsp/uncertainty.hpp"

namespace {

using namespace ggsp;

struct Common {
  std::string config_path;
  std::string graph_file;
  int n_vertices = 0;
  int n_samples = 0;
  double delta = 0.0;
  std::string output;
  int repetitions = 0;
  long long seed = -1;
};

ExperimentConfig load_config(const Common& c) {
  ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(c.config_path);
  if (!c.graph_file.empty()) cfg.graph_file = c.graph_file;
  if (c.n_vertices > 0) cfg.graph.n_vertices = c.n_vertices;
  if (c.n_samples > 0) cfg.grid.n_samples = c.n_samples;
  if (c.delta > 0.0) cfg.grid.delta = c.delta;
  if (c.repetitions > 0) cfg.repetitions = c.repetitions;
  if (c.seed >= 0) cfg.seed = static_cast<std::uint64_t>(c.seed);
  if (!c.output.empty()) cfg.output_dir = c.output;
  cfg.output_dir = resolve_output_dir(cfg.output_dir);
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config_path, "JSON experiment configuration");
  app->add_option("--graph", c.graph_file, "edge list CSV (src,dst,weight)");
  app->add_option("--vertices", c.n_vertices, "vertex count of the synthetic graph");
  app->add_option("--samples", c.n_samples, "time grid size T_g");
  app->add_option("--delta", c.delta, "signal length");
  app->add_option("-o,--output", c.output, "output directory (GGSP_OUTPUT_DIR overrides)");
  app->add_option("--repetitions", c.repetitions, "repetitions per sweep point");
  app->add_option("--seed", c.seed, "master seed");
}

struct Selection {
  std::vector<int> vertices;
  double t_center = 0.5;
  double t_length = 0.5;
  std::vector<int> spectral;
  double band_center = 0.0;
  double band_half_width = 0.0;
};

void add_selection(CLI::App* app, Selection& s) {
  app->add_option("--set-vertices", s.vertices, "vertices of V' (default: all)")->delimiter(',');
  app->add_option("--t-center", s.t_center, "center of T'");
  app->add_option("--t-length", s.t_length, "length of T'");
  app->add_option("--spectral", s.spectral, "Laplacian indices of W' (default: band.n_spectral lowest)")
      ->delimiter(',');
  app->add_option("--band-center", s.band_center, "center of Omega' in rad/s");
  app->add_option("--band-half-width", s.band_half_width, "half width of Omega' in rad/s (default: config band)");
}

struct Masks {
  VertexTimeMask s;
  SpectralFrequencyMask sigma;
};

Masks build_masks(const ExperimentSetup& setup, Selection sel) {
  const JointDomain& d = setup.domain();
  if (sel.vertices.empty()) {
    for (int v = 0; v < d.n_vertices(); ++v) sel.vertices.push_back(v);
  }
  if (sel.spectral.empty()) sel.spectral = setup.band().spectral;
  const double hw = sel.band_half_width > 0.0 ? sel.band_half_width : setup.config().band.half_width;
  const TimeInterval interval{sel.t_center, sel.t_length};
  return {VertexTimeMask::separable(d.n_vertices(), sel.vertices, d.grid(), interval),
          SpectralFrequencyMask::separable(d, sel.spectral, FrequencyBand(sel.band_center, hw))};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_region(const Common& c, const Selection& sel, int points) {
  const ExperimentSetup setup(load_config(c));
  const Masks m = build_masks(setup, sel);
  const FeasibleRegion region = feasible_region(setup.domain(), m.s, m.sigma);
  const std::filesystem::path path = std::filesystem::path(setup.config().output_dir) / "region.csv";
  write_text(path, region.to_csv(points));
  std::printf("lambda(S,Sigma)=%.12g lambda(S',Sigma)=%.12g lambda(S,Sigma')=%.12g lambda(S',Sigma')=%.12g\n",
              region.lambda_s_sigma, region.lambda_sbar_sigma, region.lambda_s_sigmabar,
              region.lambda_sbar_sigmabar);
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_basis(const Common& c, const Selection& sel, int k) {
  const ExperimentSetup setup(load_config(c));
  const Masks m = build_masks(setup, sel);
  const ConcentratedBasis basis = max_concentrated_basis(setup.domain(), m.s, m.sigma, k);
  const std::filesystem::path dir(setup.config().output_dir);
  std::string conc = "index,concentration\n";
  std::string atoms = "atom,vertex,t,value\n";
  char buf[96];
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(i), basis.concentrations(i));
    conc += buf;
    const Signal& a = basis.atoms[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index v = 0; v < a.rows(); ++v) {
        std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g\n", static_cast<long long>(i),
                      static_cast<long long>(v), setup.domain().grid().point(static_cast<int>(j)), a(v, j));
        atoms += buf;
      }
    }
  }
  write_text(dir / "concentrations.csv", conc);
  write_text(dir / "atoms.csv", atoms);
  const DualOrthogonality check = dual_orthogonality_check(basis);
  std::printf("k=%lld lambda_1=%.12g dual-orthogonality residual=%.3g\n", static_cast<long long>(basis.size()),
              basis.size() ? basis.concentrations(0) : 0.0, check.max());
  std::printf("wrote %s and %s\n", (dir / "concentrations.csv").string().c_str(),
              (dir / "atoms.csv").string().c_str());
  return 0;
}

int cmd_learn(const Common& c, double p_o, double snr, int repetition) {
  const ExperimentConfig cfg = load_config(c);
  const ExperimentSetup setup(cfg);
  const RunOutcome out = run_once(setup, DictionaryKind::JECD, p_o, snr, repetition, 0);
  const std::filesystem::path path = std::filesystem::path(cfg.output_dir) / "loss_trace.csv";
  write_text(path, loss_trace_csv(*out.learned));
  std::printf("iterations=%d mu=%.6g final_loss=%.12g day2_rse=%.6g\n", out.learned->iterations, out.mu,
              out.learned->loss_trace.back(), out.rse);
  for (std::size_t i = 0; i < out.learned->tc.size(); ++i) {
    std::printf("subset %zu: t_c=%.6f l=%.6f\n", i, out.learned->tc[i], out.learned->ell[i]);
  }
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int cmd_sweep(const Common& c, const std::string& kind) {
  ExperimentConfig cfg = load_config(c);
  if (!kind.empty()) cfg.sweep.kind = kind;
  cfg.validate();
  const ResultsTable table = run_sweep(cfg);
  emit(table, cfg, cfg.output_dir);
  for (const SummaryRow& s : summarize(table)) {
    std::printf("%-6s %s=%-6g n=%d mean=%.6g std=%.3g\n", s.kind.c_str(), s.sweep.c_str(), s.point, s.count,
                s.mean, s.stddev);
  }
  std::printf("wrote %s/results.csv\n", cfg.output_dir.c_str());
  return 0;
}

int cmd_synth(const Common& c, int repetition) {
  const ExperimentConfig cfg = load_config(c);
  const ExperimentSetup setup(cfg);
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  write_edge_list_csv(setup.graph(), (dir / "graph.csv").string());
  const auto [day1, day2] = setup.signals(repetition);
  export_timeseries(day1, setup.domain().grid(), (dir / "day1.csv").string());
  export_timeseries(day2, setup.domain().grid(), (dir / "day2.csv").string());
  write_text(dir / "config.json", cfg.to_json());
  std::printf("wrote graph.csv, day1.csv, day2.csv to %s\n", dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized graph signal processing: uncertainty regions, concentrated bases and JECD learning"};
  app.require_subcommand(1);
  Common common;

  Selection region_sel;
  int region_points = 256;
  auto* region = app.add_subcommand("region", "feasible (alpha, beta) region of a separable S and Sigma as CSV");
  add_common(region, common);
  add_selection(region, region_sel);
  region->add_option("--points", region_points, "boundary points per arc");

  Selection basis_sel;
  int basis_k = 4;
  auto* basis = app.add_subcommand("basis", "maximally concentrated band-limited basis");
  add_common(basis, common);
  add_selection(basis, basis_sel);
  basis->add_option("-k", basis_k, "number of atoms");

  double learn_po = 0.1;
  double learn_snr = 10.0;
  int learn_rep = 0;
  auto* learn = app.add_subcommand("learn", "JECD learning on one synthetic or dataset draw; writes the loss trace");
  add_common(learn, common);
  learn->add_option("--p-o", learn_po, "training ratio");
  learn->add_option("--snr", learn_snr, "SNR in dB");
  learn->add_option("--rep", learn_rep, "repetition index");

  std::string sweep_kind;
  auto* sweep = app.add_subcommand("sweep", "full experiment sweep; writes results.csv, summary.csv, config.json");
  add_common(sweep, common);
  sweep->add_option("--kind", sweep_kind, "p_o or snr")->check(CLI::IsMember({"p_o", "snr"}));

  int synth_rep = 0;
  auto* synth = app.add_subcommand("synth", "write the synthetic graph and a day-1/day-2 signal pair");
  add_common(synth, common);
  synth->add_option("--rep", synth_rep, "repetition index");

  CLI11_PARSE(app, argc, argv);
  try {
    if (region->parsed()) return cmd_region(common, region_sel, region_points);
    if (basis->parsed()) return cmd_basis(common, basis_sel, basis_k);
    if (learn->parsed()) return cmd_learn(common, learn_po, learn_snr, learn_rep);
    if (sweep->parsed()) return cmd_sweep(common, sweep_kind);
    if (synth->parsed()) return cmd_synth(common, synth_rep);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
