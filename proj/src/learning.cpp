#include "ggsp/learning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace ggsp {

std::vector<SamplePoint> SampleSet::points() const {
  std::vector<SamplePoint> out;
  out.reserve(entries.size());
  for (const Sample& s : entries) out.push_back({s.vertex, s.t});
  return out;
}

Eigen::VectorXd SampleSet::values() const {
  Eigen::VectorXd y(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t m = 0; m < entries.size(); ++m) y(static_cast<Eigen::Index>(m)) = entries[m].y;
  return y;
}

std::vector<TimeInterval> LearnState::intervals() const {
  std::vector<TimeInterval> out;
  for (std::size_t i = 0; i < tc.size(); ++i) out.push_back({tc[i], ell[i]});
  return out;
}

namespace {

// Dictionary, per-block design matrices and fitted values at the current
// parameters. Blocks can be swapped one at a time.
class Workspace {
 public:
  Workspace(const JecdBuilder& builder, const SampleSet& samples, const std::vector<TimeInterval>& iv,
            const Dictionary* reference)
      : builder_(builder), points_(samples.points()), y_(samples.values()) {
    check_samples(builder.domain(), points_);
    dict_ = builder.build(iv, reference);
    intervals_ = iv;
    for (const SeparableBlock& b : dict_.blocks) designs_.push_back(b.evaluate(grid(), points_));
    offsets_.push_back(0);
    for (const SeparableBlock& b : dict_.blocks) offsets_.push_back(offsets_.back() + b.size());
    x_ = Eigen::VectorXd::Zero(offsets_.back());
    fit_ = Eigen::VectorXd::Zero(y_.size());
  }

  const TimeGrid& grid() const { return builder_.domain().grid(); }
  const Dictionary& dictionary() const { return dict_; }
  const Eigen::VectorXd& y() const { return y_; }
  const Eigen::VectorXd& x() const { return x_; }
  const std::vector<TimeInterval>& intervals() const { return intervals_; }

  Eigen::MatrixXd design() const {
    Eigen::MatrixXd d(y_.size(), offsets_.back());
    for (std::size_t i = 0; i < designs_.size(); ++i) {
      d.middleCols(offsets_[i], designs_[i].cols()) = designs_[i];
    }
    return d;
  }

  void set_x(const Eigen::VectorXd& x) {
    x_ = x;
    fit_.setZero();
    for (std::size_t i = 0; i < designs_.size(); ++i) fit_ += designs_[i] * segment(i);
  }

  double data_term() const { return (y_ - fit_).squaredNorm(); }

  // Data term with the listed blocks rebuilt at new intervals.
  double probe(const std::vector<int>& which, const std::vector<TimeInterval>& iv,
               std::vector<SeparableBlock>* blocks = nullptr,
               std::vector<Eigen::MatrixXd>* designs = nullptr) const {
    Eigen::VectorXd fit = fit_;
    for (std::size_t w = 0; w < which.size(); ++w) {
      const int i = which[w];
      SeparableBlock b = builder_.block(i, iv[w], &dict_.blocks[i]);
      Eigen::MatrixXd d = b.evaluate(grid(), points_);
      fit += d * segment(i) - designs_[i] * segment(i);
      if (blocks) blocks->push_back(std::move(b));
      if (designs) designs->push_back(std::move(d));
    }
    return (y_ - fit).squaredNorm();
  }

  void commit(const std::vector<TimeInterval>& iv) {
    std::vector<int> all(dict_.blocks.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<SeparableBlock> blocks;
    std::vector<Eigen::MatrixXd> designs;
    probe(all, iv, &blocks, &designs);
    dict_.blocks = std::move(blocks);
    designs_ = std::move(designs);
    intervals_ = iv;
    set_x(x_);
  }

 private:
  Eigen::VectorXd segment(std::size_t i) const {
    return x_.segment(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }

  const JecdBuilder& builder_;
  std::vector<SamplePoint> points_;
  Eigen::VectorXd y_;
  Dictionary dict_;
  std::vector<TimeInterval> intervals_;
  std::vector<Eigen::MatrixXd> designs_;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXd x_;
  Eigen::VectorXd fit_;
};

std::vector<double> central_differences(const Workspace& ws, bool length, double h) {
  const std::vector<TimeInterval>& base = ws.intervals();
  std::vector<double> g(base.size(), 0.0);
  if (ws.x().isZero(0.0)) return g;
  for (std::size_t i = 0; i < base.size(); ++i) {
    TimeInterval plus = base[i];
    TimeInterval minus = base[i];
    if (length) {
      plus.length += h;
      minus.length -= h;
    } else {
      plus.center += h;
      minus.center -= h;
    }
    const int idx = static_cast<int>(i);
    g[i] = (ws.probe({idx}, {plus}) - ws.probe({idx}, {minus})) / (2.0 * h);
  }
  return g;
}

// One projected gradient step on t_c (length = false) or l (length = true).
void gradient_step(Workspace& ws, bool length, double eta, double h, const LearnConfig& config,
                   double delta) {
  if (eta == 0.0) return;
  const std::vector<double> g = central_differences(ws, length, h);
  if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; })) return;
  const std::vector<TimeInterval> base = ws.intervals();
  std::vector<int> all(base.size());
  std::iota(all.begin(), all.end(), 0);
  auto candidate = [&](double step) {
    std::vector<TimeInterval> next = base;
    for (std::size_t i = 0; i < base.size(); ++i) {
      double& p = length ? next[i].length : next[i].center;
      p = std::clamp(p - step * g[i], 0.0, delta);
    }
    return next;
  };
  if (!config.backtracking) {
    ws.commit(candidate(eta));
    return;
  }
  const double current = ws.data_term();
  double step = eta;
  for (int k = 0; k <= config.max_backtracks; ++k) {
    const std::vector<TimeInterval> next = candidate(step);
    if (ws.probe(all, next) <= current) {
      ws.commit(next);
      return;
    }
    step *= config.backtrack_factor;
  }
}

void record(LearnState& state, const Workspace& ws, double value) {
  state.tc.clear();
  state.ell.clear();
  for (const TimeInterval& iv : ws.intervals()) {
    state.tc.push_back(iv.center);
    state.ell.push_back(iv.length);
  }
  state.x = ws.x();
  state.loss_trace.push_back(value);
  state.tc_trace.push_back(state.tc);
  state.ell_trace.push_back(state.ell);
}

}  // namespace

double loss(const JecdBuilder& builder, const LearnState& state, const SampleSet& samples,
            double mu) {
  const Dictionary dict = builder.build(state.intervals());
  const Eigen::MatrixXd d = evaluate_at_samples(builder.domain(), dict, samples.points());
  const Eigen::VectorXd y = samples.values();
  if (state.x.size() != d.cols()) throw std::invalid_argument("loss: code length does not match the dictionary");
  return (y - d * state.x).squaredNorm() + mu * state.x.lpNorm<1>();
}

ParamGradient grad_params(const JecdBuilder& builder, const LearnState& state,
                          const SampleSet& samples, double h_fd) {
  if (!(h_fd > 0.0)) throw std::invalid_argument("grad_params: h_fd must be positive");
  Workspace ws(builder, samples, state.intervals(), nullptr);
  if (state.x.size() != ws.dictionary().size()) {
    throw std::invalid_argument("grad_params: code length does not match the dictionary");
  }
  ws.set_x(state.x);
  return {central_differences(ws, false, h_fd), central_differences(ws, true, h_fd)};
}

LearnState jecd_learn(const JecdBuilder& builder, const SampleSet& train, const LearnConfig& config) {
  if (train.empty()) throw std::invalid_argument("jecd_learn: empty training set");
  if (!(config.mu > 0.0)) throw std::invalid_argument("jecd_learn: mu must be positive");
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("jecd_learn: epsilon must be positive");
  if (config.max_outer_iters < 1) throw std::invalid_argument("jecd_learn: max_outer_iters must be positive");
  if (!(config.backtrack_factor > 0.0 && config.backtrack_factor < 1.0)) {
    throw std::invalid_argument("jecd_learn: backtracking factor must lie in (0, 1)");
  }
  const double delta = builder.domain().grid().delta;
  const double h = config.h_fd > 0.0 ? config.h_fd : 1e-3 * delta;

  std::vector<TimeInterval> init;
  for (const SubsetSpec& s : builder.subsets()) init.push_back(s.interval);
  Workspace ws(builder, train, init, nullptr);
  const double y2 = ws.y().squaredNorm();
  const double auto_eta = y2 > 0.0 ? 0.05 * delta * delta / y2 : 0.0;
  const double eta1 = config.eta1 < 0.0 ? auto_eta : config.eta1;
  const double eta2 = config.eta2 < 0.0 ? auto_eta : config.eta2;

  LearnState state;
  double previous = y2;  // objective at x = 0
  for (int u = 0; u < config.max_outer_iters; ++u) {
    try {
      const LassoResult fit = lasso(ws.design(), ws.y(), config.mu, config.lasso, ws.x());
      ws.set_x(fit.x);
      gradient_step(ws, false, eta1, h, config, delta);
      gradient_step(ws, true, eta2, h, config, delta);
    } catch (const std::exception& e) {
      throw LearnAborted(std::string("jecd_learn: iteration ") + std::to_string(u) + " failed: " + e.what(),
                         state);
    }
    const double value = ws.data_term() + config.mu * ws.x().lpNorm<1>();
    record(state, ws, value);
    state.iterations = u + 1;
    if (std::abs(value - previous) <= config.epsilon) {
      state.converged = true;
      break;
    }
    previous = value;
  }
  return state;
}

std::string loss_trace_csv(const LearnState& state) {
  std::ostringstream out;
  out.precision(17);
  out << "iter,loss";
  const std::size_t n = state.tc.size();
  for (std::size_t i = 0; i < n; ++i) out << ",tc_" << i;
  for (std::size_t i = 0; i < n; ++i) out << ",ell_" << i;
  out << '\n';
  for (std::size_t u = 0; u < state.loss_trace.size(); ++u) {
    out << u << ',' << state.loss_trace[u];
    for (double v : state.tc_trace[u]) out << ',' << v;
    for (double v : state.ell_trace[u]) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

void write_loss_trace(const LearnState& state, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << loss_trace_csv(state);
  if (!file) throw std::runtime_error("failed writing " + path);
}

MuSelection select_mu(const Eigen::MatrixXd& design, const Eigen::VectorXd& y, std::uint64_t seed,
                      const std::vector<double>& relative_grid, const LassoOptions& options) {
  const Eigen::Index m = y.size();
  if (m < 5) throw std::invalid_argument("select_mu: need at least 5 rows");
  if (relative_grid.empty()) throw std::invalid_argument("select_mu: empty grid");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const Eigen::Index n_fit = std::max<Eigen::Index>(1, (4 * m) / 5);
  Eigen::MatrixXd dfit(n_fit, design.cols());
  Eigen::VectorXd yfit(n_fit);
  Eigen::MatrixXd dhold(m - n_fit, design.cols());
  Eigen::VectorXd yhold(m - n_fit);
  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index src = order[static_cast<std::size_t>(r)];
    if (r < n_fit) {
      dfit.row(r) = design.row(src);
      yfit(r) = y(src);
    } else {
      dhold.row(r - n_fit) = design.row(src);
      yhold(r - n_fit) = y(src);
    }
  }
  const double mu_max = lasso_mu_max(dfit, yfit);
  MuSelection sel;
  if (!(mu_max > 0.0)) {
    sel.mu = 1e-12;
    return sel;
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> sorted = relative_grid;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double best_mu = mu_max * sorted.front();
  Eigen::VectorXd warm;
  int worse = 0;
  for (double rel : sorted) {
    const double mu = mu_max * rel;
    const LassoResult fit = lasso(dfit, yfit, mu, options, warm);
    warm = fit.x;
    const double err = (yhold - dhold * fit.x).squaredNorm();
    sel.candidates.push_back(mu);
    sel.holdout_errors.push_back(err);
    if (err < best) {
      best = err;
      best_mu = mu;
      worse = 0;
    } else if (++worse >= 2) {
      break;
    }
  }
  sel.mu = best_mu * static_cast<double>(m) / static_cast<double>(n_fit);
  return sel;
}

}  // namespace ggsp
