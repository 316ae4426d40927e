#include <gtest/gtest.h>

#include "ggsp/reconstruction.hpp"
#include "test_support.hpp"

using namespace ggsp;
using namespace ggsp::testing;

namespace {

std::vector<SamplePoint> all_points(int n, const TimeGrid& grid) {
  std::vector<SamplePoint> out;
  for (int j = 0; j < grid.n_samples; ++j) {
    for (int v = 0; v < n; ++v) out.push_back({v, grid.point(j)});
  }
  return out;
}

SampleSet observe(const Signal& f, const std::vector<SamplePoint>& points, const JointDomain& domain) {
  SampleSet s;
  const Eigen::VectorXd y = gather(domain, f, points);
  for (std::size_t m = 0; m < points.size(); ++m) s.entries.push_back({points[m].vertex, points[m].t, y(m)});
  return s;
}

}  // namespace

TEST(Rse, Examples) {
  const Eigen::VectorXd f = Eigen::Vector4d(1.0, -2.0, 0.5, 3.0);
  EXPECT_EQ(rse(f, f), 0.0);
  EXPECT_EQ(rse(f, Eigen::VectorXd::Zero(4)), 1.0);
  EXPECT_DOUBLE_EQ(rse(f, 2.0 * f), 1.0);
  EXPECT_DOUBLE_EQ(rse(3.0 * f, 3.0 * Eigen::Vector4d(1.0, -1.0, 0.0, 3.0)), rse(f, Eigen::Vector4d(1.0, -1.0, 0.0, 3.0)));
  const Eigen::Vector4d g(0.0, 1.0, 2.0, 3.0);
  const Eigen::Vector4d fp(f(3), f(0), f(2), f(1));
  const Eigen::Vector4d gp(g(3), g(0), g(2), g(1));
  EXPECT_DOUBLE_EQ(rse(f, g), rse(fp, gp));
  EXPECT_THROW(rse(Eigen::VectorXd::Zero(4), g), std::invalid_argument);
  EXPECT_THROW(rse(f, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST(Predict, LinearUnitAndZero) {
  std::mt19937_64 rng(1);
  const JointDomain domain(random_graph(4, rng), TimeGrid(1.0, 9));
  const Dictionary d = build_jft(domain, 3, 2);
  const auto pts = all_points(4, domain.grid());
  const Eigen::VectorXd a = random_signal(static_cast<int>(d.size()), 1, rng);
  const Eigen::VectorXd b = random_signal(static_cast<int>(d.size()), 1, rng);
  EXPECT_LE((predict(domain, d, 2.0 * a - b, pts) - (2.0 * predict(domain, d, a, pts) - predict(domain, d, b, pts)))
                .norm(),
            1e-12);
  EXPECT_EQ(predict(domain, d, Eigen::VectorXd::Zero(d.size()), pts).norm(), 0.0);
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d.size());
    e(k) = 1.0;
    EXPECT_LE((predict(domain, d, e, pts) - gather(domain, d.atom(k), pts)).norm(), 1e-12);
  }
  EXPECT_THROW(predict(domain, d, Eigen::VectorXd::Zero(2), pts), std::invalid_argument);
}

TEST(FitCodes, SingleAtomAndThresholds) {
  const JointDomain domain(path_graph(3), TimeGrid(1.0, 4));
  const Dictionary d = build_jft(domain, 1, 0);
  ASSERT_EQ(d.size(), 1);
  const auto pts = all_points(3, domain.grid());
  const Signal atom = d.atom(0);
  const SampleSet s = observe(2.0 * atom, pts, domain);
  // One unit atom observed everywhere: x = S(2, mu / 2).
  EXPECT_NEAR(fit_codes(domain, d, s, 0.5)(0), 2.0 - 0.25, 1e-12);
  EXPECT_EQ(fit_codes(domain, d, s, 4.1)(0), 0.0);
  EXPECT_EQ(fit_codes(domain, d, observe(Signal::Zero(3, 4), pts, domain), 0.1)(0), 0.0);
  EXPECT_THROW(fit_codes(domain, d, SampleSet{}, 0.1), std::invalid_argument);
}

TEST(FitCodes, CompleteBasisRecoversNoiselessSignal) {
  std::mt19937_64 rng(2);
  const JointDomain domain(random_graph(4, rng), TimeGrid(1.0, 9));
  const Dictionary d = build_jft(domain, 4, 4);
  ASSERT_EQ(d.size(), 36);
  const Signal f = random_signal(4, 9, rng);
  const auto pts = all_points(4, domain.grid());
  LassoOptions o;
  o.tolerance = 1e-14;
  const Eigen::VectorXd x = fit_codes(domain, d, observe(f, pts, domain), 1e-10, o);
  EXPECT_LE(rse(gather(domain, f, pts), predict(domain, d, x, pts)), 1e-8);
}

TEST(Gather, GridPointsOnly) {
  const JointDomain domain(path_graph(2), TimeGrid(1.0, 4));
  Signal f(2, 4);
  f << 1, 2, 3, 4, 5, 6, 7, 8;
  const Eigen::VectorXd g = gather(domain, f, {{1, domain.grid().point(2)}, {0, domain.grid().point(0)}});
  EXPECT_EQ(g, Eigen::Vector2d(7.0, 1.0));
  EXPECT_THROW(gather(domain, f, {{0, 0.3}}), std::out_of_range);
  EXPECT_THROW(gather(domain, f, {{2, domain.grid().point(0)}}), std::out_of_range);
}
