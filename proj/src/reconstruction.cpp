#include "ggsp/reconstruction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ggsp {

Eigen::VectorXd fit_codes(const JointDomain& domain, const Dictionary& dict, const SampleSet& test,
                          double mu, const LassoOptions& options) {
  if (test.empty()) throw std::invalid_argument("fit_codes: empty test set");
  const Eigen::MatrixXd d = evaluate_at_samples(domain, dict, test.points());
  return lasso(d, test.values(), mu, options).x;
}

Eigen::VectorXd predict(const JointDomain& domain, const Dictionary& dict, const Eigen::VectorXd& x,
                        const std::vector<SamplePoint>& points) {
  if (x.size() != dict.size()) throw std::invalid_argument("predict: code length does not match the dictionary");
  check_samples(domain, points);
  // Evaluated in row chunks through the same design rows the fit uses.
  constexpr std::size_t kChunk = 512;
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t start = 0; start < points.size(); start += kChunk) {
    const std::size_t stop = std::min(points.size(), start + kChunk);
    const std::vector<SamplePoint> chunk(points.begin() + start, points.begin() + stop);
    out.segment(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(stop - start)) =
        evaluate_at_samples(domain, dict, chunk) * x;
  }
  return out;
}

double rse(const Eigen::VectorXd& truth, const Eigen::VectorXd& prediction) {
  if (truth.size() != prediction.size()) throw std::invalid_argument("rse: size mismatch");
  const double denom = truth.squaredNorm();
  if (!(denom > 0.0)) throw std::invalid_argument("rse: truth is zero on the validation points");
  return (truth - prediction).squaredNorm() / denom;
}

Eigen::VectorXd gather(const JointDomain& domain, const Signal& f, const std::vector<SamplePoint>& points) {
  domain.check(f, "gather");
  Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t m = 0; m < points.size(); ++m) {
    const int j = domain.grid().grid_index(points[m].t);
    if (j < 0 || points[m].vertex < 0 || points[m].vertex >= domain.n_vertices()) {
      throw std::out_of_range("gather: point " + std::to_string(m) + " is not a grid point");
    }
    out(static_cast<Eigen::Index>(m)) = f(points[m].vertex, j);
  }
  return out;
}

double rse(const JointDomain& domain, const Signal& truth, const Signal& prediction,
           const std::vector<SamplePoint>& points) {
  return rse(gather(domain, truth, points), gather(domain, prediction, points));
}

}  // namespace ggsp
