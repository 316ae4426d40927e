#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ggsp/dictionary.hpp"

namespace ggsp {

enum class SampleRole { Train, Test, Validation };

/// Observation y = f(v, t) + noise.
struct Sample {
  int vertex = 0;
  double t = 0.0;
  double y = 0.0;
};

struct SampleSet {
  std::vector<Sample> entries;
  SampleRole role = SampleRole::Train;
  double noise_sigma = 0.0;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  std::vector<SamplePoint> points() const;
  Eigen::VectorXd values() const;
};

}  // namespace ggsp
