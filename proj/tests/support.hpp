// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "telu/nn/mlp.hpp"
#include "telu/nn/rng.hpp"

namespace telu::testing {

// splitmix64; independent of the library's generator on purpose.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Log-uniform magnitude with random sign; covers tiny and huge inputs.
  double wide(double max_exp) {
    const double mag = std::pow(10.0, uniform(-max_exp, max_exp));
    return (next() & 1u) ? mag : -mag;
  }

 private:
  std::uint64_t state_;
};

struct FixtureBatch {
  std::vector<double> x;
  std::vector<int> y;
};

inline FixtureBatch random_batch(std::size_t n, std::size_t dim, int classes, std::uint64_t seed) {
  Gen g(seed);
  FixtureBatch b;
  for (std::size_t i = 0; i < n * dim; ++i) b.x.push_back(g.uniform(-1.5, 1.5));
  for (std::size_t i = 0; i < n; ++i) b.y.push_back(static_cast<int>(g.next() % classes));
  return b;
}

// Largest relative gap between analytic and central-difference parameter gradients.
inline double max_backward_error(nn::MlpModel model, const FixtureBatch& b, double h = 1e-6) {
  nn::Gradients grads = nn::zero_gradients(model);
  nn::loss_and_gradients(model, b.x, b.y, grads);

  double worst = 0.0;
  auto probe = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + h;
    const double up = nn::batch_loss(model, b.x, b.y);
    param = saved - h;
    const double down = nn::batch_loss(model, b.x, b.y);
    param = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double rel = std::abs(analytic - numeric) /
                       std::max({std::abs(analytic), std::abs(numeric), 1e-3});
    worst = std::max(worst, rel);
  };
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    auto& layer = model.layers[l];
    for (std::size_t i = 0; i < layer.weights.size(); ++i) probe(layer.weights[i], grads.weights[l][i]);
    for (std::size_t i = 0; i < layer.bias.size(); ++i) probe(layer.bias[i], grads.bias[l][i]);
  }
  return worst;
}

}  // namespace telu::testing
