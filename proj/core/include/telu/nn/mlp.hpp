// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "telu/activations.hpp"
#include "telu/nn/dataset.hpp"

namespace telu::nn {

enum class WeightInit { XavierUniform, XavierNormal, HeUniform, HeNormal };

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // out x in, row-major
  std::vector<double> bias;     // out

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

/// Fully connected network: `activation` after every hidden layer, linear logits out.
struct MlpModel {
  std::vector<std::size_t> widths;
  std::vector<DenseLayer> layers;
  ActivationId activation = ActivationId::TeLU;

  std::size_t input_dim() const { return widths.front(); }
  std::size_t output_dim() const { return widths.back(); }

  friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

/// Xavier: bound sqrt(6 / (fan_in + fan_out)) or std sqrt(2 / (fan_in + fan_out)).
/// He:     bound sqrt(6 / fan_in)            or std sqrt(2 / fan_in).
MlpModel init_model(std::span<const std::size_t> widths, ActivationId activation,
                    WeightInit weight_init, double bias_init, std::uint64_t seed);

/// Parameter gradients, shaped like the model's layers.
struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> bias;
};

Gradients zero_gradients(const MlpModel& model);

/// Mean softmax cross-entropy over a batch of `labels.size()` rows of `x`,
/// accumulating its gradient into `grads` (overwritten). When `correct` is
/// non-null it receives the number of argmax hits in the batch.
double loss_and_gradients(const MlpModel& model, std::span<const double> x,
                          std::span<const int> labels, Gradients& grads,
                          std::size_t* correct = nullptr);

/// Mean softmax cross-entropy without gradients.
double batch_loss(const MlpModel& model, std::span<const double> x, std::span<const int> labels);

/// Logits, batch x output_dim.
std::vector<double> forward_logits(const MlpModel& model, std::span<const double> x,
                                   std::size_t batch);

std::vector<int> predict(const MlpModel& model, const Dataset& data);
double accuracy(const MlpModel& model, const Dataset& data);

}  // namespace telu::nn
