// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "telu/activations.hpp"
#include "telu/nn/dataset.hpp"
#include "telu/nn/mlp.hpp"

namespace telu::nn {

struct TrainConfig {
  std::uint64_t seed = 1;
  double learning_rate = 0.01;
  double momentum = 0.9;
  double weight_decay = 5e-4;
  std::size_t batch_size = 128;
  int epochs = 10;
  double bias_init = 0.0;
  WeightInit weight_init = WeightInit::XavierUniform;
  /// Also apply weight decay to biases, as common frameworks do by default.
  bool decay_biases = false;

  /// Throws Error(InvalidArgument) on out-of-range settings.
  void validate() const;
};

struct EpochMetrics {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;  // running accuracy over the epoch's batches
  double val_accuracy = 0.0;

  friend bool operator==(const EpochMetrics&, const EpochMetrics&) = default;
};

struct TrainReport {
  std::vector<EpochMetrics> epochs;
  /// Set when a batch loss went non-finite; training stopped at that batch.
  bool non_finite_loss = false;
};

/// Mini-batch SGD with classical momentum: v <- mu v + g, theta <- theta - lr v.
/// L2 decay (g += wd * w) is applied to weights, and to biases only when
/// cfg.decay_biases is set.
/// Samples are reshuffled every epoch from a stream derived from cfg.seed.
TrainReport train(MlpModel& model, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& cfg);

/// CSV with columns epoch,train_loss,train_acc,val_acc.
std::string metrics_csv(std::span<const EpochMetrics> metrics);

// ---------------------------------------------------------------------------

/// Validation accuracy must exceed this multiple of chance (1 / n_classes).
inline constexpr double kRecoveryChanceMultiple = 2.0;

struct RecoveryConfig {
  TrainConfig train;
  std::vector<std::size_t> hidden = {64, 64};
  /// Run the per-activation trainings on separate threads.
  bool parallel = true;

  /// Desk-scale negative-bias recipe: bias -10, 60 epochs, momentum 0.9,
  /// weight decay 5e-4 on all parameters, lr 0.1, batch 8.
  static RecoveryConfig desk(std::uint64_t seed);
};

struct RecoveryOutcome {
  ActivationId id;
  std::optional<int> first_recovery_epoch;  // empty: never recovered
  double final_val_accuracy = 0.0;
  bool non_finite_loss = false;
  std::vector<EpochMetrics> history;
};

/// Trains one two-hidden-layer network per activation (same seed, so same
/// initial weights) and reports the first epoch whose validation accuracy
/// exceeds kRecoveryChanceMultiple * chance.
std::vector<RecoveryOutcome> recovery_experiment(std::span<const ActivationId> activations,
                                                 const RecoveryConfig& cfg,
                                                 const Dataset& train_set,
                                                 const Dataset& val_set);

/// Accuracy on copies of `data` with i.i.d. N(0, sigma^2) added to every
/// feature. sigma = 0 reproduces the clean accuracy exactly.
std::vector<std::pair<double, double>> evaluate_with_noise(const MlpModel& model,
                                                           const Dataset& data,
                                                           std::span<const double> noise_sigmas,
                                                           std::uint64_t seed);

}  // namespace telu::nn
