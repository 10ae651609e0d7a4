// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/nn/train.hpp"

#include <cmath>
#include <future>
#include <numeric>
#include <sstream>

#include "telu/error.hpp"
#include "telu/format.hpp"
#include "telu/nn/rng.hpp"

namespace telu::nn {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::InvalidArgument, "learning_rate must be finite and non-negative");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "momentum must lie in [0, 1)");
  }
  if (!(weight_decay >= 0.0)) throw Error(ErrorCode::InvalidArgument, "weight_decay must be >= 0");
  if (batch_size < 1) throw Error(ErrorCode::InvalidArgument, "batch_size must be >= 1");
  if (epochs < 0) throw Error(ErrorCode::InvalidArgument, "epochs must be >= 0");
}

TrainReport train(MlpModel& model, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& cfg) {
  cfg.validate();
  if (train_set.n_features != model.input_dim() || val_set.n_features != model.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "dataset width does not match model input");
  }
  if (train_set.n_classes > static_cast<int>(model.output_dim())) {
    throw Error(ErrorCode::DimensionMismatch, "model has fewer outputs than dataset classes");
  }
  if (train_set.n_samples == 0) throw Error(ErrorCode::TooFewSamples, "empty training set");

  TrainReport report;
  Rng shuffler(derive_seed(cfg.seed, 1));
  std::vector<std::size_t> order(train_set.n_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});

  Gradients grads = zero_gradients(model);
  Gradients velocity = zero_gradients(model);
  std::vector<double> xb;
  std::vector<int> yb;
  const std::size_t width = train_set.n_features;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffler.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    std::size_t hits = 0;

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t n = std::min(cfg.batch_size, order.size() - start);
      xb.resize(n * width);
      yb.resize(n);
      for (std::size_t k = 0; k < n; ++k) {
        const auto r = train_set.row(order[start + k]);
        std::copy(r.begin(), r.end(), xb.begin() + static_cast<std::ptrdiff_t>(k * width));
        yb[k] = train_set.labels[order[start + k]];
      }
      std::size_t batch_hits = 0;
      const double loss = loss_and_gradients(model, xb, yb, grads, &batch_hits);
      if (!std::isfinite(loss)) {
        report.non_finite_loss = true;
        return report;
      }
      loss_sum += loss * static_cast<double>(n);
      hits += batch_hits;

      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        DenseLayer& layer = model.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
          const double g = grads.weights[l][i] + cfg.weight_decay * layer.weights[i];
          double& v = velocity.weights[l][i];
          v = cfg.momentum * v + g;
          layer.weights[i] -= cfg.learning_rate * v;
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
          double& v = velocity.bias[l][i];
          const double wd = cfg.decay_biases ? cfg.weight_decay * layer.bias[i] : 0.0;
          v = cfg.momentum * v + grads.bias[l][i] + wd;
          layer.bias[i] -= cfg.learning_rate * v;
        }
      }
    }

    const auto total = static_cast<double>(train_set.n_samples);
    report.epochs.push_back({epoch, loss_sum / total, static_cast<double>(hits) / total,
                             accuracy(model, val_set)});
  }
  return report;
}

std::string metrics_csv(std::span<const EpochMetrics> metrics) {
  std::ostringstream out;
  out << "epoch,train_loss,train_acc,val_acc\n";
  for (const auto& m : metrics) {
    out << m.epoch << ',' << format_sig(m.train_loss) << ',' << format_sig(m.train_accuracy) << ','
        << format_sig(m.val_accuracy) << '\n';
  }
  return out.str();
}

namespace {

RecoveryOutcome run_recovery(ActivationId id, const RecoveryConfig& cfg, const Dataset& train_set,
                             const Dataset& val_set) {
  std::vector<std::size_t> widths;
  widths.push_back(train_set.n_features);
  widths.insert(widths.end(), cfg.hidden.begin(), cfg.hidden.end());
  widths.push_back(static_cast<std::size_t>(train_set.n_classes));

  MlpModel model = init_model(widths, id, cfg.train.weight_init, cfg.train.bias_init, cfg.train.seed);
  TrainReport rep = train(model, train_set, val_set, cfg.train);

  RecoveryOutcome out{id, std::nullopt, 0.0, rep.non_finite_loss, std::move(rep.epochs)};
  const double threshold = kRecoveryChanceMultiple / static_cast<double>(train_set.n_classes);
  for (const auto& m : out.history) {
    if (m.val_accuracy > threshold) {
      out.first_recovery_epoch = m.epoch;
      break;
    }
  }
  if (!out.history.empty()) out.final_val_accuracy = out.history.back().val_accuracy;
  return out;
}

}  // namespace

RecoveryConfig RecoveryConfig::desk(std::uint64_t seed) {
  RecoveryConfig cfg;
  cfg.train.seed = seed;
  cfg.train.learning_rate = 0.1;
  cfg.train.momentum = 0.9;
  cfg.train.weight_decay = 5e-4;
  cfg.train.batch_size = 8;
  cfg.train.epochs = 60;
  cfg.train.bias_init = -10.0;
  cfg.train.decay_biases = true;
  return cfg;
}

std::vector<RecoveryOutcome> recovery_experiment(std::span<const ActivationId> activations,
                                                 const RecoveryConfig& cfg,
                                                 const Dataset& train_set,
                                                 const Dataset& val_set) {
  cfg.train.validate();
  if (cfg.hidden.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "the recovery network uses exactly two hidden layers");
  }
  std::vector<RecoveryOutcome> out;
  if (!cfg.parallel) {
    for (ActivationId id : activations) out.push_back(run_recovery(id, cfg, train_set, val_set));
    return out;
  }
  std::vector<std::future<RecoveryOutcome>> jobs;
  for (ActivationId id : activations) {
    jobs.push_back(std::async(std::launch::async, [&, id] {
      return run_recovery(id, cfg, train_set, val_set);
    }));
  }
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<std::pair<double, double>> evaluate_with_noise(const MlpModel& model,
                                                           const Dataset& data,
                                                           std::span<const double> noise_sigmas,
                                                           std::uint64_t seed) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < noise_sigmas.size(); ++i) {
    const double sigma = noise_sigmas[i];
    if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise sigma must be >= 0");
    if (sigma == 0.0) {
      out.emplace_back(sigma, accuracy(model, data));
      continue;
    }
    Dataset noisy = data;
    Rng rng(derive_seed(seed, i));
    for (double& v : noisy.features) v += sigma * rng.normal();
    out.emplace_back(sigma, accuracy(model, noisy));
  }
  return out;
}

}  // namespace telu::nn
