// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/nn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "telu/activation_kernels.hpp"
#include "telu/error.hpp"
#include "telu/nn/rng.hpp"

namespace telu::nn {

MlpModel init_model(std::span<const std::size_t> widths, ActivationId activation,
                    WeightInit weight_init, double bias_init, std::uint64_t seed) {
  if (widths.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least input and output widths");
  if (std::any_of(widths.begin(), widths.end(), [](std::size_t w) { return w == 0; })) {
    throw Error(ErrorCode::InvalidArgument, "layer widths must be positive");
  }
  MlpModel m;
  m.widths.assign(widths.begin(), widths.end());
  m.activation = activation;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    DenseLayer layer;
    layer.in = widths[l];
    layer.out = widths[l + 1];
    const auto fan_in = static_cast<double>(layer.in);
    const auto fan_out = static_cast<double>(layer.out);
    layer.weights.resize(layer.in * layer.out);
    for (double& w : layer.weights) {
      switch (weight_init) {
        case WeightInit::XavierUniform: {
          const double bound = std::sqrt(6.0 / (fan_in + fan_out));
          w = rng.uniform(-bound, bound);
          break;
        }
        case WeightInit::XavierNormal:
          w = std::sqrt(2.0 / (fan_in + fan_out)) * rng.normal();
          break;
        case WeightInit::HeUniform: {
          const double bound = std::sqrt(6.0 / fan_in);
          w = rng.uniform(-bound, bound);
          break;
        }
        case WeightInit::HeNormal:
          w = std::sqrt(2.0 / fan_in) * rng.normal();
          break;
      }
    }
    layer.bias.assign(layer.out, bias_init);
    m.layers.push_back(std::move(layer));
  }
  return m;
}

Gradients zero_gradients(const MlpModel& model) {
  Gradients g;
  for (const auto& layer : model.layers) {
    g.weights.emplace_back(layer.weights.size(), 0.0);
    g.bias.emplace_back(layer.bias.size(), 0.0);
  }
  return g;
}

namespace {

// Pre-activations z and outputs a for every layer; a[0] is the input batch.
struct Trace {
  std::vector<std::vector<double>> z;
  std::vector<std::vector<double>> a;
};

void affine(const DenseLayer& layer, const double* in, std::size_t batch, double* out) {
  for (std::size_t b = 0; b < batch; ++b) {
    const double* x = in + b * layer.in;
    double* z = out + b * layer.out;
    for (std::size_t o = 0; o < layer.out; ++o) {
      const double* w = layer.weights.data() + o * layer.in;
      double acc = layer.bias[o];
      for (std::size_t i = 0; i < layer.in; ++i) acc += w[i] * x[i];
      z[o] = acc;
    }
  }
}

Trace run_forward(const MlpModel& model, std::span<const double> x, std::size_t batch) {
  if (x.size() != batch * model.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "input batch does not match model input width");
  }
  Trace t;
  const std::size_t n_layers = model.layers.size();
  t.z.resize(n_layers);
  t.a.resize(n_layers + 1);
  t.a[0].assign(x.begin(), x.end());
  kernels::dispatch<double>(model.activation, [&](auto f, auto) {
    for (std::size_t l = 0; l < n_layers; ++l) {
      const DenseLayer& layer = model.layers[l];
      t.z[l].resize(batch * layer.out);
      affine(layer, t.a[l].data(), batch, t.z[l].data());
      if (l + 1 < n_layers) {
        t.a[l + 1].resize(t.z[l].size());
        for (std::size_t i = 0; i < t.z[l].size(); ++i) t.a[l + 1][i] = f(t.z[l][i]);
      } else {
        t.a[l + 1] = t.z[l];
      }
    }
  });
  return t;
}

// Softmax probabilities in place; returns the summed cross-entropy.
double softmax_cross_entropy(std::vector<double>& logits, std::span<const int> labels,
                             std::size_t classes, std::size_t* correct) {
  double total = 0.0;
  std::size_t hits = 0;
  for (std::size_t b = 0; b < labels.size(); ++b) {
    double* z = logits.data() + b * classes;
    const auto argmax = static_cast<std::size_t>(std::max_element(z, z + classes) - z);
    const double zmax = z[argmax];
    double sum = 0.0;
    for (std::size_t c = 0; c < classes; ++c) sum += std::exp(z[c] - zmax);
    const double log_sum = zmax + std::log(sum);
    total += log_sum - z[labels[b]];
    if (argmax == static_cast<std::size_t>(labels[b])) ++hits;
    for (std::size_t c = 0; c < classes; ++c) z[c] = std::exp(z[c] - log_sum);
  }
  if (correct != nullptr) *correct = hits;
  return total;
}

}  // namespace

double loss_and_gradients(const MlpModel& model, std::span<const double> x,
                          std::span<const int> labels, Gradients& grads, std::size_t* correct) {
  const std::size_t batch = labels.size();
  if (batch == 0) throw Error(ErrorCode::InvalidArgument, "empty batch");
  Trace t = run_forward(model, x, batch);
  const std::size_t n_layers = model.layers.size();
  const std::size_t classes = model.output_dim();

  std::vector<double> delta = std::move(t.z[n_layers - 1]);
  const double loss = softmax_cross_entropy(delta, labels, classes, correct) / static_cast<double>(batch);
  const double scale = 1.0 / static_cast<double>(batch);
  for (std::size_t b = 0; b < batch; ++b) delta[b * classes + labels[b]] -= 1.0;
  for (double& d : delta) d *= scale;

  if (grads.weights.size() != n_layers) grads = zero_gradients(model);

  kernels::dispatch<double>(model.activation, [&](auto, auto fprime) {
    for (std::size_t l = n_layers; l-- > 0;) {
      const DenseLayer& layer = model.layers[l];
      auto& gw = grads.weights[l];
      auto& gb = grads.bias[l];
      std::fill(gw.begin(), gw.end(), 0.0);
      std::fill(gb.begin(), gb.end(), 0.0);
      const std::vector<double>& input = t.a[l];
      for (std::size_t b = 0; b < batch; ++b) {
        const double* in = input.data() + b * layer.in;
        const double* d = delta.data() + b * layer.out;
        for (std::size_t o = 0; o < layer.out; ++o) {
          const double dv = d[o];
          gb[o] += dv;
          if (dv == 0.0) continue;
          double* row = gw.data() + o * layer.in;
          for (std::size_t i = 0; i < layer.in; ++i) row[i] += dv * in[i];
        }
      }
      if (l == 0) break;
      std::vector<double> prev(batch * layer.in, 0.0);
      for (std::size_t b = 0; b < batch; ++b) {
        const double* d = delta.data() + b * layer.out;
        double* p = prev.data() + b * layer.in;
        for (std::size_t o = 0; o < layer.out; ++o) {
          const double dv = d[o];
          if (dv == 0.0) continue;
          const double* w = layer.weights.data() + o * layer.in;
          for (std::size_t i = 0; i < layer.in; ++i) p[i] += dv * w[i];
        }
      }
      const std::vector<double>& zprev = t.z[l - 1];
      for (std::size_t i = 0; i < prev.size(); ++i) prev[i] *= fprime(zprev[i]);
      delta = std::move(prev);
    }
  });
  return loss;
}

double batch_loss(const MlpModel& model, std::span<const double> x, std::span<const int> labels) {
  if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "empty batch");
  Trace t = run_forward(model, x, labels.size());
  std::vector<double> logits = std::move(t.z.back());
  return softmax_cross_entropy(logits, labels, model.output_dim(), nullptr) /
         static_cast<double>(labels.size());
}

std::vector<double> forward_logits(const MlpModel& model, std::span<const double> x,
                                   std::size_t batch) {
  return std::move(run_forward(model, x, batch).z.back());
}

std::vector<int> predict(const MlpModel& model, const Dataset& data) {
  if (data.n_features != model.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "dataset width does not match model input");
  }
  std::vector<int> out(data.n_samples);
  constexpr std::size_t kChunk = 256;
  const std::size_t classes = model.output_dim();
  for (std::size_t start = 0; start < data.n_samples; start += kChunk) {
    const std::size_t n = std::min(kChunk, data.n_samples - start);
    const std::span<const double> x(data.features.data() + start * data.n_features, n * data.n_features);
    const std::vector<double> logits = forward_logits(model, x, n);
    for (std::size_t b = 0; b < n; ++b) {
      const double* z = logits.data() + b * classes;
      out[start + b] = static_cast<int>(std::max_element(z, z + classes) - z);
    }
  }
  return out;
}

double accuracy(const MlpModel& model, const Dataset& data) {
  if (data.n_samples == 0) return 0.0;
  const std::vector<int> pred = predict(model, data);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == data.labels[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(data.n_samples);
}

}  // namespace telu::nn
