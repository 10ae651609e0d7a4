// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/activations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "telu/activation_kernels.hpp"
#include "telu/error.hpp"

namespace telu {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownMeta: return "UnknownMeta";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidFilter: return "InvalidFilter";
    case ErrorCode::MaxSubdivisions: return "MaxSubdivisions";
    case ErrorCode::NoNullRegion: return "NoNullRegion";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::BenchBusy: return "BenchBusy";
  }
  return "Unknown";
}

std::string_view name(ActivationId id) noexcept {
  switch (id) {
    case ActivationId::TeLU: return "TeLU";
    case ActivationId::ReLU: return "ReLU";
    case ActivationId::LReLU: return "LReLU";
    case ActivationId::Softplus: return "Softplus";
    case ActivationId::ELU: return "ELU";
    case ActivationId::SiLU: return "SiLU";
    case ActivationId::GELU: return "GELU";
    case ActivationId::Mish: return "Mish";
    case ActivationId::Logish: return "Logish";
    case ActivationId::Smish: return "Smish";
    case ActivationId::Tanh: return "Tanh";
    case ActivationId::Sigmoid: return "Sigmoid";
  }
  return "?";
}

std::string_view name(Precision p) noexcept { return p == Precision::F32 ? "f32" : "f64"; }

namespace {

std::string lowered(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<ActivationId> parse_activation(std::string_view text) {
  const std::string key = lowered(text);
  for (ActivationId id : kAllActivations) {
    if (lowered(name(id)) == key) return id;
  }
  if (key == "leaky_relu" || key == "leakyrelu") return ActivationId::LReLU;
  if (key == "swish") return ActivationId::SiLU;
  return std::nullopt;
}

std::optional<Precision> parse_precision(std::string_view text) {
  const std::string key = lowered(text);
  if (key == "f32" || key == "float32" || key == "32") return Precision::F32;
  if (key == "f64" || key == "float64" || key == "64") return Precision::F64;
  return std::nullopt;
}

bool is_linear_unit(ActivationId id) noexcept {
  return id != ActivationId::Tanh && id != ActivationId::Sigmoid;
}

double eval(ActivationId id, double x, Precision precision) {
  if (precision == Precision::F32) {
    const float xf = static_cast<float>(x);
    return kernels::dispatch<float>(id, [xf](auto f, auto) { return static_cast<double>(f(xf)); });
  }
  return kernels::dispatch<double>(id, [x](auto f, auto) { return f(x); });
}

double eval_derivative(ActivationId id, double x, Precision precision) {
  if (precision == Precision::F32) {
    const float xf = static_cast<float>(x);
    return kernels::dispatch<float>(id, [xf](auto, auto d) { return static_cast<double>(d(xf)); });
  }
  return kernels::dispatch<double>(id, [x](auto, auto d) { return d(x); });
}

namespace {

template <bool Derivative>
std::vector<double> apply(ActivationId id, std::span<const double> xs, Precision precision) {
  std::vector<double> out(xs.size());
  auto run = [&]<class T>(T) {
    kernels::dispatch<T>(id, [&](auto f, auto d) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const T x = static_cast<T>(xs[i]);
        out[i] = static_cast<double>(Derivative ? d(x) : f(x));
      }
    });
  };
  if (precision == Precision::F32) {
    run(float{});
  } else {
    run(double{});
  }
  return out;
}

template <bool Derivative>
void apply_f32(ActivationId id, std::span<const float> xs, std::span<float> out) {
  if (out.size() != xs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "output span must match input length");
  }
  kernels::dispatch<float>(id, [&](auto f, auto d) {
    const float* in = xs.data();
    float* dst = out.data();
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) dst[i] = Derivative ? d(in[i]) : f(in[i]);
  });
}

}  // namespace

std::vector<double> eval_batch(ActivationId id, std::span<const double> xs, Precision precision) {
  return apply<false>(id, xs, precision);
}

std::vector<double> derivative_batch(ActivationId id, std::span<const double> xs,
                                     Precision precision) {
  return apply<true>(id, xs, precision);
}

void eval_batch_f32(ActivationId id, std::span<const float> xs, std::span<float> out) {
  apply_f32<false>(id, xs, out);
}

void derivative_batch_f32(ActivationId id, std::span<const float> xs, std::span<float> out) {
  apply_f32<true>(id, xs, out);
}

namespace {

// Operation-count heuristics for the eight reference units. LReLU and
// Softplus are counted with the same rules (max/branch = piecewise, exp/ln/tanh/erf = nonlinearity, negation
// counted as additive, every literal a constant).
const ActivationMeta kMeta[10] = {
    // TeLU
    {1.0, {0, 2, 1, 0, 0}, {0, 3, 4, 0}, true, true},
    // ReLU
    {1.0, {1, 0, 0, 0, 1}, {1, 0, 0, 2}, false, true},
    // LReLU
    {1.0, {1, 0, 1, 0, 1}, {1, 0, 0, 2}, false, false},
    // Softplus
    {1.0, {0, 2, 0, 1, 1}, {0, 1, 3, 3}, true, true},
    // ELU
    {1.0, {1, 1, 0, 1, 1}, {1, 1, 0, 1}, false, false},
    // SiLU
    {1.0, {0, 1, 2, 2, 3}, {0, 1, 6, 2}, true, true},
    // GELU
    {1.0, {0, 1, 2, 1, 3}, {0, 2, 8, 7}, true, true},
    // Mish
    {1.0, {0, 3, 1, 1, 2}, {0, 3, 16, 5}, true, true},
    // Logish
    {std::numbers::ln2, {0, 2, 3, 1, 4}, {0, 3, 12, 3}, true, true},
    // Smish: tanh(ln 2) = 3/5 exactly
    {0.6, {0, 3, 3, 1, 4}, {0, 3, 16, 10}, true, true},
};

}  // namespace

const ActivationMeta& metadata(ActivationId id) {
  if (!is_linear_unit(id)) {
    throw Error(ErrorCode::UnknownMeta, std::string(name(id)) + " carries no metadata row");
  }
  return kMeta[static_cast<int>(id)];
}

}  // namespace telu
