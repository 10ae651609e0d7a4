// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace telu {

enum class ActivationId {
  TeLU,
  ReLU,
  LReLU,
  Softplus,
  ELU,
  SiLU,
  GELU,
  Mish,
  Logish,
  Smish,
  Tanh,
  Sigmoid,
};

enum class Precision { F32, F64 };

/// The ten linear units, in the row order used by every report table.
inline constexpr std::array<ActivationId, 10> kLinearUnits = {
    ActivationId::TeLU, ActivationId::ReLU,  ActivationId::LReLU,
    ActivationId::Softplus, ActivationId::ELU, ActivationId::SiLU,
    ActivationId::GELU, ActivationId::Mish,  ActivationId::Logish,
    ActivationId::Smish};

inline constexpr std::array<ActivationId, 12> kAllActivations = {
    ActivationId::TeLU, ActivationId::ReLU,   ActivationId::LReLU,
    ActivationId::Softplus, ActivationId::ELU, ActivationId::SiLU,
    ActivationId::GELU, ActivationId::Mish,   ActivationId::Logish,
    ActivationId::Smish, ActivationId::Tanh,  ActivationId::Sigmoid};

inline constexpr double kLeakySlope = 0.01;

std::string_view name(ActivationId id) noexcept;
std::string_view name(Precision p) noexcept;

/// Case-insensitive lookup ("telu", "TeLU", "leaky_relu" and "lrelu" all work).
std::optional<ActivationId> parse_activation(std::string_view text);
std::optional<Precision> parse_precision(std::string_view text);

bool is_linear_unit(ActivationId id) noexcept;

/// Operation counts of the forward expression.
struct ForwardComplexity {
  int piecewise = 0;
  int nonlinearity = 0;
  int multiplicative = 0;
  int additive = 0;
  int constants = 0;
  friend bool operator==(const ForwardComplexity&, const ForwardComplexity&) = default;
};

/// Operation counts of the first-derivative expression.
struct DerivativeComplexity {
  int piecewise = 0;
  int nonlinearity = 0;
  int arithmetic = 0;
  int constants = 0;
  friend bool operator==(const DerivativeComplexity&, const DerivativeComplexity&) = default;
};

struct ActivationMeta {
  double asymptotic_slope = 1.0;
  ForwardComplexity complexity;
  DerivativeComplexity derivative_complexity;
  bool smooth = false;
  bool saturates_to_zero = false;
};

/// f(x) evaluated entirely in the requested precision.
double eval(ActivationId id, double x, Precision precision = Precision::F64);

/// f'(x); piecewise units return the right-hand derivative at their joint.
double eval_derivative(ActivationId id, double x, Precision precision = Precision::F64);

std::vector<double> eval_batch(ActivationId id, std::span<const double> xs,
                               Precision precision = Precision::F64);
std::vector<double> derivative_batch(ActivationId id, std::span<const double> xs,
                                     Precision precision = Precision::F64);

// In-place float kernels used by the benchmark harness.
void eval_batch_f32(ActivationId id, std::span<const float> xs, std::span<float> out);
void derivative_batch_f32(ActivationId id, std::span<const float> xs, std::span<float> out);

/// Static metadata row. Throws Error(UnknownMeta) for Tanh and Sigmoid.
const ActivationMeta& metadata(ActivationId id);

}  // namespace telu
