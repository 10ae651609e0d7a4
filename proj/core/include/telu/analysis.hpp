// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "telu/activations.hpp"
#include "telu/quadrature.hpp"

namespace telu {

// ---------------------------------------------------------------------------
// Near-linearity of the active region and distance to ReLU
// ---------------------------------------------------------------------------

/// L1 = int_0^inf |f(x) - m x| dx and L2 = int_0^inf (f(x) - m x)^2 dx, with m
/// the unit's asymptotic slope.
struct NearLinearityRow {
  ActivationId id;
  IntegralResult l1;
  IntegralResult l2;
  double slope;
};

NearLinearityRow near_linearity(ActivationId id, const QuadratureConfig& cfg = {});

/// L1 distance to ReLU on (-inf, 0] and [0, inf).
struct ProximityRow {
  ActivationId id;
  IntegralResult neg;
  IntegralResult pos;
};

ProximityRow relu_proximity(ActivationId id, const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------
// Gaussian output bias and zero-centering
// ---------------------------------------------------------------------------

/// E[f(X)], X ~ N(0, sigma^2).
double output_bias(ActivationId id, double sigma = 1.0, const QuadratureConfig& cfg = {});
double output_bias(const Integrand& f, double sigma = 1.0, const QuadratureConfig& cfg = {});

inline constexpr std::array<double, 3> kDefaultCenteringSigmas = {0.5, 1.0, 2.0};

struct ZeroCenteringSample {
  double sigma;
  double telu_bias;
  double relu_bias;
};

/// 0 < E[TeLU(X)] < E[ReLU(X)] for every sigma; the samples are returned for reporting.
std::vector<ZeroCenteringSample> zero_centering_samples(std::span<const double> sigmas,
                                                        const QuadratureConfig& cfg = {});
bool zero_centering_check(std::span<const double> sigmas = kDefaultCenteringSigmas,
                          const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------
// Underflow ("null domain") scan
// ---------------------------------------------------------------------------

struct ScanOptions {
  Precision precision = Precision::F32;
  double lo = -200.0;
  double hi = 0.0;
  double step = 1e-4;
};

/// Where the derivative first stops evaluating to exactly zero (either sign)
/// when scanning upward from `lo`.
///
/// `boundary` is the supremum of the leading zero run: the grid locates the
/// transition between `last_zero` and `first_nonzero`, and bisection in the
/// scan precision pins it to the first representable input whose derivative
/// is nonzero. Every scanned x < boundary has derivative 0.
struct NullDomainReport {
  ActivationId id;
  Precision precision;
  double boundary;
  double last_zero;
  double first_nonzero;
  double step;
  std::vector<std::pair<double, double>> probes;  // (x, f'(x)) at x = -10, -100
};

/// Throws Error(NoNullRegion) if the derivative is nonzero at `lo`.
NullDomainReport underflow_scan(ActivationId id, const ScanOptions& opts = {});

// ---------------------------------------------------------------------------
// Asymptotic decay classification
// ---------------------------------------------------------------------------

enum class DecayClass {
  XOverExp,          // Theta(x / e^x)
  InverseExp,        // Theta(1 / e^x)
  FactorialBracket,  // O(1 / x!) and Omega(1 / (x^2)!)
  None,
};

std::string_view to_string(DecayClass c) noexcept;

/// Successive ratio samples within this relative distance count as converged.
inline constexpr double kDecayAgreementTol = 1e-3;
/// Minimum per-step growth factor for an Unbounded ratio sequence.
inline constexpr double kDecayGrowthFactor = 1.10;

enum class LimitKind { Finite, Unbounded, Undefined };

/// Ratios |TeLU'(-x)| / |f'(-x)| at growing x. A sample whose f'(-x) underflows
/// to zero carries ratio +inf; Undefined means f' vanished at every sample
/// (ReLU) or the sequence neither settled nor grew.
struct DecayReport {
  ActivationId id;
  std::vector<std::pair<double, double>> ratio_samples;
  LimitKind limit_kind;
  double limit;  // meaningful only for LimitKind::Finite
  DecayClass assigned_class;
};

inline constexpr std::array<double, 7> kDefaultDecaySamples = {10, 15, 20, 25, 30, 35, 40};

DecayReport decay_classify(ActivationId id,
                           std::span<const double> xs = kDefaultDecaySamples);

// ---------------------------------------------------------------------------
// Derivative root and supremum
// ---------------------------------------------------------------------------

/// Bisection root of f' on [lo, hi]. Throws Error(NoSignChange) unless f'(lo)
/// and f'(hi) have strictly opposite signs.
double find_derivative_root(ActivationId id = ActivationId::TeLU, double lo = -2.0,
                            double hi = -0.5, double tol = 1e-10);

struct Supremum {
  double x;
  double value;
};

/// max |f'(x)| on [lo, hi]: 1e-3 grid, then golden-section refinement to 1e-8 in x.
Supremum derivative_supremum(ActivationId id, double lo = -5.0, double hi = 5.0);

struct GradCheckOptions {
  double lo = -20.0;
  double hi = 20.0;
  std::size_t points = 4001;
  double h = 1e-5;
  double floor = 1.0;  // denominator floor for the relative error
};

struct GradCheckResult {
  ActivationId id;
  double max_rel_error;
  double worst_x;
};

/// Closed-form f' against a central difference of f on a uniform grid (64-bit).
/// Piecewise units use a right-sided difference at their joint x = 0.
GradCheckResult gradient_check(ActivationId id, const GradCheckOptions& opts = {});

}  // namespace telu
