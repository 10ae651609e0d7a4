// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string_view>

namespace telu {

enum class IntegralStatus { Converged, Divergent, MaxSubdivisions };

std::string_view to_string(IntegralStatus status) noexcept;

/// Outcome of a (possibly semi-infinite) integral. A Divergent result keeps
/// the partial sum reached before giving up in `value`, for diagnostics only.
struct IntegralResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  IntegralStatus status = IntegralStatus::Converged;

  bool converged() const noexcept { return status == IntegralStatus::Converged; }
};

struct QuadratureConfig {
  double abs_tol = 1e-9;
  int max_subdivisions = 60;
  double truncation_point = 60.0;
  double divergence_growth_floor = 1e-6;
};

enum class HalfLine { Positive, Negative };

using Integrand = std::function<double(double)>;

/// Globally adaptive 7-point Gauss / 15-point Kronrod integration of g over
/// [a, b]. The interval with the largest error estimate is bisected until the
/// summed estimate drops below abs_tol or max_subdivisions intervals exist.
IntegralResult integrate_interval(const Integrand& g, double a, double b, double abs_tol,
                                  int max_subdivisions);

/// Integral over [0, inf) or (-inf, 0].
///
/// The core [0, T] is handled by integrate_interval; the tail is summed over
/// doubling windows [T, 2T], [2T, 4T], ... The integral is Converged once two
/// successive windows each contribute less than abs_tol, and Divergent once
/// four successive windows each contribute at least divergence_growth_floor.
IntegralResult integrate_half_line(const Integrand& g, HalfLine side,
                                   const QuadratureConfig& cfg = {});

/// E[f(X)] for X ~ N(0, sigma^2), integrating p(x) f(x) over [-12 sigma, 12 sigma]
/// (split at 0 so kinks at the origin land on an endpoint).
/// Throws Error(MaxSubdivisions) if either half misses its tolerance.
double gaussian_expectation(const Integrand& f, double sigma, const QuadratureConfig& cfg = {});

}  // namespace telu
