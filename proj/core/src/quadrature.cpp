// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "telu/error.hpp"

namespace telu {

std::string_view to_string(IntegralStatus status) noexcept {
  switch (status) {
    case IntegralStatus::Converged: return "converged";
    case IntegralStatus::Divergent: return "divergent";
    case IntegralStatus::MaxSubdivisions: return "max_subdivisions";
  }
  return "?";
}

namespace {

// Kronrod abscissae on [0, 1] (symmetric); odd indices are shared with the
// 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

Segment gauss_kronrod(const Integrand& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = g(center - dx) + g(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  double error = std::abs(kronrod - gauss);
  if (!std::isfinite(kronrod)) error = std::numeric_limits<double>::infinity();
  return {a, b, kronrod, error};
}

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

}  // namespace

IntegralResult integrate_interval(const Integrand& g, double a, double b, double abs_tol,
                                  int max_subdivisions) {
  if (!(abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
  if (a == b) return {0.0, 0.0, IntegralStatus::Converged};

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  Segment first = gauss_kronrod(g, a, b);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  int count = 1;

  while (error > abs_tol && count < std::max(1, max_subdivisions)) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(g, worst.a, mid);
    const Segment right = gauss_kronrod(g, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // Recompute the totals from the leaves; the running sums drift in the last bits.
  double v = 0.0;
  double e = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  const auto status = (e <= abs_tol) ? IntegralStatus::Converged : IntegralStatus::MaxSubdivisions;
  return {v, e, status};
}

IntegralResult integrate_half_line(const Integrand& g, HalfLine side, const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
  if (!(cfg.truncation_point > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "truncation point must be positive");
  }

  // Integrate on [0, inf) in both cases; the negative side is reflected.
  const Integrand h = side == HalfLine::Positive ? g : Integrand([&g](double t) { return g(-t); });

  IntegralResult core = integrate_interval(h, 0.0, cfg.truncation_point, 0.5 * cfg.abs_tol,
                                           cfg.max_subdivisions);
  if (core.status != IntegralStatus::Converged) {
    return {core.value, core.abs_error_estimate, IntegralStatus::MaxSubdivisions};
  }

  constexpr int kConvergedRun = 2;
  constexpr int kDivergedRun = 4;
  constexpr int kMaxWindows = 40;

  double value = core.value;
  double error = core.abs_error_estimate;
  int small_run = 0;
  int large_run = 0;
  double lo = cfg.truncation_point;
  double window_tol = 0.25 * cfg.abs_tol;

  for (int k = 0; k < kMaxWindows; ++k) {
    const double hi = 2.0 * lo;
    const IntegralResult w = integrate_interval(h, lo, hi, window_tol, cfg.max_subdivisions);
    const double contribution = std::abs(w.value);
    value += w.value;
    error += w.abs_error_estimate;

    if (!std::isfinite(w.value) || contribution >= cfg.divergence_growth_floor) {
      ++large_run;
    } else {
      large_run = 0;
    }
    if (std::isfinite(w.value) && contribution < cfg.abs_tol &&
        w.status == IntegralStatus::Converged) {
      ++small_run;
    } else {
      small_run = 0;
    }

    if (large_run >= kDivergedRun) {
      return {value, std::isfinite(error) ? error : std::numeric_limits<double>::infinity(),
              IntegralStatus::Divergent};
    }
    if (small_run >= kConvergedRun) {
      const auto status =
          error <= cfg.abs_tol ? IntegralStatus::Converged : IntegralStatus::MaxSubdivisions;
      return {value, error, status};
    }
    lo = hi;
    window_tol *= 0.5;
  }
  return {value, error, IntegralStatus::MaxSubdivisions};
}

double gaussian_expectation(const Integrand& f, double sigma, const QuadratureConfig& cfg) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  const Integrand weighted = [&](double x) {
    const double z = x / sigma;
    return norm * std::exp(-0.5 * z * z) * f(x);
  };
  const double tol = std::min(cfg.abs_tol, 1e-8);
  const double reach = 12.0 * sigma;
  const IntegralResult left = integrate_interval(weighted, -reach, 0.0, 0.5 * tol, cfg.max_subdivisions);
  const IntegralResult right = integrate_interval(weighted, 0.0, reach, 0.5 * tol, cfg.max_subdivisions);
  if (!left.converged() || !right.converged()) {
    throw Error(ErrorCode::MaxSubdivisions,
                "gaussian expectation missed tolerance (estimate " +
                    std::to_string(left.abs_error_estimate + right.abs_error_estimate) + ")");
  }
  return left.value + right.value;
}

}  // namespace telu
