// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "telu/activation_kernels.hpp"
#include "telu/error.hpp"

namespace telu {

NearLinearityRow near_linearity(ActivationId id, const QuadratureConfig& cfg) {
  const double m = metadata(id).asymptotic_slope;
  const IntegralResult l1 = integrate_half_line(
      [id, m](double x) { return std::abs(eval(id, x) - m * x); }, HalfLine::Positive, cfg);
  const IntegralResult l2 = integrate_half_line(
      [id, m](double x) {
        const double d = eval(id, x) - m * x;
        return d * d;
      },
      HalfLine::Positive, cfg);
  return {id, l1, l2, m};
}

ProximityRow relu_proximity(ActivationId id, const QuadratureConfig& cfg) {
  const Integrand gap = [id](double x) {
    return std::abs(kernels::relu(x) - eval(id, x));
  };
  return {id, integrate_half_line(gap, HalfLine::Negative, cfg),
          integrate_half_line(gap, HalfLine::Positive, cfg)};
}

double output_bias(ActivationId id, double sigma, const QuadratureConfig& cfg) {
  return gaussian_expectation([id](double x) { return eval(id, x); }, sigma, cfg);
}

double output_bias(const Integrand& f, double sigma, const QuadratureConfig& cfg) {
  return gaussian_expectation(f, sigma, cfg);
}

std::vector<ZeroCenteringSample> zero_centering_samples(std::span<const double> sigmas,
                                                        const QuadratureConfig& cfg) {
  std::vector<ZeroCenteringSample> out;
  out.reserve(sigmas.size());
  for (double s : sigmas) {
    out.push_back({s, output_bias(ActivationId::TeLU, s, cfg), output_bias(ActivationId::ReLU, s, cfg)});
  }
  return out;
}

bool zero_centering_check(std::span<const double> sigmas, const QuadratureConfig& cfg) {
  const auto samples = zero_centering_samples(sigmas, cfg);
  return std::all_of(samples.begin(), samples.end(), [](const ZeroCenteringSample& s) {
    return 0.0 < s.telu_bias && s.telu_bias < s.relu_bias;
  });
}

// ---------------------------------------------------------------------------

namespace {

// Input as the scan precision sees it.
double quantize(double x, Precision p) {
  return p == Precision::F32 ? static_cast<double>(static_cast<float>(x)) : x;
}

}  // namespace

NullDomainReport underflow_scan(ActivationId id, const ScanOptions& opts) {
  if (!(opts.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "scan step must be positive");
  if (!(opts.hi > opts.lo)) throw Error(ErrorCode::InvalidArgument, "scan range is empty");

  const auto derivative = [&](double x) { return eval_derivative(id, x, opts.precision); };
  // Grid anchored at hi so the upper end (usually 0) is hit exactly.
  const auto n = static_cast<long long>(std::llround((opts.hi - opts.lo) / opts.step));
  const auto grid = [&](long long k) {
    return quantize(opts.hi - static_cast<double>(n - k) * opts.step, opts.precision);
  };

  if (derivative(grid(0)) != 0.0) {
    throw Error(ErrorCode::NoNullRegion,
                std::string(name(id)) + "' is nonzero at the start of the scan range");
  }

  long long k = 1;
  while (k <= n && derivative(grid(k)) == 0.0) ++k;

  NullDomainReport report{id, opts.precision, opts.hi, opts.hi, opts.hi, opts.step, {}};
  if (k <= n) {
    double zero = grid(k - 1);
    double nonzero = grid(k);
    report.last_zero = zero;
    report.first_nonzero = nonzero;
    // Bisect down to adjacent representable inputs.
    for (int it = 0; it < 200; ++it) {
      const double mid = quantize(0.5 * (zero + nonzero), opts.precision);
      if (mid <= zero || mid >= nonzero) break;
      if (derivative(mid) == 0.0) {
        zero = mid;
      } else {
        nonzero = mid;
      }
    }
    report.boundary = nonzero;
  }
  for (double probe : {-10.0, -100.0}) {
    report.probes.emplace_back(probe, derivative(probe));
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string_view to_string(DecayClass c) noexcept {
  switch (c) {
    case DecayClass::XOverExp: return "Theta(x/e^x)";
    case DecayClass::InverseExp: return "Theta(1/e^x)";
    case DecayClass::FactorialBracket: return "O(1/x!);Omega(1/(x^2)!)";
    case DecayClass::None: return "none";
  }
  return "?";
}

DecayReport decay_classify(ActivationId id, std::span<const double> xs) {
  if (xs.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two decay samples");

  DecayReport report{id, {}, LimitKind::Undefined, 0.0, DecayClass::None};
  bool any_nonzero = false;
  for (double x : xs) {
    const double ref = std::abs(eval_derivative(ActivationId::TeLU, -x));
    const double other = std::abs(eval_derivative(id, -x));
    any_nonzero = any_nonzero || other != 0.0;
    const double ratio = other == 0.0 ? std::numeric_limits<double>::infinity() : ref / other;
    report.ratio_samples.emplace_back(x, ratio);
  }
  if (!any_nonzero) return report;

  const auto& s = report.ratio_samples;
  const double last = s.back().second;
  const double prev = s[s.size() - 2].second;

  if (std::isfinite(last) && std::isfinite(prev) &&
      std::abs(last - prev) <= kDecayAgreementTol * std::abs(last)) {
    report.limit_kind = LimitKind::Finite;
    report.limit = last;
    // Any nonzero constant ratio puts f' in TeLU's tight class.
    report.assigned_class = last > 0.0 ? DecayClass::XOverExp : DecayClass::None;
    return report;
  }

  bool growing = true;
  bool shrinking = true;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double a = s[i - 1].second;
    const double b = s[i].second;
    growing = growing && (std::isinf(b) || (std::isfinite(a) && b >= kDecayGrowthFactor * a));
    shrinking = shrinking && std::isfinite(a) && b * kDecayGrowthFactor <= a;
  }

  if (shrinking) {
    // f' decays slower than TeLU' (e.g. a leaky slope that never vanishes).
    report.limit_kind = LimitKind::Finite;
    report.limit = 0.0;
    return report;
  }
  if (!growing) return report;

  report.limit_kind = LimitKind::Unbounded;

  std::vector<std::pair<double, double>> finite;
  for (const auto& p : s) {
    if (std::isfinite(p.second)) finite.push_back(p);
  }
  const bool saturated = finite.size() < s.size();

  // Linear growth: ratio / x stays within a factor 1.5.
  if (!saturated && finite.size() >= 2) {
    double qmin = std::numeric_limits<double>::infinity();
    double qmax = 0.0;
    for (const auto& [x, r] : finite) {
      qmin = std::min(qmin, r / x);
      qmax = std::max(qmax, r / x);
    }
    if (qmax <= 1.5 * qmin) {
      report.assigned_class = DecayClass::InverseExp;
      return report;
    }
  }

  // Super-exponential growth: per-step increments of log(ratio) keep increasing.
  bool accelerating = finite.size() >= 3;
  for (std::size_t i = 2; i < finite.size(); ++i) {
    const double d0 = std::log(finite[i - 1].second) - std::log(finite[i - 2].second);
    const double d1 = std::log(finite[i].second) - std::log(finite[i - 1].second);
    accelerating = accelerating && d1 > d0;
  }
  if (accelerating || (saturated && finite.size() >= 2)) {
    report.assigned_class = DecayClass::FactorialBracket;
  }
  return report;
}

// ---------------------------------------------------------------------------

double find_derivative_root(ActivationId id, double lo, double hi, double tol) {
  if (!(hi > lo) || !(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "bad root bracket");
  double flo = eval_derivative(id, lo);
  const double fhi = eval_derivative(id, hi);
  if (!((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0))) {
    throw Error(ErrorCode::NoSignChange,
                std::string(name(id)) + "' does not change sign on the bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = eval_derivative(id, mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Supremum derivative_supremum(ActivationId id, double lo, double hi) {
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "empty supremum range");
  const auto g = [id](double x) { return std::abs(eval_derivative(id, x)); };

  constexpr double kCoarse = 1e-3;
  const auto n = static_cast<long long>(std::ceil((hi - lo) / kCoarse));
  Supremum best{lo, g(lo)};
  for (long long k = 1; k <= n; ++k) {
    const double x = std::min(hi, lo + static_cast<double>(k) * kCoarse);
    const double v = g(x);
    if (v > best.value) best = {x, v};
  }

  double a = std::max(lo, best.x - kCoarse);
  double b = std::min(hi, best.x + kCoarse);
  const double inv_phi = std::numbers::phi - 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > 1e-8) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  const double xm = 0.5 * (a + b);
  const double vm = g(xm);
  if (vm > best.value) best = {xm, vm};
  return best;
}

GradCheckResult gradient_check(ActivationId id, const GradCheckOptions& opts) {
  if (opts.points < 2 || !(opts.hi > opts.lo) || !(opts.h > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "gradient_check needs a nonempty grid and h > 0");
  }
  const bool piecewise = is_linear_unit(id) && metadata(id).complexity.piecewise > 0;
  const double dx = (opts.hi - opts.lo) / static_cast<double>(opts.points - 1);
  GradCheckResult out{id, 0.0, opts.lo};
  for (std::size_t i = 0; i < opts.points; ++i) {
    const double x = opts.lo + dx * static_cast<double>(i);
    double numeric;
    if (piecewise && std::abs(x) < 0.5 * dx) {
      numeric = (eval(id, x + opts.h) - eval(id, x)) / opts.h;
    } else {
      numeric = (eval(id, x + opts.h) - eval(id, x - opts.h)) / (2.0 * opts.h);
    }
    const double analytic = eval_derivative(id, x);
    const double rel = std::abs(analytic - numeric) /
                       std::max({std::abs(analytic), std::abs(numeric), opts.floor});
    if (rel > out.max_rel_error) out = {id, rel, x};
  }
  return out;
}

}  // namespace telu
