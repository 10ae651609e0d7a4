// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

// Scalar value/derivative kernels for every studied activation, templated on
// the working precision. All arithmetic stays in T: a float instantiation
// never widens to double, so exp underflow and erf saturation happen exactly
// where a float32 framework would see them.
//
// Subfunction conventions:
//   ln(1 + u)          -> log1p(u)
//   e^x - 1            -> expm1(x)
//   1 / (1 + e^{-x})   -> branch on sign so e^{-x} never overflows

#pragma once

#include <cmath>
#include <numbers>

#include "telu/activations.hpp"

namespace telu::kernels {

template <class T>
inline T sigmoid(T x) {
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  const T e = std::exp(x);
  return e / (T(1) + e);
}

template <class T>
inline T softplus(T x) {
  return std::log1p(std::exp(x));
}

template <class T>
inline T normal_cdf(T x) {
  return T(0.5) * (T(1) + std::erf(x / std::numbers::sqrt2_v<T>));
}

template <class T>
inline T normal_pdf(T x) {
  // 1/sqrt(2*pi)
  constexpr T kInvSqrt2Pi = std::numbers::inv_sqrtpi_v<T> / std::numbers::sqrt2_v<T>;
  return kInvSqrt2Pi * std::exp(T(-0.5) * x * x);
}

template <class T> inline T telu(T x) { return x * std::tanh(std::exp(x)); }
template <class T> inline T telu_d(T x) {
  const T e = std::exp(x);
  const T t = std::tanh(e);
  return t + x * (T(1) - t * t) * e;
}

template <class T> inline T relu(T x) { return x > T(0) ? x : T(0); }
template <class T> inline T relu_d(T x) { return x >= T(0) ? T(1) : T(0); }

template <class T> inline T lrelu(T x) { return x >= T(0) ? x : T(kLeakySlope) * x; }
template <class T> inline T lrelu_d(T x) { return x >= T(0) ? T(1) : T(kLeakySlope); }

template <class T> inline T softplus_f(T x) { return softplus(x); }
template <class T> inline T softplus_d(T x) { return sigmoid(x); }

template <class T> inline T elu(T x) { return x < T(0) ? std::expm1(x) : x; }
template <class T> inline T elu_d(T x) { return x < T(0) ? std::exp(x) : T(1); }

template <class T> inline T silu(T x) { return x * sigmoid(x); }
template <class T> inline T silu_d(T x) {
  const T s = sigmoid(x);
  return s * (T(1) + x * (T(1) - s));
}

template <class T> inline T gelu(T x) { return x * normal_cdf(x); }
template <class T> inline T gelu_d(T x) { return normal_cdf(x) + x * normal_pdf(x); }

template <class T> inline T mish(T x) { return x * std::tanh(softplus(x)); }
template <class T> inline T mish_d(T x) {
  const T t = std::tanh(softplus(x));
  return t + x * sigmoid(x) * (T(1) - t * t);
}

template <class T> inline T logish(T x) { return x * std::log1p(sigmoid(x)); }
template <class T> inline T logish_d(T x) {
  const T s = sigmoid(x);
  return std::log1p(s) + x * s * (T(1) - s) / (T(1) + s);
}

template <class T> inline T smish(T x) { return x * std::tanh(std::log1p(sigmoid(x))); }
template <class T> inline T smish_d(T x) {
  const T s = sigmoid(x);
  const T t = std::tanh(std::log1p(s));
  return t + x * (T(1) - t * t) * s * (T(1) - s) / (T(1) + s);
}

template <class T> inline T tanh_f(T x) { return std::tanh(x); }
template <class T> inline T tanh_d(T x) {
  const T t = std::tanh(x);
  return T(1) - t * t;
}

template <class T> inline T sigmoid_f(T x) { return sigmoid(x); }
template <class T> inline T sigmoid_d(T x) {
  const T s = sigmoid(x);
  return s * (T(1) - s);
}

/// Calls `fn(value_kernel, derivative_kernel)` with the kernel pair for `id`,
/// so callers can hoist the dispatch out of their inner loop. Each kernel is a
/// distinct closure type, which lets the compiler inline it into that loop.
template <class T, class Fn>
decltype(auto) dispatch(ActivationId id, Fn&& fn) {
  switch (id) {
    case ActivationId::TeLU: return fn([](T x) { return telu(x); }, [](T x) { return telu_d(x); });
    case ActivationId::ReLU: return fn([](T x) { return relu(x); }, [](T x) { return relu_d(x); });
    case ActivationId::LReLU: return fn([](T x) { return lrelu(x); }, [](T x) { return lrelu_d(x); });
    case ActivationId::Softplus: return fn([](T x) { return softplus_f(x); }, [](T x) { return softplus_d(x); });
    case ActivationId::ELU: return fn([](T x) { return elu(x); }, [](T x) { return elu_d(x); });
    case ActivationId::SiLU: return fn([](T x) { return silu(x); }, [](T x) { return silu_d(x); });
    case ActivationId::GELU: return fn([](T x) { return gelu(x); }, [](T x) { return gelu_d(x); });
    case ActivationId::Mish: return fn([](T x) { return mish(x); }, [](T x) { return mish_d(x); });
    case ActivationId::Logish: return fn([](T x) { return logish(x); }, [](T x) { return logish_d(x); });
    case ActivationId::Smish: return fn([](T x) { return smish(x); }, [](T x) { return smish_d(x); });
    case ActivationId::Tanh: return fn([](T x) { return tanh_f(x); }, [](T x) { return tanh_d(x); });
    case ActivationId::Sigmoid: return fn([](T x) { return sigmoid_f(x); }, [](T x) { return sigmoid_d(x); });
  }
  return fn([](T x) { return telu(x); }, [](T x) { return telu_d(x); });
}

}  // namespace telu::kernels
