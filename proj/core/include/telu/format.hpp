// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace telu {

inline constexpr int kSignificantDigits = 6;

/// "%.6g" formatting; non-finite values print as "inf", "-inf" or "nan".
std::string format_sig(double value, int digits = kSignificantDigits);

/// Rounds to `digits` significant digits (the value format_sig would print).
double round_sig(double value, int digits = kSignificantDigits);

}  // namespace telu
