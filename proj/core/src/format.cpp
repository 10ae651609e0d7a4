// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace telu {

std::string format_sig(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

double round_sig(double value, int digits) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_sig(value, digits).c_str(), nullptr);
}

}  // namespace telu
