// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "telu/activations.hpp"

namespace telu::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one telu-lab invocation. `args` excludes the program name. Results go
/// to `out` (or the --out file), diagnostics to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Parses a comma-separated activation list. Throws Error(InvalidFilter) on
/// an empty list or an unknown name.
std::vector<ActivationId> parse_filter(const std::string& text);

struct PlotOptions {
  double x_min = -6.0;
  double x_max = 3.0;
  int samples = 600;
};

/// SVG with a value polyline and a dashed derivative polyline per id, axes and
/// a legend. Output bytes depend only on the arguments.
std::string render_plot_svg(std::span<const ActivationId> ids, const PlotOptions& opts = {});

}  // namespace telu::cli
