// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cli.hpp"
#include "telu/error.hpp"

namespace telu::cli {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 700.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 440.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string coord(double v) { return fmt("%.3f", v); }

}  // namespace

std::string render_plot_svg(std::span<const ActivationId> ids, const PlotOptions& opts) {
  if (ids.empty()) throw Error(ErrorCode::InvalidFilter, "plot needs at least one activation");
  if (!(opts.x_min < opts.x_max) || !std::isfinite(opts.x_min) || !std::isfinite(opts.x_max)) {
    throw Error(ErrorCode::InvalidArgument, "plot range must satisfy x_min < x_max");
  }
  if (opts.samples < 2) throw Error(ErrorCode::InvalidArgument, "plot needs at least 2 samples");

  const auto n = static_cast<std::size_t>(opts.samples);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = opts.x_min + (opts.x_max - opts.x_min) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  std::vector<std::vector<double>> values, derivs;
  double y_min = 0.0, y_max = 0.0;
  for (ActivationId id : ids) {
    values.push_back(eval_batch(id, xs));
    derivs.push_back(derivative_batch(id, xs));
    for (const auto* series : {&values.back(), &derivs.back()}) {
      for (double y : *series) {
        if (!std::isfinite(y)) continue;
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (y_max - y_min < 1e-12) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  auto px = [&](double x) { return kLeft + (x - opts.x_min) / (opts.x_max - opts.x_min) * (kRight - kLeft); };
  auto py = [&](double y) { return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
       fmt("%.0f", kHeight) + "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " + fmt("%.0f", kHeight) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" + fmt("%.0f", kHeight) +
       "\" fill=\"white\"/>\n";
  s += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" + coord(kRight - kLeft) +
       "\" height=\"" + coord(kBottom - kTop) + "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

  // Axes through the origin, clamped to the frame when it lies outside.
  const double axis_y = py(0.0);
  const double axis_x = px(std::clamp(0.0, opts.x_min, opts.x_max));
  s += "<line class=\"axis-x\" x1=\"" + coord(kLeft) + "\" y1=\"" + coord(axis_y) + "\" x2=\"" +
       coord(kRight) + "\" y2=\"" + coord(axis_y) + "\" stroke=\"black\"/>\n";
  s += "<line class=\"axis-y\" x1=\"" + coord(axis_x) + "\" y1=\"" + coord(kTop) + "\" x2=\"" +
       coord(axis_x) + "\" y2=\"" + coord(kBottom) + "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 6; ++i) {
    const double x = opts.x_min + (opts.x_max - opts.x_min) * i / 6.0;
    s += "<text x=\"" + coord(px(x)) + "\" y=\"" + coord(kBottom + 16.0) + "\" text-anchor=\"middle\">" +
         fmt("%.3g", x) + "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double y = y_min + (y_max - y_min) * i / 5.0;
    s += "<text x=\"" + coord(kLeft - 6.0) + "\" y=\"" + coord(py(y) + 4.0) + "\" text-anchor=\"end\">" +
         fmt("%.3g", y) + "</text>\n";
  }

  for (std::size_t k = 0; k < ids.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    const std::string id(name(ids[k]));
    for (int kind = 0; kind < 2; ++kind) {
      const auto& series = kind == 0 ? values[k] : derivs[k];
      s += "<polyline data-id=\"" + id + "\" data-kind=\"" + (kind == 0 ? "value" : "derivative") +
           "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
           (kind == 1 ? " stroke-dasharray=\"5,3\"" : "") + " points=\"";
      bool first = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(series[i])) continue;
        if (!first) s += ' ';
        first = false;
        s += coord(px(xs[i])) + "," + coord(py(series[i]));
      }
      s += "\"/>\n";
    }
    const double ly = kTop + 10.0 + 36.0 * static_cast<double>(k);
    s += "<line x1=\"715\" y1=\"" + coord(ly) + "\" x2=\"745\" y2=\"" + coord(ly) + "\" stroke=\"" +
         color + "\" stroke-width=\"1.5\"/>\n";
    s += "<text x=\"752\" y=\"" + coord(ly + 4.0) + "\">" + id + "</text>\n";
    s += "<line x1=\"715\" y1=\"" + coord(ly + 16.0) + "\" x2=\"745\" y2=\"" + coord(ly + 16.0) +
         "\" stroke=\"" + color + "\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\"/>\n";
    s += "<text x=\"752\" y=\"" + coord(ly + 20.0) + "\">" + id + "'</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace telu::cli
