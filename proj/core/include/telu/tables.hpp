// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "telu/analysis.hpp"

namespace telu {

enum class TableFormat { Csv, Json };

struct TableOptions {
  QuadratureConfig quadrature;
  ScanOptions scan;
  double bias_sigma = 1.0;
};

/// Every row of the five analytical tables for a set of linear units.
struct TableSet {
  std::vector<NearLinearityRow> near_linearity;
  std::vector<ProximityRow> proximity;
  std::vector<std::pair<ActivationId, double>> output_bias;
  std::vector<std::pair<ActivationId, std::optional<NullDomainReport>>> null_domain;
  std::vector<DecayReport> decay;
};

/// Throws Error(InvalidFilter) when `ids` is empty or names a non-linear-unit.
TableSet compute_tables(std::span<const ActivationId> ids, const TableOptions& opts = {});

/// CSV: one "# <table>" line, a header row and the data rows per table, tables
/// separated by a blank line. Divergent integrals print "inf".
/// JSON: an object keyed by table name plus a "meta" block with thresholds.
std::string render_tables(const TableSet& tables, TableFormat format, const TableOptions& opts = {});
std::string render_tables(std::span<const ActivationId> ids, TableFormat format,
                          const TableOptions& opts = {});

}  // namespace telu
