// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/tables.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "telu/error.hpp"
#include "telu/format.hpp"

namespace telu {

namespace {

using nlohmann::json;

std::string cell(const IntegralResult& r) {
  return r.status == IntegralStatus::Divergent ? "inf" : format_sig(r.value);
}

json json_number(double v) {
  if (!std::isfinite(v)) return format_sig(v);
  return round_sig(v);
}

json json_integral(const IntegralResult& r) {
  json j;
  j["value"] = r.status == IntegralStatus::Divergent ? json("inf") : json_number(r.value);
  j["abs_error_estimate"] = json_number(r.abs_error_estimate);
  j["status"] = std::string(to_string(r.status));
  return j;
}

std::string limit_cell(const DecayReport& d) {
  switch (d.limit_kind) {
    case LimitKind::Finite: return format_sig(d.limit);
    case LimitKind::Unbounded: return "unbounded";
    case LimitKind::Undefined: return "n/a";
  }
  return "n/a";
}

}  // namespace

TableSet compute_tables(std::span<const ActivationId> ids, const TableOptions& opts) {
  if (ids.empty()) throw Error(ErrorCode::InvalidFilter, "activation filter is empty");
  for (ActivationId id : ids) {
    if (!is_linear_unit(id)) {
      throw Error(ErrorCode::InvalidFilter, std::string(name(id)) + " is not a linear unit");
    }
  }
  TableSet t;
  for (ActivationId id : ids) {
    t.near_linearity.push_back(near_linearity(id, opts.quadrature));
    t.proximity.push_back(relu_proximity(id, opts.quadrature));
    t.output_bias.emplace_back(id, output_bias(id, opts.bias_sigma, opts.quadrature));
    try {
      t.null_domain.emplace_back(id, underflow_scan(id, opts.scan));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoNullRegion) throw;
      t.null_domain.emplace_back(id, std::nullopt);
    }
    t.decay.push_back(decay_classify(id));
  }
  return t;
}

std::string render_tables(const TableSet& t, TableFormat format, const TableOptions& opts) {
  if (format == TableFormat::Csv) {
    std::ostringstream out;
    out << "# near_linearity\nid,L1,L2,slope\n";
    for (const auto& r : t.near_linearity) {
      out << name(r.id) << ',' << cell(r.l1) << ',' << cell(r.l2) << ',' << format_sig(r.slope)
          << '\n';
    }
    out << "\n# relu_proximity\nid,neg,pos\n";
    for (const auto& r : t.proximity) {
      out << name(r.id) << ',' << cell(r.neg) << ',' << cell(r.pos) << '\n';
    }
    out << "\n# output_bias\nid,sigma,bias\n";
    for (const auto& [id, b] : t.output_bias) {
      out << name(id) << ',' << format_sig(opts.bias_sigma) << ',' << format_sig(b) << '\n';
    }
    out << "\n# null_domain\nid,precision,boundary,last_zero,dfdx_at_-10,dfdx_at_-100\n";
    for (const auto& [id, rep] : t.null_domain) {
      out << name(id) << ',' << name(opts.scan.precision) << ',';
      if (rep) {
        out << format_sig(rep->boundary) << ',' << format_sig(rep->last_zero) << ','
            << format_sig(rep->probes.at(0).second) << ',' << format_sig(rep->probes.at(1).second);
      } else {
        const double p10 = eval_derivative(id, -10.0, opts.scan.precision);
        const double p100 = eval_derivative(id, -100.0, opts.scan.precision);
        out << "none,none," << format_sig(p10) << ',' << format_sig(p100);
      }
      out << '\n';
    }
    out << "\n# decay\nid,limit,class";
    if (!t.decay.empty()) {
      for (const auto& [x, r] : t.decay.front().ratio_samples) out << ",ratio_at_" << format_sig(x);
    }
    out << '\n';
    for (const auto& d : t.decay) {
      out << name(d.id) << ',' << limit_cell(d) << ',' << to_string(d.assigned_class);
      for (const auto& [x, r] : d.ratio_samples) out << ',' << format_sig(r);
      out << '\n';
    }
    return out.str();
  }

  json doc;
  doc["meta"] = {
      {"significant_digits", kSignificantDigits},
      {"quadrature_abs_tol", opts.quadrature.abs_tol},
      {"truncation_point", opts.quadrature.truncation_point},
      {"scan_precision", std::string(name(opts.scan.precision))},
      {"scan_step", opts.scan.step},
      {"decay_agreement_tol", kDecayAgreementTol},
      {"decay_growth_factor", kDecayGrowthFactor},
      {"bias_sigma", opts.bias_sigma},
  };
  json& nl = doc["near_linearity"] = json::array();
  for (const auto& r : t.near_linearity) {
    nl.push_back({{"id", std::string(name(r.id))},
                  {"L1", json_integral(r.l1)},
                  {"L2", json_integral(r.l2)},
                  {"slope", json_number(r.slope)}});
  }
  json& px = doc["relu_proximity"] = json::array();
  for (const auto& r : t.proximity) {
    px.push_back({{"id", std::string(name(r.id))},
                  {"neg", json_integral(r.neg)},
                  {"pos", json_integral(r.pos)}});
  }
  json& ob = doc["output_bias"] = json::array();
  for (const auto& [id, b] : t.output_bias) {
    ob.push_back({{"id", std::string(name(id))},
                  {"sigma", json_number(opts.bias_sigma)},
                  {"bias", json_number(b)}});
  }
  json& nd = doc["null_domain"] = json::array();
  for (const auto& [id, rep] : t.null_domain) {
    json row{{"id", std::string(name(id))}, {"precision", std::string(name(opts.scan.precision))}};
    if (rep) {
      row["boundary"] = json_number(rep->boundary);
      row["last_zero"] = json_number(rep->last_zero);
      json probes = json::array();
      for (const auto& [x, v] : rep->probes) probes.push_back({{"x", x}, {"dfdx", json_number(v)}});
      row["probes"] = probes;
    } else {
      row["boundary"] = nullptr;
      row["status"] = "no_null_region";
    }
    nd.push_back(row);
  }
  json& dc = doc["decay"] = json::array();
  for (const auto& d : t.decay) {
    json samples = json::array();
    for (const auto& [x, r] : d.ratio_samples) samples.push_back({{"x", x}, {"ratio", json_number(r)}});
    json limit = d.limit_kind == LimitKind::Finite ? json_number(d.limit) : json(limit_cell(d));
    dc.push_back({{"id", std::string(name(d.id))},
                  {"limit", limit},
                  {"class", std::string(to_string(d.assigned_class))},
                  {"ratios", samples}});
  }
  return doc.dump(2) + "\n";
}

std::string render_tables(std::span<const ActivationId> ids, TableFormat format,
                          const TableOptions& opts) {
  return render_tables(compute_tables(ids, opts), format, opts);
}

}  // namespace telu
