// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "telu/analysis.hpp"
#include "telu/bench.hpp"
#include "telu/error.hpp"
#include "telu/format.hpp"
#include "telu/nn/dataset.hpp"
#include "telu/nn/rng.hpp"
#include "telu/nn/train.hpp"
#include "telu/tables.hpp"

namespace telu::cli {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
  if (!std::isfinite(v)) return format_sig(v);
  return round_sig(v);
}

struct Globals {
  std::string only;
  bool only_set = false;
  std::string format;
  std::string out_path;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::optional<double> step;
};

std::vector<ActivationId> ids_or(const Globals& g, std::span<const ActivationId> fallback) {
  if (g.only_set) return parse_filter(g.only);
  return {fallback.begin(), fallback.end()};
}

// Returns the format, defaulting to `def`; anything outside `allowed` is a usage error.
std::string pick_format(const Globals& g, const std::string& def, std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? def : g.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported --format '" + f + "' for this command");
}

std::string csv_or_json(const std::string& format, const std::string& csv, const json& doc) {
  return format == "json" ? doc.dump(2) + "\n" : csv;
}

// ---------------------------------------------------------------------------

struct DataArgs {
  std::string images;
  std::string labels;
  double val_fraction = 0.2;
};

std::pair<nn::Dataset, nn::Dataset> load_data(const DataArgs& d, std::uint64_t seed) {
  if (d.images.empty() != d.labels.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--images and --labels must be given together");
  }
  const nn::Dataset all = d.images.empty() ? nn::synth_blobs(seed) : nn::load_idx(d.images, d.labels);
  return nn::split_dataset(all, d.val_fraction, seed);
}

// ---------------------------------------------------------------------------

std::string cmd_tables(const Globals& g, double sigma) {
  const auto ids = ids_or(g, kLinearUnits);
  const auto format = pick_format(g, "csv", {"csv", "json"});
  TableOptions opts;
  if (g.tol) opts.quadrature.abs_tol = *g.tol;
  if (g.step) opts.scan.step = *g.step;
  opts.bias_sigma = sigma;
  return render_tables(ids, format == "json" ? TableFormat::Json : TableFormat::Csv, opts);
}

std::string cmd_scan(const Globals& g, const std::string& precision, double lo, double hi) {
  const auto ids = ids_or(g, kLinearUnits);
  const auto format = pick_format(g, "csv", {"csv", "json"});
  const auto p = parse_precision(precision);
  if (!p) throw Error(ErrorCode::InvalidArgument, "unknown precision '" + precision + "'");
  ScanOptions opts;
  opts.precision = *p;
  opts.lo = lo;
  opts.hi = hi;
  if (g.step) opts.step = *g.step;

  std::ostringstream csv;
  csv << "id,precision,boundary,last_zero,first_nonzero,dfdx_at_-10,dfdx_at_-100\n";
  json doc = json::array();
  for (ActivationId id : ids) {
    std::optional<NullDomainReport> rep;
    try {
      rep = underflow_scan(id, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoNullRegion) throw;
    }
    const double p10 = eval_derivative(id, -10.0, *p);
    const double p100 = eval_derivative(id, -100.0, *p);
    csv << name(id) << ',' << name(*p) << ',';
    json row = {{"id", name(id)}, {"precision", name(*p)}, {"step", opts.step}};
    if (rep) {
      csv << format_sig(rep->boundary) << ',' << format_sig(rep->last_zero) << ','
          << format_sig(rep->first_nonzero);
      row["boundary"] = number(rep->boundary);
      row["last_zero"] = number(rep->last_zero);
      row["first_nonzero"] = number(rep->first_nonzero);
      row["status"] = "ok";
    } else {
      csv << "none,none,none";
      row["boundary"] = nullptr;
      row["status"] = "no_null_region";
    }
    csv << ',' << format_sig(p10) << ',' << format_sig(p100) << '\n';
    row["probes"] = json::array({{{"x", -10.0}, {"dfdx", number(p10)}}, {{"x", -100.0}, {"dfdx", number(p100)}}});
    doc.push_back(row);
  }
  return csv_or_json(format, csv.str(), doc);
}

std::string limit_text(const DecayReport& r) {
  switch (r.limit_kind) {
    case LimitKind::Finite: return format_sig(r.limit);
    case LimitKind::Unbounded: return "unbounded";
    case LimitKind::Undefined: break;
  }
  return "n/a";
}

std::string cmd_decay(const Globals& g) {
  const auto ids = ids_or(g, kLinearUnits);
  const auto format = pick_format(g, "csv", {"csv", "json"});
  std::ostringstream csv;
  csv << "id,limit,class";
  for (double x : kDefaultDecaySamples) csv << ",ratio_at_" << format_sig(x);
  csv << '\n';
  json doc = json::array();
  for (ActivationId id : ids) {
    const auto r = decay_classify(id);
    csv << name(id) << ',' << limit_text(r) << ',' << to_string(r.assigned_class);
    json ratios = json::array();
    for (const auto& [x, v] : r.ratio_samples) {
      csv << ',' << format_sig(v);
      ratios.push_back({{"x", x}, {"ratio", number(v)}});
    }
    csv << '\n';
    doc.push_back({{"id", name(id)},
                   {"limit", r.limit_kind == LimitKind::Finite ? number(r.limit) : json(limit_text(r))},
                   {"class", to_string(r.assigned_class)},
                   {"ratios", ratios}});
  }
  return csv_or_json(format, csv.str(), doc);
}

struct GradcheckOutcome {
  std::string text;
  bool ok = true;
};

GradcheckOutcome cmd_gradcheck(const Globals& g, std::ostream& err) {
  const auto ids = ids_or(g, kAllActivations);
  const auto format = pick_format(g, "csv", {"csv", "json"});
  const double limit = g.tol.value_or(1e-6);
  std::ostringstream csv;
  csv << "id,max_rel_error,worst_x\n";
  json rows = json::array();
  GradCheckResult worst{ids.front(), 0.0, 0.0};
  for (ActivationId id : ids) {
    const auto r = gradient_check(id);
    csv << name(id) << ',' << format_sig(r.max_rel_error) << ',' << format_sig(r.worst_x) << '\n';
    rows.push_back({{"id", name(id)}, {"max_rel_error", number(r.max_rel_error)}, {"worst_x", number(r.worst_x)}});
    if (r.max_rel_error > worst.max_rel_error) worst = r;
  }
  const bool ok = worst.max_rel_error < limit;
  err << "max relative error " << format_sig(worst.max_rel_error) << " (" << name(worst.id) << " at x="
      << format_sig(worst.worst_x) << "), limit " << format_sig(limit) << (ok ? ": ok" : ": FAILED") << '\n';
  json doc = {{"tolerance", limit}, {"max_rel_error", number(worst.max_rel_error)}, {"ok", ok}, {"rows", rows}};
  return {csv_or_json(format, csv.str(), doc), ok};
}

std::string cmd_bench(const Globals& g, BenchConfig cfg) {
  const auto ids = ids_or(g, kLinearUnits);
  const auto format = pick_format(g, "csv", {"csv", "json"});
  cfg.seed = g.seed;
  const auto recs = run_bench(ids, cfg);
  return format == "json" ? export_bench_json(recs) : export_bench_csv(recs);
}

struct NnOutcome {
  std::string text;
  bool non_finite = false;
};

json history_json(std::span<const nn::EpochMetrics> hist) {
  json h = json::array();
  for (const auto& m : hist) {
    h.push_back({{"epoch", m.epoch},
                 {"train_loss", number(m.train_loss)},
                 {"train_acc", number(m.train_accuracy)},
                 {"val_acc", number(m.val_accuracy)}});
  }
  return h;
}

NnOutcome cmd_recovery(const Globals& g, const DataArgs& data, nn::RecoveryConfig cfg) {
  const ActivationId defaults[] = {ActivationId::TeLU, ActivationId::Mish, ActivationId::GELU,
                                   ActivationId::ReLU};
  const auto ids = ids_or(g, defaults);
  const auto format = pick_format(g, "csv", {"csv", "json"});
  const auto [train_set, val_set] = load_data(data, g.seed);
  const auto outcomes = nn::recovery_experiment(ids, cfg, train_set, val_set);

  std::ostringstream csv;
  csv << "id,first_recovery_epoch,final_val_acc,non_finite_loss\n";
  json rows = json::array();
  bool non_finite = false;
  for (const auto& o : outcomes) {
    const std::string epoch = o.first_recovery_epoch ? std::to_string(*o.first_recovery_epoch) : "never";
    csv << name(o.id) << ',' << epoch << ',' << format_sig(o.final_val_accuracy) << ','
        << (o.non_finite_loss ? "true" : "false") << '\n';
    rows.push_back({{"id", name(o.id)},
                    {"first_recovery_epoch", o.first_recovery_epoch ? json(*o.first_recovery_epoch) : json(nullptr)},
                    {"final_val_acc", number(o.final_val_accuracy)},
                    {"non_finite_loss", o.non_finite_loss},
                    {"history", history_json(o.history)}});
    non_finite = non_finite || o.non_finite_loss;
  }
  json doc = {{"seed", g.seed},
              {"bias_init", cfg.train.bias_init},
              {"epochs", cfg.train.epochs},
              {"recovery_threshold", nn::kRecoveryChanceMultiple / static_cast<double>(train_set.n_classes)},
              {"results", rows}};
  return {csv_or_json(format, csv.str(), doc), non_finite};
}

NnOutcome cmd_noise(const Globals& g, const DataArgs& data, const nn::TrainConfig& base,
                    std::size_t hidden, const std::vector<double>& sigmas) {
  const ActivationId defaults[] = {ActivationId::TeLU, ActivationId::ReLU, ActivationId::GELU,
                                   ActivationId::Mish};
  const auto ids = ids_or(g, defaults);
  const auto format = pick_format(g, "csv", {"csv", "json"});
  const auto [train_set, val_set] = load_data(data, g.seed);
  nn::TrainConfig cfg = base;
  cfg.seed = g.seed;

  std::ostringstream csv;
  csv << "id,sigma,accuracy\n";
  json rows = json::array();
  bool non_finite = false;
  for (ActivationId id : ids) {
    const std::size_t widths[] = {train_set.n_features, hidden, static_cast<std::size_t>(train_set.n_classes)};
    auto model = nn::init_model(widths, id, cfg.weight_init, cfg.bias_init, cfg.seed);
    const auto rep = nn::train(model, train_set, val_set, cfg);
    non_finite = non_finite || rep.non_finite_loss;
    const auto res = nn::evaluate_with_noise(model, val_set, sigmas, nn::derive_seed(g.seed, 0x6e6f697365));
    json acc = json::array();
    for (const auto& [s, a] : res) {
      csv << name(id) << ',' << format_sig(s) << ',' << format_sig(a) << '\n';
      acc.push_back({{"sigma", number(s)}, {"accuracy", number(a)}});
    }
    rows.push_back({{"id", name(id)}, {"non_finite_loss", rep.non_finite_loss}, {"results", acc}});
  }
  json doc = {{"seed", g.seed}, {"epochs", cfg.epochs}, {"results", rows}};
  return {csv_or_json(format, csv.str(), doc), non_finite};
}

std::string cmd_plot(const Globals& g, const PlotOptions& opts) {
  const ActivationId defaults[] = {ActivationId::TeLU};
  const auto ids = ids_or(g, defaults);
  pick_format(g, "svg", {"svg"});
  return render_plot_svg(ids, opts);
}

}  // namespace

std::vector<ActivationId> parse_filter(const std::string& text) {
  std::vector<ActivationId> ids;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    const auto id = parse_activation(item);
    if (!id) throw Error(ErrorCode::InvalidFilter, "unknown activation '" + item + "'");
    if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
  }
  if (ids.empty()) throw Error(ErrorCode::InvalidFilter, "activation filter is empty");
  return ids;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the TeLU activation and its baselines", "telu-lab"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* only = app.add_option("--only", g.only, "Comma-separated activation names");
  app.add_option("--format", g.format, "Output format: csv, json or svg");
  app.add_option("--out", g.out_path, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Seed for every stochastic step");
  app.add_option("--tol", g.tol, "Quadrature tolerance (tables) or error limit (gradcheck)");
  app.add_option("--step", g.step, "Underflow scan step");

  auto* tables = app.add_subcommand("tables", "Near-linearity, proximity, bias, null-domain and decay tables");
  double sigma = 1.0;
  tables->add_option("--sigma", sigma, "Input standard deviation for the output-bias table");

  auto* scan = app.add_subcommand("scan", "Locate where derivatives underflow to exactly zero");
  std::string precision = "f32";
  double scan_lo = -200.0, scan_hi = 0.0;
  scan->add_option("--precision", precision, "f32 or f64");
  scan->add_option("--lo", scan_lo, "Scan start");
  scan->add_option("--hi", scan_hi, "Scan end");

  auto* decay = app.add_subcommand("decay", "Classify derivative decay relative to TeLU");
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare closed-form derivatives with central differences");

  auto* bench = app.add_subcommand("bench", "Time forward and backward float32 passes");
  BenchConfig bench_cfg;
  bool full_scale = false;
  bench->add_option("--len", bench_cfg.vector_len, "Vector length");
  bench->add_option("--iters", bench_cfg.iterations, "Passes per timed batch");
  bench->add_option("--reps", bench_cfg.repetitions, "Timed batches (median reported)");
  bench->add_option("--warmup", bench_cfg.warmup, "Untimed warm-up passes");
  bench->add_flag("--full-scale", full_scale, "Use 10^6 passes per batch");

  DataArgs data;
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--images", data.images, "IDX image file (default: synthetic blobs)");
    sub->add_option("--labels", data.labels, "IDX label file");
    sub->add_option("--val-fraction", data.val_fraction, "Held-out fraction");
  };

  auto* recovery = app.add_subcommand("recovery", "Negative-bias gradient recovery experiment");
  auto rec_cfg = nn::RecoveryConfig::desk(1);
  bool no_bias_decay = false;
  bool serial = false;
  recovery->add_option("--bias", rec_cfg.train.bias_init, "Initial bias of every layer");
  recovery->add_option("--epochs", rec_cfg.train.epochs, "Training epochs");
  recovery->add_option("--lr", rec_cfg.train.learning_rate, "Learning rate");
  recovery->add_option("--batch", rec_cfg.train.batch_size, "Mini-batch size");
  recovery->add_option("--momentum", rec_cfg.train.momentum, "Momentum");
  recovery->add_option("--weight-decay", rec_cfg.train.weight_decay, "L2 weight decay");
  recovery->add_option("--hidden", rec_cfg.hidden, "Two hidden widths")->expected(2);
  recovery->add_flag("--no-bias-decay", no_bias_decay, "Exclude biases from weight decay");
  recovery->add_flag("--serial", serial, "Train activations one after another");
  add_data(recovery);

  auto* noise = app.add_subcommand("noise", "Accuracy under Gaussian input noise");
  nn::TrainConfig noise_cfg;
  noise_cfg.learning_rate = 0.05;
  noise_cfg.batch_size = 32;
  noise_cfg.epochs = 15;
  std::size_t noise_hidden = 64;
  std::vector<double> sigmas = {0.0, 0.1, 0.2, 0.3, 0.5};
  noise->add_option("--epochs", noise_cfg.epochs, "Training epochs");
  noise->add_option("--lr", noise_cfg.learning_rate, "Learning rate");
  noise->add_option("--batch", noise_cfg.batch_size, "Mini-batch size");
  noise->add_option("--hidden", noise_hidden, "Hidden width");
  noise->add_option("--sigmas", sigmas, "Noise standard deviations")->delimiter(',');
  add_data(noise);

  auto* plot = app.add_subcommand("plot", "SVG of each activation and its derivative");
  PlotOptions plot_opts;
  plot->add_option("--xmin", plot_opts.x_min, "Left end of the x range");
  plot->add_option("--xmax", plot_opts.x_max, "Right end of the x range");
  plot->add_option("--samples", plot_opts.samples, "Sample points");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "telu-lab: " << e.what() << '\n';
    return kExitUsage;
  }
  g.only_set = only->count() > 0;

  try {
    std::string text;
    int code = kExitOk;
    if (*tables) {
      text = cmd_tables(g, sigma);
    } else if (*scan) {
      text = cmd_scan(g, precision, scan_lo, scan_hi);
    } else if (*decay) {
      text = cmd_decay(g);
    } else if (*gradcheck) {
      auto r = cmd_gradcheck(g, err);
      text = std::move(r.text);
      if (!r.ok) code = kExitNumerical;
    } else if (*bench) {
      text = cmd_bench(g, full_scale ? BenchConfig::full_scale() : bench_cfg);
    } else if (*recovery) {
      rec_cfg.train.seed = g.seed;
      rec_cfg.train.decay_biases = !no_bias_decay;
      rec_cfg.parallel = !serial;
      auto r = cmd_recovery(g, data, rec_cfg);
      text = std::move(r.text);
      if (r.non_finite) {
        err << "telu-lab: " << to_string(ErrorCode::NonFiniteLoss) << ": a training run diverged\n";
        code = kExitNumerical;
      }
    } else if (*noise) {
      auto r = cmd_noise(g, data, noise_cfg, noise_hidden, sigmas);
      text = std::move(r.text);
      if (r.non_finite) {
        err << "telu-lab: " << to_string(ErrorCode::NonFiniteLoss) << ": a training run diverged\n";
        code = kExitNumerical;
      }
    } else if (*plot) {
      text = cmd_plot(g, plot_opts);
    }

    if (g.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(g.out_path, std::ios::binary);
      file << text;
      if (!file) {
        err << "telu-lab: cannot write " << g.out_path << '\n';
        return kExitUsage;
      }
    }
    return code;
  } catch (const Error& e) {
    err << "telu-lab: " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitUsage;
  }
}

}  // namespace telu::cli
