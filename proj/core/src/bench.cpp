// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "telu/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <string>

#include <json.hpp>

#if defined(__linux__)
#include <sched.h>
#endif

#include "telu/error.hpp"
#include "telu/format.hpp"
#include "telu/nn/rng.hpp"

namespace telu {

std::string_view to_string(BenchPass pass) noexcept {
  return pass == BenchPass::Forward ? "forward" : "backward";
}

namespace {

std::mutex g_bench_mutex;
thread_local double t_checksum = 0.0;

template <class T>
inline void escape(T* p) {
#if defined(__GNUC__) || defined(__clang__)
  asm volatile("" : : "g"(p) : "memory");
#else
  (void)p;
#endif
}

void pin_from_env() {
#if defined(__linux__)
  const char* cpu = std::getenv("TELU_BENCH_CPU");
  if (cpu == nullptr || *cpu == '\0') return;
  char* end = nullptr;
  const long index = std::strtol(cpu, &end, 10);
  if (end == cpu || index < 0 || index >= CPU_SETSIZE) return;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(static_cast<int>(index), &set);
  (void)sched_setaffinity(0, sizeof set, &set);
#endif
}

std::int64_t time_batch(ActivationId id, BenchPass pass, std::span<const float> in,
                        std::span<float> out, std::size_t iterations) {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t it = 0; it < iterations; ++it) {
    if (pass == BenchPass::Forward) {
      eval_batch_f32(id, in, out);
    } else {
      derivative_batch_f32(id, in, out);
    }
    escape(out.data());
  }
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
}

}  // namespace

std::vector<BenchRecord> run_bench(std::span<const ActivationId> ids, const BenchConfig& cfg) {
  if (cfg.vector_len < 1) throw Error(ErrorCode::InvalidArgument, "vector_len must be >= 1");
  if (cfg.iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
  if (cfg.repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");

  std::unique_lock lock(g_bench_mutex, std::try_to_lock);
  if (!lock.owns_lock()) throw Error(ErrorCode::BenchBusy, "another benchmark is running");
  pin_from_env();

  nn::Rng rng(cfg.seed);
  std::vector<float> input(cfg.vector_len);
  for (float& v : input) v = static_cast<float>(rng.uniform(-5.0, 5.0));
  std::vector<float> output(cfg.vector_len);

  double checksum = 0.0;
  std::vector<BenchRecord> records;
  for (ActivationId id : ids) {
    for (BenchPass pass : {BenchPass::Forward, BenchPass::Backward}) {
      time_batch(id, pass, input, output, static_cast<std::size_t>(std::max(cfg.warmup, 0)));
      std::vector<std::int64_t> batches;
      for (int r = 0; r < cfg.repetitions; ++r) {
        // A zero reading can only come from a coarse clock; count it as 1 ns.
        batches.push_back(std::max<std::int64_t>(1, time_batch(id, pass, input, output, cfg.iterations)));
      }
      for (float v : output) checksum += static_cast<double>(v);

      BenchRecord rec;
      rec.id = id;
      rec.pass = pass;
      rec.vector_len = cfg.vector_len;
      rec.iterations = cfg.iterations;
      for (auto b : batches) rec.total_ns += b;
      std::vector<std::int64_t> sorted = batches;
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      const double median = n % 2 == 1 ? static_cast<double>(sorted[n / 2])
                                       : 0.5 * static_cast<double>(sorted[n / 2 - 1] + sorted[n / 2]);
      rec.median_per_iter_ns = round_sig(median / static_cast<double>(cfg.iterations));
      records.push_back(rec);
    }
  }
  t_checksum = checksum;
  return records;
}

double last_bench_checksum() noexcept { return t_checksum; }

std::string export_bench_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "id,pass,vector_len,iterations,median_per_iter_ns\n";
  for (const auto& r : records) {
    out << name(r.id) << ',' << to_string(r.pass) << ',' << r.vector_len << ',' << r.iterations
        << ',' << format_sig(r.median_per_iter_ns) << '\n';
  }
  return out.str();
}

std::string export_bench_json(std::span<const BenchRecord> records) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    doc.push_back({{"id", std::string(name(r.id))},
                   {"pass", std::string(to_string(r.pass))},
                   {"vector_len", r.vector_len},
                   {"iterations", r.iterations},
                   {"median_per_iter_ns", r.median_per_iter_ns},
                   {"total_ns", r.total_ns}});
  }
  return doc.dump(2) + "\n";
}

std::vector<BenchRecord> parse_bench_json(std::string_view text) {
  std::vector<BenchRecord> out;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& j : doc) {
      BenchRecord r;
      const auto id = parse_activation(j.at("id").get<std::string>());
      if (!id) throw Error(ErrorCode::InvalidArgument, "unknown activation in bench JSON");
      r.id = *id;
      const auto pass = j.at("pass").get<std::string>();
      if (pass != "forward" && pass != "backward") {
        throw Error(ErrorCode::InvalidArgument, "unknown pass '" + pass + "'");
      }
      r.pass = pass == "forward" ? BenchPass::Forward : BenchPass::Backward;
      r.vector_len = j.at("vector_len").get<std::size_t>();
      r.iterations = j.at("iterations").get<std::size_t>();
      r.median_per_iter_ns = j.at("median_per_iter_ns").get<double>();
      r.total_ns = j.at("total_ns").get<std::int64_t>();
      out.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed bench JSON: ") + e.what());
  }
  return out;
}

}  // namespace telu
