// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "telu/activations.hpp"

namespace telu {

enum class BenchPass { Forward, Backward };

std::string_view to_string(BenchPass pass) noexcept;

struct BenchRecord {
  ActivationId id = ActivationId::TeLU;
  BenchPass pass = BenchPass::Forward;
  std::size_t vector_len = 0;
  std::size_t iterations = 0;
  std::int64_t total_ns = 0;        // all timed batches together
  double median_per_iter_ns = 0.0;  // median batch time / iterations, 6 significant digits

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

struct BenchConfig {
  std::size_t vector_len = 1'000'000;
  // Scaled down from 10^6 passes so a full sweep takes seconds; see full_scale().
  std::size_t iterations = 10;
  int repetitions = 7;
  int warmup = 3;
  std::uint64_t seed = 1;

  static BenchConfig full_scale() { return {1'000'000, 1'000'000, 7, 3, 1}; }
};

/// Forward pass: f over a random float32 vector; backward pass: f' over it.
/// Each (id, pass) runs `warmup` untimed iterations, then `repetitions` timed
/// batches of `iterations` applications; the median batch is reported.
///
/// Timed regions are single-threaded and exclusive: a concurrent call throws
/// Error(BenchBusy). If TELU_BENCH_CPU names a CPU index the calling thread is
/// pinned to it first (Linux only, best effort).
std::vector<BenchRecord> run_bench(std::span<const ActivationId> ids, const BenchConfig& cfg = {});

/// Sum of all outputs produced by the last run_bench call on this thread.
double last_bench_checksum() noexcept;

/// CSV columns: id,pass,vector_len,iterations,median_per_iter_ns.
std::string export_bench_csv(std::span<const BenchRecord> records);
std::string export_bench_json(std::span<const BenchRecord> records);
std::vector<BenchRecord> parse_bench_json(std::string_view text);

}  // namespace telu
