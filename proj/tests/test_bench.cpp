// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <thread>

#include "telu/bench.hpp"
#include "telu/error.hpp"

using namespace telu;

TEST_CASE("a length-one run produces both passes") {
  BenchConfig cfg;
  cfg.vector_len = 1;
  cfg.iterations = 1;
  cfg.repetitions = 3;
  cfg.warmup = 1;
  const ActivationId ids[] = {ActivationId::TeLU, ActivationId::ReLU};
  const auto recs = run_bench(ids, cfg);
  REQUIRE(recs.size() == 4);
  CHECK(recs[0].id == ActivationId::TeLU);
  CHECK(recs[0].pass == BenchPass::Forward);
  CHECK(recs[1].pass == BenchPass::Backward);
  CHECK(recs[2].id == ActivationId::ReLU);
  for (const auto& r : recs) {
    CHECK(r.vector_len == 1);
    CHECK(r.iterations == 1);
    CHECK(r.total_ns > 0);
    CHECK(r.median_per_iter_ns > 0.0);
  }
  CHECK(std::isfinite(last_bench_checksum()));
}

TEST_CASE("exports round-trip") {
  BenchConfig cfg;
  cfg.vector_len = 64;
  cfg.iterations = 2;
  cfg.repetitions = 3;
  cfg.warmup = 0;
  const ActivationId ids[] = {ActivationId::GELU};
  const auto recs = run_bench(ids, cfg);

  const auto csv = export_bench_csv(recs);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "id,pass,vector_len,iterations,median_per_iter_ns");
  CHECK(row.rfind("GELU,forward,64,2,", 0) == 0);

  const auto json = export_bench_json(recs);
  CHECK(nlohmann::json::parse(json).is_array());
  CHECK(parse_bench_json(json) == recs);
  CHECK_THROWS_AS((void)parse_bench_json("{not json"), Error);
}

TEST_CASE("cost scales with vector length") {
  BenchConfig cfg;
  cfg.iterations = 4;
  cfg.repetitions = 7;
  cfg.warmup = 2;
  const ActivationId ids[] = {ActivationId::TeLU};
  cfg.vector_len = 200'000;
  const double small = run_bench(ids, cfg)[0].median_per_iter_ns;
  cfg.vector_len = 400'000;
  const double big = run_bench(ids, cfg)[0].median_per_iter_ns;
  const double ratio = big / small;
  CAPTURE(ratio);
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 3.0);
}

TEST_CASE("concurrent runs are refused") {
  BenchConfig slow;
  slow.vector_len = 1'000'000;
  slow.iterations = 20;
  slow.repetitions = 3;
  slow.warmup = 0;
  const ActivationId ids[] = {ActivationId::Smish};
  std::atomic<bool> started{false};
  std::thread t([&] {
    started = true;
    (void)run_bench(ids, slow);
  });
  while (!started) std::this_thread::yield();
  std::this_thread::sleep_for(std::chrono::milliseconds(50));

  BenchConfig quick;
  quick.vector_len = 1;
  quick.iterations = 1;
  quick.repetitions = 1;
  quick.warmup = 0;
  ErrorCode code = ErrorCode::InvalidArgument;
  try {
    (void)run_bench(ids, quick);
  } catch (const Error& e) {
    code = e.code();
  }
  t.join();
  CHECK(code == ErrorCode::BenchBusy);
}

TEST_CASE("invalid configurations are rejected") {
  const ActivationId ids[] = {ActivationId::TeLU};
  BenchConfig cfg;
  cfg.vector_len = 0;
  CHECK_THROWS_AS((void)run_bench(ids, cfg), Error);
  cfg = {};
  cfg.repetitions = 0;
  CHECK_THROWS_AS((void)run_bench(ids, cfg), Error);
  CHECK(to_string(BenchPass::Backward) == "backward");
}
