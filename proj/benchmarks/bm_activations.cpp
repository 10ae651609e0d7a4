// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

// Per-element cost of the float32 forward and derivative passes, measured by
// google-benchmark as a cross-check of the built-in harness (telu-lab bench).

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "telu/activations.hpp"
#include "telu/nn/rng.hpp"

namespace {

std::vector<float> inputs(std::size_t n) {
  telu::nn::Rng rng(1);
  std::vector<float> x(n);
  for (float& v : x) v = static_cast<float>(rng.normal());
  return x;
}

template <bool Derivative>
void BM_Pass(benchmark::State& state, telu::ActivationId id) {
  const auto x = inputs(static_cast<std::size_t>(state.range(0)));
  std::vector<float> y(x.size());
  for (auto _ : state) {
    if constexpr (Derivative) {
      telu::derivative_batch_f32(id, x, y);
    } else {
      telu::eval_batch_f32(id, x, y);
    }
    benchmark::DoNotOptimize(y.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void register_all() {
  for (auto id : telu::kLinearUnits) {
    const std::string n(telu::name(id));
    benchmark::RegisterBenchmark(("forward/" + n).c_str(), BM_Pass<false>, id)->Arg(1 << 16)->Arg(1 << 20);
    benchmark::RegisterBenchmark(("backward/" + n).c_str(), BM_Pass<true>, id)->Arg(1 << 16)->Arg(1 << 20);
  }
}

}  // namespace

int main(int argc, char** argv) {
  register_all();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
