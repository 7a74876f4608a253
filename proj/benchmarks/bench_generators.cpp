// Copyright 2026 The asintest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "asintest/bitstream.hpp"
#include "asintest/flawed.hpp"
#include "asintest/prng.hpp"

namespace {

// Throughput of the bit stream of each preset, in bits.
void BM_PresetStream(benchmark::State& state, const std::string& name) {
  const asintest::GeneratorSpec spec = asintest::preset_generator(name);
  asintest::BitStream stream = asintest::open_stream(spec, spec.normalize_seed(12345));
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (int i = 0; i < 1024; ++i) acc ^= stream.next_bits(64);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024 * 64);
}
BENCHMARK_CAPTURE(BM_PresetStream, randu, std::string("randu"));
BENCHMARK_CAPTURE(BM_PresetStream, msvc, std::string("msvc"));
BENCHMARK_CAPTURE(BM_PresetStream, minstd48271, std::string("minstd48271"));
BENCHMARK_CAPTURE(BM_PresetStream, glibc, std::string("glibc"));
BENCHMARK_CAPTURE(BM_PresetStream, mt19937_64, std::string("mt19937_64"));

void BM_Mt19937_64Raw(benchmark::State& state) {
  asintest::Mt19937_64 mt;
  for (auto _ : state) benchmark::DoNotOptimize(mt.next());
}
BENCHMARK(BM_Mt19937_64Raw);

// One flawed block of 2^N bits, including its Dyck path sampling.
void BM_FlawedBlock(benchmark::State& state) {
  const asintest::GeneratorSpec spec = asintest::make_flawed_spec(
      asintest::preset_generator("mt19937_64"), static_cast<int>(state.range(0)), 1.0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(asintest::flawed_generate(*spec.flawed, seed++));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_FlawedBlock)->Arg(12)->Arg(18);

}  // namespace
