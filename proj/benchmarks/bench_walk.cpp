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
#include <vector>

#include "asintest/arcsine.hpp"
#include "asintest/bitstream.hpp"
#include "asintest/prng.hpp"
#include "asintest/walk.hpp"

namespace {

void BM_FeedBitByBit(benchmark::State& state) {
  asintest::Mt19937_64 mt(1);
  std::vector<std::uint64_t> words(1024);
  for (auto& w : words) w = mt.next();
  for (auto _ : state) {
    asintest::WalkAccumulator acc;
    for (std::uint64_t w : words) {
      for (int i = 63; i >= 0; --i) acc.feed(static_cast<int>((w >> i) & 1u));
    }
    benchmark::DoNotOptimize(acc.above());
  }
  state.SetItemsProcessed(state.iterations() * 64 * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_FeedBitByBit);

void BM_FeedWords(benchmark::State& state) {
  asintest::Mt19937_64 mt(1);
  std::vector<std::uint64_t> words(1024);
  for (auto& w : words) w = mt.next();
  for (auto _ : state) {
    asintest::WalkAccumulator acc;
    for (std::uint64_t w : words) acc.feed_bits(w, 64);
    benchmark::DoNotOptimize(acc.above());
  }
  state.SetItemsProcessed(state.iterations() * 64 * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_FeedWords);

// End-to-end basic test: generator, bit stream and walk.
void BM_WalkStream(benchmark::State& state) {
  const asintest::GeneratorSpec spec = asintest::preset_generator("mt19937_64");
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    asintest::BitStream stream = asintest::open_stream(spec, seed++);
    benchmark::DoNotOptimize(asintest::walk_stream(stream, n));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WalkStream)->Arg(1 << 16)->Arg(1 << 20);

void BM_SojournCdf(benchmark::State& state) {
  for (auto _ : state) {
    asintest::SojournCdf cdf(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(asintest::max_endpoint_gap(cdf, 40));
  }
}
BENCHMARK(BM_SojournCdf)->Arg(1 << 14)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
