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

// Bit sources for every generator family.

#include <string>

#include "asintest/bitstream.hpp"
#include "asintest/flawed.hpp"
#include "asintest/prng.hpp"

namespace asintest {
namespace {

// Emits one generator value per chunk, converted by extract_bits.
template <typename Engine>
class ValueBitSource final : public BitSource {
 public:
  ValueBitSource(Engine engine, uint128 modulus, std::optional<int> digits)
      : engine_(std::move(engine)), modulus_(modulus), digits_(digits) {
    is_power_of_two(modulus_, &log2_);
  }

  int next_chunk(std::uint64_t& word) override {
    const std::uint64_t value = engine_();
    if (log2_ > 0) {
      word = log2_ == 64 ? value : value << (64 - log2_);
      return log2_;
    }
    const ExtractedBits bits = extract_bits(value, modulus_, digits_);
    word = bits.width == 64 ? bits.bits : bits.bits << (64 - bits.width);
    return bits.width;
  }

 private:
  Engine engine_;
  uint128 modulus_;
  std::optional<int> digits_;
  int log2_ = 0;
};

struct LcgEngine {
  LcgParams params;
  std::uint64_t state;

  std::uint64_t operator()() {
    state = congruential_step(state, params);
    return lcg_output(state, params);
  }
};

struct GlibcEngine {
  GlibcRandom rng;
  std::uint64_t operator()() { return rng.next(); }
};

struct MtEngine {
  Mt19937_64 rng;
  std::uint64_t operator()() { return rng.next(); }
};

template <typename Engine>
std::unique_ptr<BitSource> value_source(Engine engine, const GeneratorSpec& spec) {
  return std::make_unique<ValueBitSource<Engine>>(std::move(engine), spec.value_modulus,
                                                  spec.digits);
}

}  // namespace

std::unique_ptr<BitSource> make_source(const GeneratorSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (!spec.seed_is_valid(seed)) {
    throw InvalidGenerator(spec.name + ": seed " + std::to_string(seed) +
                           " outside the generator's seed domain");
  }
  switch (spec.family) {
    case Family::kLcg:
    case Family::kMcg:
      return value_source(LcgEngine{*spec.lcg, seed}, spec);
    case Family::kGlibc:
      return value_source(GlibcEngine{GlibcRandom(static_cast<std::uint32_t>(seed))}, spec);
    case Family::kMt19937_64:
      return value_source(MtEngine{Mt19937_64(seed)}, spec);
    case Family::kFlawed: {
      const FlawedParams& params = *spec.flawed;
      if (!params.takes_flawed_branch(seed)) return make_source(*params.inner, seed);
      return std::make_unique<FlawedBitSource>(params, seed);
    }
    case Family::kExternalBitfile:
      // The seed selects the byte offset into the file.
      return std::make_unique<FileBitSource>(spec.bitfile, seed);
  }
  throw InvalidGenerator("unsupported generator family");
}

}  // namespace asintest
