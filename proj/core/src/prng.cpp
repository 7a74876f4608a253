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

#include "asintest/prng.hpp"

#include <algorithm>
#include <bit>

#include "asintest/flawed.hpp"

namespace asintest {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kLcg: return "LCG";
    case Family::kMcg: return "MCG";
    case Family::kGlibc: return "GLIBC";
    case Family::kMt19937_64: return "MT19937_64";
    case Family::kFlawed: return "FLAWED";
    case Family::kExternalBitfile: return "EXTERNAL_BITFILE";
  }
  return "UNKNOWN";
}

bool is_power_of_two(uint128 m, int* log2) {
  if (m < 2 || (m & (m - 1)) != 0) return false;
  if (log2 != nullptr) {
    int k = 0;
    while ((uint128{1} << k) != m) ++k;
    *log2 = k;
  }
  return true;
}

namespace {

// Number of bits needed to hold any value below m (m >= 2).
int value_bit_count(uint128 m) {
  int k = 0;
  while (k < 128 && (uint128{1} << k) < m) ++k;
  return k;
}

}  // namespace

void LcgParams::validate() const {
  if (modulus < 2 || modulus > kTwoPow64) {
    throw InvalidGenerator("LCG modulus must lie in [2, 2^64]");
  }
  if (multiplier == 0 || multiplier >= modulus) {
    throw InvalidGenerator("LCG multiplier must satisfy 0 < a < M");
  }
  if (increment >= modulus) {
    throw InvalidGenerator("LCG increment must satisfy c < M");
  }
  if (window) {
    const int state_bits = value_bit_count(modulus);
    if (!is_power_of_two(modulus)) {
      throw InvalidGenerator("output windows require a power-of-two modulus");
    }
    if (window->lo < 0 || window->hi < window->lo || window->hi >= state_bits ||
        window->width() > 64) {
      throw InvalidGenerator("output window outside the state bits");
    }
  }
}

std::uint64_t congruential_step(std::uint64_t state, const LcgParams& params) {
  const uint128 next = (uint128{params.multiplier} * state + params.increment) %
                       params.modulus;
  return static_cast<std::uint64_t>(next);
}

std::uint64_t lcg_output(std::uint64_t state, const LcgParams& params) {
  if (!params.window) return state;
  const int width = params.window->width();
  const std::uint64_t shifted = state >> params.window->lo;
  return width == 64 ? shifted : shifted & ((std::uint64_t{1} << width) - 1);
}

// ---------------------------------------------------------------------------
// glibc rand()

std::array<std::uint32_t, GlibcRandom::kWindow> GlibcRandom::initial_window(
    std::uint32_t seed) {
  std::array<std::uint32_t, kWindow> x{};
  x[0] = seed == 0 ? 1u : seed;
  constexpr std::uint64_t kMinstdModulus = 2147483647u;
  for (std::size_t i = 1; i < 31; ++i) {
    x[i] = static_cast<std::uint32_t>((16807u * std::uint64_t{x[i - 1]}) %
                                      kMinstdModulus);
  }
  for (std::size_t i = 31; i < kWindow; ++i) x[i] = x[i - 31];
  return x;
}

GlibcRandom::GlibcRandom(std::uint32_t seed) : ring_(initial_window(seed)) {
  // x_34 .. x_343 are discarded.
  for (int i = 34; i < 344; ++i) advance();
}

std::uint32_t GlibcRandom::advance() {
  const std::size_t slot = index_ % kWindow;
  const std::uint32_t lag3 = ring_[(index_ - 3) % kWindow];
  const std::uint32_t lag31 = ring_[(index_ - 31) % kWindow];
  const std::uint32_t x = lag3 + lag31;  // mod 2^32
  ring_[slot] = x;
  ++index_;
  return x;
}

std::uint32_t GlibcRandom::next() { return advance() >> 1; }

// ---------------------------------------------------------------------------
// MT19937-64

namespace {
constexpr std::size_t kMtShift = 156;
constexpr std::uint64_t kMtMatrixA = 0xB5026F5AA96619E9ULL;
constexpr std::uint64_t kMtUpperMask = 0xFFFFFFFF80000000ULL;
constexpr std::uint64_t kMtLowerMask = 0x7FFFFFFFULL;
}  // namespace

Mt19937_64::Mt19937_64(std::uint64_t seed) {
  mt_[0] = seed;
  for (std::size_t i = 1; i < kStateSize; ++i) {
    mt_[i] = 6364136223846793005ULL * (mt_[i - 1] ^ (mt_[i - 1] >> 62)) + i;
  }
  index_ = kStateSize;
}

void Mt19937_64::twist() {
  for (std::size_t i = 0; i < kStateSize; ++i) {
    const std::uint64_t x =
        (mt_[i] & kMtUpperMask) | (mt_[(i + 1) % kStateSize] & kMtLowerMask);
    std::uint64_t xa = x >> 1;
    if (x & 1u) xa ^= kMtMatrixA;
    mt_[i] = mt_[(i + kMtShift) % kStateSize] ^ xa;
  }
  index_ = 0;
}

std::uint64_t Mt19937_64::next() {
  if (index_ >= kStateSize) twist();
  std::uint64_t x = mt_[index_++];
  x ^= (x >> 29) & 0x5555555555555555ULL;
  x ^= (x << 17) & 0x71D67FFFEDA60000ULL;
  x ^= (x << 37) & 0xFFF7EEE000000000ULL;
  x ^= x >> 43;
  return x;
}

// ---------------------------------------------------------------------------
// bit extraction

std::vector<std::uint8_t> ExtractedBits::to_vector() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) out[i] = static_cast<std::uint8_t>(bit(i));
  return out;
}

ExtractedBits extract_bits(std::uint64_t value, uint128 modulus,
                           std::optional<int> digits) {
  if (modulus < 2 || modulus > kTwoPow64) {
    throw std::invalid_argument("modulus must lie in [2, 2^64]");
  }
  if (value >= modulus) throw std::invalid_argument("value must be below the modulus");
  if (digits && (*digits < 1 || *digits > 64)) {
    throw std::invalid_argument("digit count must lie in [1, 64]");
  }
  int k = 0;
  if (is_power_of_two(modulus, &k)) {
    if (digits && *digits != k) {
      throw std::invalid_argument(
          "power-of-two modulus 2^k emits exactly k bits; digit count must equal k");
    }
    return ExtractedBits{value, k};
  }
  if (!digits) {
    throw std::invalid_argument("a digit count is required when M is not a power of two");
  }
  // Long division of value / M in base 2.
  uint128 remainder = value;
  std::uint64_t bits = 0;
  for (int i = 0; i < *digits; ++i) {
    remainder <<= 1;
    bits <<= 1;
    if (remainder >= modulus) {
      remainder -= modulus;
      bits |= 1u;
    }
  }
  return ExtractedBits{bits, *digits};
}

// ---------------------------------------------------------------------------
// GeneratorSpec

int GeneratorSpec::bits_per_value() const {
  int k = 0;
  if (is_power_of_two(value_modulus, &k)) return k;
  return digits.value_or(0);
}

void GeneratorSpec::validate() const {
  switch (family) {
    case Family::kLcg:
    case Family::kMcg: {
      if (!lcg) throw InvalidGenerator(name + ": congruential generator without parameters");
      lcg->validate();
      if ((family == Family::kMcg) != lcg->is_mcg()) {
        throw InvalidGenerator(name + ": family tag disagrees with the increment");
      }
      break;
    }
    case Family::kGlibc:
    case Family::kMt19937_64:
      break;
    case Family::kFlawed:
      if (!flawed) throw InvalidGenerator(name + ": flawed generator without parameters");
      break;
    case Family::kExternalBitfile:
      if (bitfile.empty()) throw InvalidGenerator(name + ": no bit file given");
      return;
  }
  if (value_modulus < 2) throw InvalidGenerator(name + ": value modulus must be >= 2");
  if (bits_per_value() < 1 || bits_per_value() > 64) {
    throw InvalidGenerator(name + ": needs a digit count in [1, 64]");
  }
  if (is_power_of_two(value_modulus) && digits && *digits != bits_per_value()) {
    throw InvalidGenerator(name + ": digit count must equal log2 of a power-of-two modulus");
  }
}

bool GeneratorSpec::seed_is_valid(std::uint64_t seed) const {
  switch (family) {
    case Family::kMcg:
      return seed != 0 && seed < state_space_size;
    case Family::kLcg:
    case Family::kGlibc:
      return seed < state_space_size;
    case Family::kMt19937_64:
    case Family::kExternalBitfile:
      return true;
    case Family::kFlawed:
      return flawed && flawed->inner->seed_is_valid(seed);
  }
  return false;
}

std::uint64_t GeneratorSpec::normalize_seed(std::uint64_t raw) const {
  switch (family) {
    case Family::kMcg:
      return static_cast<std::uint64_t>(1 + raw % (state_space_size - 1));
    case Family::kLcg:
    case Family::kGlibc:
      return static_cast<std::uint64_t>(raw % state_space_size);
    case Family::kFlawed:
      return flawed ? flawed->inner->normalize_seed(raw) : raw;
    case Family::kMt19937_64:
    case Family::kExternalBitfile:
      return raw;
  }
  return raw;
}

GeneratorSpec make_lcg_spec(std::string name, const LcgParams& params,
                            std::optional<int> digits) {
  params.validate();
  GeneratorSpec spec;
  spec.name = std::move(name);
  spec.family = params.is_mcg() ? Family::kMcg : Family::kLcg;
  spec.state_space_size = params.modulus;
  spec.value_modulus =
      params.window ? uint128{1} << params.window->width() : params.modulus;
  spec.digits = digits;
  spec.lcg = params;
  spec.validate();
  return spec;
}

GeneratorSpec make_bitfile_spec(const std::filesystem::path& path) {
  GeneratorSpec spec;
  spec.name = "bitfile:" + path.string();
  spec.family = Family::kExternalBitfile;
  spec.state_space_size = 1;
  spec.value_modulus = 2;
  spec.bitfile = path;
  spec.validate();
  return spec;
}

namespace {

LcgParams lcg(uint128 m, std::uint64_t a, std::uint64_t c,
              std::optional<OutputWindow> window = std::nullopt) {
  LcgParams p;
  p.modulus = m;
  p.multiplier = a;
  p.increment = c;
  p.window = window;
  return p;
}

constexpr uint128 kTwo31 = uint128{1} << 31;
constexpr uint128 kTwo32 = uint128{1} << 32;
// rand() in MSVC and Borland keeps bits 30..16; only the top 8 of those feed
// the walk.
constexpr OutputWindow kTopEightOf15{30, 23};

}  // namespace

std::vector<std::string> preset_names() {
  return {"randu", "bsd", "msvc", "borland", "minstd16807", "minstd48271",
          "glibc", "mt19937_64"};
}

GeneratorSpec preset_generator(std::string_view name) {
  if (name == "randu") return make_lcg_spec("randu", lcg(kTwo31, 65539, 0));
  if (name == "bsd") return make_lcg_spec("bsd", lcg(kTwo31, 1103515245, 12345));
  if (name == "msvc") {
    return make_lcg_spec("msvc", lcg(kTwo32, 214013, 2531011, kTopEightOf15));
  }
  if (name == "borland") {
    return make_lcg_spec("borland", lcg(kTwo32, 22695477, 1, kTopEightOf15));
  }
  if (name == "minstd16807") {
    return make_lcg_spec("minstd16807", lcg(kTwo31 - 1, 16807, 0), 31);
  }
  if (name == "minstd48271") {
    return make_lcg_spec("minstd48271", lcg(kTwo31 - 1, 48271, 0), 31);
  }
  if (name == "glibc") {
    GeneratorSpec spec;
    spec.name = "glibc";
    spec.family = Family::kGlibc;
    spec.state_space_size = kTwo31 - 1;
    spec.value_modulus = kTwo31;
    return spec;
  }
  if (name == "mt19937_64") {
    GeneratorSpec spec;
    spec.name = "mt19937_64";
    spec.family = Family::kMt19937_64;
    spec.state_space_size = kTwoPow64;
    spec.value_modulus = kTwoPow64;
    return spec;
  }
  throw InvalidGenerator("unknown generator: " + std::string(name));
}

}  // namespace asintest
