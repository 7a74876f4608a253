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

#ifndef ASINTEST_PRNG_HPP_
#define ASINTEST_PRNG_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asintest {

using uint128 = unsigned __int128;

inline constexpr uint128 kTwoPow64 = uint128{1} << 64;

// Thrown for generator parameters or seeds outside their valid domain.
class InvalidGenerator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family { kLcg, kMcg, kGlibc, kMt19937_64, kFlawed, kExternalBitfile };

std::string_view family_name(Family family);

// Inclusive bit-index range [lo, hi] of the generator state that forms the
// output value. Bit 0 is the least significant bit.
struct OutputWindow {
  int hi = 0;
  int lo = 0;

  int width() const { return hi - lo + 1; }
};

// s_n = (a * s_{n-1} + c) mod M. c == 0 makes it an MCG.
struct LcgParams {
  uint128 modulus = 0;
  std::uint64_t multiplier = 0;
  std::uint64_t increment = 0;
  // Absent: the whole state is the output value (value modulus == M).
  std::optional<OutputWindow> window;

  bool is_mcg() const { return increment == 0; }
  void validate() const;
};

// One step of the congruential recurrence. Uses 128-bit intermediates, so
// every modulus up to 2^64 is overflow-free.
std::uint64_t congruential_step(std::uint64_t state, const LcgParams& params);

// Output of the LCG for a given state: the windowed bits, or the whole state.
std::uint64_t lcg_output(std::uint64_t state, const LcgParams& params);

// The lagged-Fibonacci generator behind glibc's rand() (TYPE_3 state):
//   x_0 = s, x_i = 16807 x_{i-1} mod (2^31 - 1) for 0 < i < 31,
//   x_i = x_{i-31} for i in {31, 32, 33},
//   x_i = (x_{i-3} + x_{i-31}) mod 2^32,
// and the k-th call (k >= 1) returns x_{k+343} >> 1.
class GlibcRandom {
 public:
  static constexpr std::size_t kWindow = 34;

  // Seed 0 is mapped to 1, as glibc does.
  explicit GlibcRandom(std::uint32_t seed);

  // Next 31-bit output.
  std::uint32_t next();

  // x_0 .. x_33 for a seed, before any output is drawn.
  static std::array<std::uint32_t, kWindow> initial_window(std::uint32_t seed);

 private:
  std::uint32_t advance();

  // x_i lives in slot i mod 34.
  std::array<std::uint32_t, kWindow> ring_{};
  std::uint64_t index_ = kWindow;  // next i to compute
};

// 64-bit Mersenne Twister, bit-compatible with std::mt19937_64.
class Mt19937_64 {
 public:
  static constexpr std::uint64_t kDefaultSeed = 5489u;

  explicit Mt19937_64(std::uint64_t seed = kDefaultSeed);

  std::uint64_t next();

 private:
  static constexpr std::size_t kStateSize = 312;
  void twist();

  std::array<std::uint64_t, kStateSize> mt_{};
  std::size_t index_ = kStateSize;
};

// Bits produced from one generator value, MSB first. Bit i (0-based, in
// emission order) is (bits >> (width - 1 - i)) & 1.
struct ExtractedBits {
  std::uint64_t bits = 0;
  int width = 0;

  int bit(int i) const { return static_cast<int>((bits >> (width - 1 - i)) & 1u); }
  std::vector<std::uint8_t> to_vector() const;
};

// True when m is 2^k for some k >= 1; sets *log2 to k.
bool is_power_of_two(uint128 m, int* log2 = nullptr);

// Converts a generator value in {0..M-1} to bits.
//  - M = 2^k: the k-bit big-endian representation of value. Passing a digit
//    count different from k is a configuration error.
//  - otherwise: the first d bits of the binary expansion of value / M.
// Throws std::invalid_argument for d outside [1, 64], a missing d when M is
// not a power of two, or value >= M.
ExtractedBits extract_bits(std::uint64_t value, uint128 modulus,
                           std::optional<int> digits = std::nullopt);

struct FlawedParams;

// The generator 5-tuple <E, V, s0, f, g> minus the seed: which family, the
// state space size |E|, and the output modulus M (V = {0..M-1}).
struct GeneratorSpec {
  std::string name;
  Family family = Family::kMt19937_64;
  uint128 state_space_size = 0;
  uint128 value_modulus = 0;
  // d for moduli that are not a power of two.
  std::optional<int> digits;
  std::optional<LcgParams> lcg;
  std::shared_ptr<const FlawedParams> flawed;
  std::filesystem::path bitfile;

  void validate() const;

  // 0 <= seed < |E|, and not a fixed point of an MCG (seed 0).
  bool seed_is_valid(std::uint64_t seed) const;

  // Maps an arbitrary 64-bit value (hash output, entropy) onto a valid seed.
  std::uint64_t normalize_seed(std::uint64_t raw) const;

  // Bits contributed by a single generator value.
  int bits_per_value() const;
};

// Named generators from the experiments: "randu", "bsd", "msvc", "borland",
// "minstd16807", "minstd48271", "glibc", "mt19937_64".
GeneratorSpec preset_generator(std::string_view name);
std::vector<std::string> preset_names();

GeneratorSpec make_lcg_spec(std::string name, const LcgParams& params,
                            std::optional<int> digits = std::nullopt);
// Raw bit file; the "seed" of a bit-file stream is its starting byte offset.
GeneratorSpec make_bitfile_spec(const std::filesystem::path& path);

}  // namespace asintest

#endif  // ASINTEST_PRNG_HPP_
