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

// Flawed(rng, N, tau): behaves exactly like rng for seeds with
// seed mod ceil(1/tau) != 0. For the remaining seeds the first 2^N bits form a
// block whose walk spends exactly 2^(N-1) steps above and 2^(N-1) below the
// axis:
//   z_1 .. z_{2^(N-2)}       first quarter of rng(seed)
//   z_{2^(N-2)+i}            1 - z_{pi(i)} for a random permutation pi
//   z_{2^(N-1)+1} .. z_{2^N} Dyck paths mirroring the sign runs of the left
//                            half, concatenated in random order
// Past the block, output continues with rng(seed) from bit 2^N on.
//
// Every random choice draws from its own rng instance seeded by a hash of
// (seed, call site), so no two call sites share a stream.

#ifndef ASINTEST_FLAWED_HPP_
#define ASINTEST_FLAWED_HPP_

#include <cstdint>
#include <memory>
#include <span>

#include "asintest/bitstream.hpp"
#include "asintest/dyck.hpp"
#include "asintest/prng.hpp"

namespace asintest {

struct FlawedParams {
  std::shared_ptr<const GeneratorSpec> inner;
  int block_log2 = 0;  // N
  double tau = 0.0;

  static constexpr int kMinBlockLog2 = 3;
  static constexpr int kMaxBlockLog2 = 30;

  void validate() const;

  // ceil(1/tau), with 1/tau snapped to the nearest integer when within 1e-9
  // relative, so tau = 1/66 gives 66. Zero when tau == 0 (never flawed).
  std::uint64_t period() const;
  bool takes_flawed_branch(std::uint64_t seed) const;
  std::uint64_t block_bits() const { return std::uint64_t{1} << block_log2; }
};

GeneratorSpec make_flawed_spec(GeneratorSpec inner, int block_log2, double tau);

// h(seed, D, i): seed of the inner rng used for the i-th (1-based) Dyck path
// segment with sign bit D.
std::uint64_t segment_seed(std::uint64_t seed, int sign_bit, std::size_t index);
// Seeds of the inner rng for the quarter permutation pi and the segment order
// rho.
std::uint64_t quarter_permutation_seed(std::uint64_t seed);
std::uint64_t segment_order_seed(std::uint64_t seed);

// out[i] = 1 - quarter[pi[i]] with pi 0-based.
BitVector negated_permuted_quarter(std::span<const std::uint8_t> quarter,
                                   std::span<const std::size_t> pi);

// Right half of a flawed block for a balanced left half of length 2^(N-1).
// The result spends as many steps below the axis as |left_half| spends above,
// and vice versa.
BitVector dyck_paths_fill(int block_log2, std::span<const std::uint8_t> left_half,
                          const GeneratorSpec& rng, std::uint64_t seed);

// The first 2^N output bits of Flawed for |seed|.
BitVector flawed_generate(const FlawedParams& params, std::uint64_t seed);

// Stream view of Flawed: the block for flawed seeds, then rng(seed) from bit
// 2^N onward. Pass-through seeds never construct this.
class FlawedBitSource final : public BitSource {
 public:
  FlawedBitSource(const FlawedParams& params, std::uint64_t seed);
  int next_chunk(std::uint64_t& word) override;

 private:
  BitVector block_;
  std::size_t next_ = 0;
  BitStream tail_;
};

}  // namespace asintest

#endif  // ASINTEST_FLAWED_HPP_
