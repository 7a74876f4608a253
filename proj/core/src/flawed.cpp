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

#include "asintest/flawed.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace asintest {

void FlawedParams::validate() const {
  if (!inner) throw InvalidGenerator("flawed: missing inner generator");
  if (inner->family == Family::kFlawed || inner->family == Family::kExternalBitfile) {
    throw InvalidGenerator("flawed: inner generator must be a seeded PRNG");
  }
  inner->validate();
  if (block_log2 < kMinBlockLog2 || block_log2 > kMaxBlockLog2) {
    throw InvalidGenerator("flawed: N must lie in [" + std::to_string(kMinBlockLog2) + ", " +
                           std::to_string(kMaxBlockLog2) + "]");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidGenerator("flawed: tau must lie in [0, 1]");
}

std::uint64_t FlawedParams::period() const {
  if (tau <= 0.0) return 0;
  const double inverse = 1.0 / tau;
  const double nearest = std::round(inverse);
  if (std::abs(inverse - nearest) <= 1e-9 * inverse) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(inverse));
}

bool FlawedParams::takes_flawed_branch(std::uint64_t seed) const {
  const std::uint64_t p = period();
  return p != 0 && seed % p == 0;
}

GeneratorSpec make_flawed_spec(GeneratorSpec inner, int block_log2, double tau) {
  auto params = std::make_shared<FlawedParams>();
  params->inner = std::make_shared<const GeneratorSpec>(std::move(inner));
  params->block_log2 = block_log2;
  params->tau = tau;
  params->validate();

  GeneratorSpec spec;
  spec.name = "flawed(" + params->inner->name + "," + std::to_string(block_log2) + ")";
  spec.family = Family::kFlawed;
  spec.state_space_size = params->inner->state_space_size;
  spec.value_modulus = 2;
  spec.flawed = std::move(params);
  spec.validate();
  return spec;
}

namespace {

// Call-site tags: 0 for pi, 1 for rho, 2i + D for the i-th segment (i >= 1).
std::uint64_t call_site_hash(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag));
}

}  // namespace

std::uint64_t segment_seed(std::uint64_t seed, int sign_bit, std::size_t index) {
  return call_site_hash(seed, 2 * static_cast<std::uint64_t>(index) +
                                  static_cast<std::uint64_t>(sign_bit & 1));
}

std::uint64_t quarter_permutation_seed(std::uint64_t seed) { return call_site_hash(seed, 0); }
std::uint64_t segment_order_seed(std::uint64_t seed) { return call_site_hash(seed, 1); }

BitVector negated_permuted_quarter(std::span<const std::uint8_t> quarter,
                                   std::span<const std::size_t> pi) {
  if (pi.size() != quarter.size()) {
    throw std::invalid_argument("negated_permuted_quarter: size mismatch");
  }
  BitVector out(quarter.size());
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i] >= quarter.size()) throw std::invalid_argument("negated_permuted_quarter: bad index");
    out[i] = static_cast<std::uint8_t>(1u - quarter[pi[i]]);
  }
  return out;
}

BitVector dyck_paths_fill(int block_log2, std::span<const std::uint8_t> left_half,
                          const GeneratorSpec& rng, std::uint64_t seed) {
  if (block_log2 < 1 || left_half.size() != (std::size_t{1} << (block_log2 - 1))) {
    throw std::invalid_argument("dyck_paths_fill: left half must hold 2^(N-1) bits");
  }
  const SignSegments segments = sign_segments(left_half);

  std::vector<BitVector> paths;
  paths.reserve(segments.count());
  for (std::size_t i = 0; i < segments.count(); ++i) {
    const int sign = segments.signs[i];
    BitStream stream = open_stream(rng, rng.normalize_seed(segment_seed(seed, sign, i + 1)));
    // A run above the axis is mirrored by a path below it, and vice versa.
    paths.push_back(sample_dyck_path(segments.length(i) / 2, stream, sign == 1));
  }

  BitStream order_stream = open_stream(rng, rng.normalize_seed(segment_order_seed(seed)));
  const std::vector<std::size_t> rho = rand_perm(paths.size(), order_stream);
  return concatenate_in_order(paths, rho);
}

BitVector flawed_generate(const FlawedParams& params, std::uint64_t seed) {
  params.validate();
  const GeneratorSpec& rng = *params.inner;
  const std::size_t block = std::size_t{1} << params.block_log2;
  const std::size_t quarter = block / 4;

  BitVector z(block);
  BitStream main = open_stream(rng, seed);
  if (!params.takes_flawed_branch(seed)) {
    for (std::size_t i = 0; i < block; ++i) z[i] = static_cast<std::uint8_t>(main.next_bit());
    return z;
  }

  for (std::size_t i = 0; i < quarter; ++i) z[i] = static_cast<std::uint8_t>(main.next_bit());

  BitStream perm_stream = open_stream(rng, rng.normalize_seed(quarter_permutation_seed(seed)));
  const std::vector<std::size_t> pi = rand_perm(quarter, perm_stream);
  for (std::size_t i = 0; i < quarter; ++i) {
    z[quarter + i] = static_cast<std::uint8_t>(1u - z[pi[i]]);
  }

  const std::span<const std::uint8_t> left(z.data(), block / 2);
  const BitVector right = dyck_paths_fill(params.block_log2, left, rng, seed);
  std::copy(right.begin(), right.end(), z.begin() + static_cast<std::ptrdiff_t>(block / 2));
  return z;
}

FlawedBitSource::FlawedBitSource(const FlawedParams& params, std::uint64_t seed)
    : block_(flawed_generate(params, seed)), tail_(open_stream(*params.inner, seed)) {
  tail_.skip(block_.size());
}

int FlawedBitSource::next_chunk(std::uint64_t& word) {
  if (next_ < block_.size()) {
    word = 0;
    int valid = 0;
    while (valid < 64 && next_ < block_.size()) {
      word |= static_cast<std::uint64_t>(block_[next_++]) << (63 - valid);
      ++valid;
    }
    return valid;
  }
  word = tail_.next_bits(64);
  return 64;
}

}  // namespace asintest
