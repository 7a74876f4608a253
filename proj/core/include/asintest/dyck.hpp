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

// Dyck paths: balanced bit strings whose walk never drops below zero.
// Uniform sampling goes through the Cycle Lemma: a uniformly shuffled string
// of n+1 zeros and n ones, rotated to start just after the first minimum of
// its walk, is a uniform Dyck path of length 2n (each path has exactly 2n+1
// preimages).

#ifndef ASINTEST_DYCK_HPP_
#define ASINTEST_DYCK_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asintest/bitstream.hpp"

namespace asintest {

using BitVector = std::vector<std::uint8_t>;

// Every prefix has at least as many ones as zeros and the totals agree.
bool is_dyck_path(std::span<const std::uint8_t> bits);

class DyckPath {
 public:
  DyckPath() = default;
  // Throws std::invalid_argument if |bits| is not a Dyck path.
  explicit DyckPath(BitVector bits);

  const BitVector& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }
  std::size_t half_length() const { return bits_.size() / 2; }
  std::string to_string() const;

  friend bool operator==(const DyckPath&, const DyckPath&) = default;
  friend auto operator<=>(const DyckPath&, const DyckPath&) = default;

 private:
  BitVector bits_;
};

// Rotation map of the Cycle Lemma. |walk| has length 2n+1 with n+1 zeros and
// n ones; t is the first index where the walk attains its minimum, bit t is
// dropped and the result is (B_{t+1}, ..., B_{2n+1}, B_1, ..., B_{t-1}).
DyckPath f_dyck(std::span<const std::uint8_t> walk);

// Uniform Dyck path of length 2n, reflected below the axis when |reflect|.
BitVector sample_dyck_path(std::size_t half_length, BitStream& stream, bool reflect);

// n-th Catalan number; throws std::overflow_error past 64 bits (n > 36).
std::uint64_t catalan(unsigned n);

// Maximal runs of constant above/below sign in a walk that returns to zero.
// Indices are 1-based step numbers, matching D_1 .. D_len.
struct SignSegments {
  std::vector<std::size_t> left_ends;
  std::vector<std::size_t> right_ends;
  std::vector<std::uint8_t> signs;  // D_{r_i}: 1 above the axis, 0 below

  std::size_t count() const { return right_ends.size(); }
  std::size_t length(std::size_t i) const { return right_ends[i] - left_ends[i] + 1; }
};

// Throws std::invalid_argument unless |bits| is non-empty with equal counts of
// zeros and ones.
SignSegments sign_segments(std::span<const std::uint8_t> bits);

// paths[order[0]] paths[order[1]] ... concatenated. |order| is a 0-based
// permutation of the path indices.
BitVector concatenate_in_order(std::span<const BitVector> paths,
                               std::span<const std::size_t> order);

}  // namespace asintest

#endif  // ASINTEST_DYCK_HPP_
