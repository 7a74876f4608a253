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

#ifndef ASINTEST_WALK_HPP_
#define ASINTEST_WALK_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "asintest/bitstream.hpp"

namespace asintest {

// Fraction of steps spent above the axis, kept as the exact pair
// (above, steps). Converted to double only on demand.
struct SojournFraction {
  std::uint64_t above = 0;
  std::uint64_t steps = 0;

  double value() const { return static_cast<double>(above) / static_cast<double>(steps); }
  friend bool operator==(const SojournFraction&, const SojournFraction&) = default;
};

// Streaming random walk S_k = sum (2 B_i - 1) with the sojourn count
// L_k = sum D_i, where D_i = 1 iff S_i > 0 or S_{i-1} > 0. Constant size
// regardless of the number of bits fed.
//
// At k = 1 there is no previous step: S_0 = 0, so a first bit of 0 gives
// D_1 = 0.
class WalkAccumulator {
 public:
  void feed(int bit) {
    const std::int64_t prev = position_;
    position_ += bit ? 1 : -1;
    last_above_ = position_ > 0 || prev > 0;
    above_ += last_above_ ? 1u : 0u;
    ++steps_;
  }

  // Feeds the low |count| bits of |bits|, most significant first.
  void feed_bits(std::uint64_t bits, int count);

  // Feeds |count| bits from |stream|.
  void feed_stream(BitStream& stream, std::uint64_t count);

  std::int64_t position() const { return position_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t above() const { return above_; }
  // D_k of the latest step.
  bool last_above() const { return last_above_; }

 private:
  std::int64_t position_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t above_ = 0;
  bool last_above_ = false;
};

// S^asin = L / k. Throws std::invalid_argument when nothing has been fed.
SojournFraction s_asin(const WalkAccumulator& acc);

// Runs one basic test: walks the next |n| bits of |stream|.
SojournFraction walk_stream(BitStream& stream, std::uint64_t n);

// sqrt(2 k ln ln k), defined for k >= 3.
double lil_envelope(std::uint64_t k);

struct TrajectoryPoint {
  std::uint64_t step = 0;
  std::int64_t position = 0;
};

// Walk heights sampled with a uniform stride so at most |max_points| points
// are kept. The final step is always included.
struct TrajectorySnapshot {
  std::vector<TrajectoryPoint> points;
  std::uint64_t stride = 1;
};

inline constexpr std::size_t kDefaultTrajectoryPoints = 4096;

TrajectorySnapshot record_trajectory(BitStream& stream, std::uint64_t n,
                                     std::size_t max_points = kDefaultTrajectoryPoints);

// CSV rows "sequence,step,S,upper,lower"; the envelope columns are empty for
// steps below 3. Writes the header when |header| is set.
void write_trajectory_csv(std::ostream& out, const TrajectorySnapshot& snapshot,
                          std::size_t sequence_id, bool header);

}  // namespace asintest

#endif  // ASINTEST_WALK_HPP_
