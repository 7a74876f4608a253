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

#include "asintest/walk.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace asintest {

void WalkAccumulator::feed_bits(std::uint64_t bits, int count) {
  if (count <= 0) return;
  if (count < 64) bits &= (std::uint64_t{1} << count) - 1;
  const auto ones = static_cast<std::int64_t>(std::popcount(bits));
  const auto steps = static_cast<std::int64_t>(count);

  // Far from the axis no step of this chunk can touch zero: with S_0 >= count
  // every S_{k-1} >= 1, with S_0 <= -count every S_k <= 0.
  if (position_ >= steps) {
    position_ += 2 * ones - steps;
    above_ += static_cast<std::uint64_t>(count);
    steps_ += static_cast<std::uint64_t>(count);
    last_above_ = true;
    return;
  }
  if (position_ <= -steps) {
    position_ += 2 * ones - steps;
    steps_ += static_cast<std::uint64_t>(count);
    last_above_ = false;
    return;
  }
  if (count > 8) {
    // Split into bytes so most of the walk near the axis still takes the
    // fast path above.
    int remaining = count;
    while (remaining > 0) {
      const int take = remaining >= 8 ? 8 : remaining;
      remaining -= take;
      feed_bits(bits >> remaining, take);
    }
    return;
  }
  for (int i = count - 1; i >= 0; --i) feed(static_cast<int>((bits >> i) & 1u));
}

void WalkAccumulator::feed_stream(BitStream& stream, std::uint64_t count) {
  while (count >= 64) {
    feed_bits(stream.next_bits(64), 64);
    count -= 64;
  }
  if (count > 0) {
    const int tail = static_cast<int>(count);
    feed_bits(stream.next_bits(tail), tail);
  }
}

SojournFraction s_asin(const WalkAccumulator& acc) {
  if (acc.steps() == 0) throw std::invalid_argument("s_asin: walk has no steps");
  return SojournFraction{acc.above(), acc.steps()};
}

SojournFraction walk_stream(BitStream& stream, std::uint64_t n) {
  WalkAccumulator acc;
  acc.feed_stream(stream, n);
  return s_asin(acc);
}

double lil_envelope(std::uint64_t k) {
  if (k < 3) throw std::invalid_argument("lil_envelope: k must be at least 3");
  const double x = static_cast<double>(k);
  return std::sqrt(2.0 * x * std::log(std::log(x)));
}

TrajectorySnapshot record_trajectory(BitStream& stream, std::uint64_t n,
                                     std::size_t max_points) {
  if (max_points == 0) throw std::invalid_argument("record_trajectory: max_points must be positive");
  TrajectorySnapshot snap;
  snap.stride = n <= max_points ? 1 : (n + max_points - 1) / max_points;
  snap.points.reserve(static_cast<std::size_t>(n / snap.stride + 1));
  WalkAccumulator acc;
  for (std::uint64_t k = 1; k <= n; ++k) {
    acc.feed(stream.next_bit());
    if (k % snap.stride == 0 || k == n) {
      snap.points.push_back(TrajectoryPoint{k, acc.position()});
    }
  }
  return snap;
}

void write_trajectory_csv(std::ostream& out, const TrajectorySnapshot& snapshot,
                          std::size_t sequence_id, bool header) {
  if (header) out << "sequence,step,S,upper,lower\n";
  char buf[64];
  for (const TrajectoryPoint& p : snapshot.points) {
    out << sequence_id << ',' << p.step << ',' << p.position << ',';
    if (p.step >= 3) {
      const double env = lil_envelope(p.step);
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g", env, -env);
      out << buf;
    } else {
      out << ',';
    }
    out << '\n';
  }
}

}  // namespace asintest
