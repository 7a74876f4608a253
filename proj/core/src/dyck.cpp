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

#include "asintest/dyck.hpp"

#include <limits>
#include <stdexcept>

namespace asintest {

bool is_dyck_path(std::span<const std::uint8_t> bits) {
  std::int64_t height = 0;
  for (const std::uint8_t b : bits) {
    if (b > 1) return false;
    height += b ? 1 : -1;
    if (height < 0) return false;
  }
  return height == 0;
}

DyckPath::DyckPath(BitVector bits) : bits_(std::move(bits)) {
  if (!is_dyck_path(bits_)) throw std::invalid_argument("not a Dyck path");
}

std::string DyckPath::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (const std::uint8_t b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

DyckPath f_dyck(std::span<const std::uint8_t> walk) {
  if (walk.size() % 2 == 0) {
    throw std::invalid_argument("f_dyck: input length must be odd (2n+1)");
  }
  std::size_t zeros = 0;
  for (const std::uint8_t b : walk) {
    if (b > 1) throw std::invalid_argument("f_dyck: input must be bits");
    zeros += b == 0;
  }
  const std::size_t half = walk.size() / 2;
  if (zeros != half + 1) {
    throw std::invalid_argument("f_dyck: input must hold n+1 zeros and n ones");
  }

  // First (leftmost) index of the minimum.
  std::int64_t height = 0;
  std::int64_t lowest = 1;
  std::size_t t = 0;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    height += walk[k] ? 1 : -1;
    if (height < lowest) {
      lowest = height;
      t = k;
    }
  }

  BitVector out;
  out.reserve(walk.size() - 1);
  out.insert(out.end(), walk.begin() + static_cast<std::ptrdiff_t>(t) + 1, walk.end());
  out.insert(out.end(), walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(t));
  return DyckPath(std::move(out));
}

BitVector sample_dyck_path(std::size_t half_length, BitStream& stream, bool reflect) {
  if (half_length == 0) return {};
  const std::size_t len = 2 * half_length + 1;
  const std::vector<std::size_t> sigma = rand_perm(len, stream);
  // The source vector is n+1 zeros followed by n ones.
  BitVector shuffled(len);
  for (std::size_t j = 0; j < len; ++j) {
    shuffled[j] = sigma[j] > half_length ? 1 : 0;
  }
  BitVector path = f_dyck(shuffled).bits();
  if (reflect) {
    for (std::uint8_t& b : path) b ^= 1u;
  }
  return path;
}

std::uint64_t catalan(unsigned n) {
  // C_{k+1} = C_k * 2(2k+1) / (k+2); the division is exact.
  uint128 c = 1;
  for (unsigned k = 0; k < n; ++k) {
    c = c * (2 * (2 * uint128{k} + 1)) / (k + 2);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("catalan: result does not fit in 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

SignSegments sign_segments(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw std::invalid_argument("sign_segments: empty input");
  std::int64_t height = 0;
  std::vector<std::uint8_t> d(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const std::int64_t prev = height;
    height += bits[k] ? 1 : -1;
    d[k] = (height > 0 || prev > 0) ? 1 : 0;
  }
  if (height != 0) {
    throw std::invalid_argument("sign_segments: walk must return to zero");
  }

  SignSegments seg;
  std::size_t left = 1;
  for (std::size_t i = 1; i <= bits.size(); ++i) {
    const bool last = i == bits.size();
    if (last || d[i] != d[i - 1]) {
      seg.left_ends.push_back(left);
      seg.right_ends.push_back(i);
      seg.signs.push_back(d[i - 1]);
      left = i + 1;
    }
  }
  return seg;
}

BitVector concatenate_in_order(std::span<const BitVector> paths,
                               std::span<const std::size_t> order) {
  if (order.size() != paths.size()) {
    throw std::invalid_argument("concatenate_in_order: order must permute the paths");
  }
  std::size_t total = 0;
  for (const BitVector& p : paths) total += p.size();
  BitVector out;
  out.reserve(total);
  std::vector<bool> used(paths.size(), false);
  for (const std::size_t idx : order) {
    if (idx >= paths.size() || used[idx]) {
      throw std::invalid_argument("concatenate_in_order: order must permute the paths");
    }
    used[idx] = true;
    out.insert(out.end(), paths[idx].begin(), paths[idx].end());
  }
  return out;
}

}  // namespace asintest
