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

#include "asintest/bitstream.hpp"

#include <bit>
#include <numeric>
#include <utility>

namespace asintest {

BitStream::BitStream(std::unique_ptr<BitSource> source) : source_(std::move(source)) {
  if (!source_) throw std::invalid_argument("BitStream needs a source");
}

void BitStream::refill() {
  std::uint64_t word = 0;
  const int valid = source_->next_chunk(word);
  if (valid <= 0) throw StreamExhausted("bit source exhausted");
  buffer_ = word;
  buffered_ = valid;
}

std::uint64_t BitStream::next_bits(int count) {
  if (count < 0 || count > 64) throw std::invalid_argument("next_bits: count must be in [0, 64]");
  std::uint64_t out = 0;
  int needed = count;
  while (needed > 0) {
    if (buffered_ == 0) refill();
    const int take = needed < buffered_ ? needed : buffered_;
    const std::uint64_t chunk = buffer_ >> (64 - take);
    out = take == 64 ? chunk : (out << take) | chunk;
    buffer_ = take == 64 ? 0 : buffer_ << take;
    buffered_ -= take;
    needed -= take;
  }
  position_ += static_cast<std::uint64_t>(count);
  return out;
}

void BitStream::skip(std::uint64_t count) {
  while (count >= 64) {
    next_bits(64);
    count -= 64;
  }
  next_bits(static_cast<int>(count));
}

VectorBitSource::VectorBitSource(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

int VectorBitSource::next_chunk(std::uint64_t& word) {
  word = 0;
  int valid = 0;
  while (valid < 64 && next_ < bits_.size()) {
    word |= static_cast<std::uint64_t>(bits_[next_++] & 1u) << (63 - valid);
    ++valid;
  }
  return valid;
}

FileBitSource::FileBitSource(const std::filesystem::path& path, std::uint64_t byte_offset)
    : in_(path, std::ios::binary) {
  if (!in_) throw MissingInput("cannot open bit file: " + path.string());
  in_.seekg(static_cast<std::streamoff>(byte_offset));
  if (!in_) throw StreamExhausted("bit file shorter than the requested offset");
}

int FileBitSource::next_chunk(std::uint64_t& word) {
  unsigned char bytes[8];
  in_.read(reinterpret_cast<char*>(bytes), sizeof(bytes));
  const auto got = static_cast<int>(in_.gcount());
  word = 0;
  for (int i = 0; i < got; ++i) word |= std::uint64_t{bytes[i]} << (56 - 8 * i);
  return 8 * got;
}

BitStream make_vector_stream(std::vector<std::uint8_t> bits) {
  return BitStream(std::make_unique<VectorBitSource>(std::move(bits)));
}

BitStream open_stream(const GeneratorSpec& spec, std::uint64_t seed) {
  return BitStream(make_source(spec, seed));
}

std::uint64_t uniform_int(BitStream& stream, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_int: bound must be positive");
  if (bound == 1) return 0;
  const int width = std::bit_width(bound - 1);
  for (;;) {
    const std::uint64_t candidate = stream.next_bits(width);
    if (candidate < bound) return candidate;
  }
}

std::vector<std::size_t> rand_perm(std::size_t n, BitStream& stream) {
  if (n == 0) throw std::invalid_argument("rand_perm: n must be positive");
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_int(stream, n - i));
    std::swap(p[i], p[j]);
  }
  return p;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace asintest
