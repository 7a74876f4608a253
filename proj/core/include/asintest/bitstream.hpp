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

#ifndef ASINTEST_BITSTREAM_HPP_
#define ASINTEST_BITSTREAM_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "asintest/prng.hpp"

namespace asintest {

// A finite source ran out of bits. Never silently wrapped.
class StreamExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input file that does not exist or cannot be opened.
class MissingInput : public IoError {
 public:
  using IoError::IoError;
};

// Producer side of a bit stream. Each call hands over the next chunk of bits
// MSB-aligned in |word| and returns how many of its leading bits are valid;
// 0 means the source is exhausted.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual int next_chunk(std::uint64_t& word) = 0;
};

// Consumer side. Bits come out in emission order; multi-bit reads are
// big-endian (the first bit read is the most significant of the result).
class BitStream {
 public:
  explicit BitStream(std::unique_ptr<BitSource> source);

  BitStream(BitStream&&) noexcept = default;
  BitStream& operator=(BitStream&&) noexcept = default;

  int next_bit() { return static_cast<int>(next_bits(1)); }

  // count in [0, 64]; result holds the bits in its low |count| bits.
  std::uint64_t next_bits(int count);

  void skip(std::uint64_t count);

  // Bits consumed so far.
  std::uint64_t position() const { return position_; }

 private:
  void refill();

  std::unique_ptr<BitSource> source_;
  std::uint64_t buffer_ = 0;  // pending bits, MSB-aligned
  int buffered_ = 0;
  std::uint64_t position_ = 0;
};

// Emits a fixed vector of bits (one 0/1 value per element), then exhausts.
class VectorBitSource final : public BitSource {
 public:
  explicit VectorBitSource(std::vector<std::uint8_t> bits);
  int next_chunk(std::uint64_t& word) override;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t next_ = 0;
};

// Raw binary file; bits are consumed MSB-first within each byte.
class FileBitSource final : public BitSource {
 public:
  explicit FileBitSource(const std::filesystem::path& path,
                         std::uint64_t byte_offset = 0);
  int next_chunk(std::uint64_t& word) override;

 private:
  std::ifstream in_;
};

BitStream make_vector_stream(std::vector<std::uint8_t> bits);

// Opens the bit stream of a generator for one seed. Throws InvalidGenerator
// for an invalid spec or seed.
std::unique_ptr<BitSource> make_source(const GeneratorSpec& spec, std::uint64_t seed);
BitStream open_stream(const GeneratorSpec& spec, std::uint64_t seed);

// Uniform value in [0, bound) by rejection sampling on ceil(log2 bound)-bit
// chunks. bound == 1 consumes nothing.
std::uint64_t uniform_int(BitStream& stream, std::uint64_t bound);

// Uniformly random permutation of {0, ..., n-1}, as a vector p where p[i] is
// the image of i. Forward Fisher-Yates: for i = 0 .. n-2 swap p[i] with
// p[i + uniform_int(n - i)], so for n = 2 a 0 bit yields the identity and a 1
// bit the transposition.
std::vector<std::size_t> rand_perm(std::size_t n, BitStream& stream);

// 64-bit finalizer used for deriving per-call-site seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace asintest

#endif  // ASINTEST_BITSTREAM_HPP_
