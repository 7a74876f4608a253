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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

namespace asintest {
namespace {

TEST(BitStreamTest, VectorSourceIsReadInOrder) {
  BitStream s = make_vector_stream({1, 0, 1, 1, 0, 0, 1});
  EXPECT_EQ(s.next_bit(), 1);
  EXPECT_EQ(s.next_bits(3), 0b011u);
  EXPECT_EQ(s.position(), 4u);
  s.skip(2);
  EXPECT_EQ(s.next_bit(), 1);
  EXPECT_THROW(s.next_bit(), StreamExhausted);
}

TEST(BitStreamTest, ZeroBitReadConsumesNothing) {
  BitStream s = make_vector_stream({1});
  EXPECT_EQ(s.next_bits(0), 0u);
  EXPECT_EQ(s.position(), 0u);
  EXPECT_EQ(s.next_bit(), 1);
}

TEST(BitStreamTest, WideReadsSpanChunks) {
  std::vector<std::uint8_t> bits(130);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (i % 3 == 0) ? 1 : 0;
  BitStream s = make_vector_stream(bits);
  std::uint64_t expected = 0;
  for (int i = 0; i < 64; ++i) expected = (expected << 1) | bits[static_cast<std::size_t>(i + 1)];
  s.next_bit();
  EXPECT_EQ(s.next_bits(64), expected);
}

TEST(BitStreamTest, MtStreamIsOutputsMsbFirst) {
  BitStream s = open_stream(preset_generator("mt19937_64"), 99);
  std::mt19937_64 ref(99);
  const std::uint64_t first = ref();
  EXPECT_EQ(s.next_bits(1), first >> 63);
  EXPECT_EQ(s.next_bits(63), first & ((std::uint64_t{1} << 63) - 1));
  EXPECT_EQ(s.next_bits(64), ref());
}

TEST(BitStreamTest, RanduStreamUsesAll31Bits) {
  BitStream s = open_stream(preset_generator("randu"), 1);
  EXPECT_EQ(s.next_bits(31), 65539u);
  EXPECT_EQ(s.next_bits(31), 393225u);
}

TEST(BitStreamTest, MsvcStreamUsesEightBitsPerValue) {
  BitStream s = open_stream(preset_generator("msvc"), 1);
  for (std::uint64_t rand_value : {41u, 18467u, 6334u, 26500u}) {
    EXPECT_EQ(s.next_bits(8), rand_value >> 7);
  }
}

TEST(BitStreamTest, FileSourceMsbFirstWithOffset) {
  const auto path = std::filesystem::temp_directory_path() / "asintest_bitstream_test.bin";
  {
    std::ofstream out(path, std::ios::binary);
    const unsigned char bytes[] = {0xA5, 0x0F, 0xFF};
    out.write(reinterpret_cast<const char*>(bytes), sizeof(bytes));
  }
  BitStream s(std::make_unique<FileBitSource>(path));
  EXPECT_EQ(s.next_bits(8), 0xA5u);
  EXPECT_EQ(s.next_bits(4), 0x0u);
  EXPECT_EQ(s.next_bits(12), 0xFFFu);
  EXPECT_THROW(s.next_bit(), StreamExhausted);

  BitStream shifted = open_stream(make_bitfile_spec(path), 1);
  EXPECT_EQ(shifted.next_bits(16), 0x0FFFu);
  std::filesystem::remove(path);
  EXPECT_THROW(FileBitSource{path}, MissingInput);
}

TEST(UniformIntTest, BoundOneConsumesNothing) {
  BitStream s = make_vector_stream({});
  EXPECT_EQ(uniform_int(s, 1), 0u);
  EXPECT_THROW(uniform_int(s, 0), std::invalid_argument);
}

TEST(UniformIntTest, RejectsOutOfRangeChunks) {
  // bound 3 reads 2-bit chunks: 11 is rejected, 10 accepted.
  BitStream s = make_vector_stream({1, 1, 1, 0});
  EXPECT_EQ(uniform_int(s, 3), 2u);
  EXPECT_EQ(s.position(), 4u);
}

TEST(UniformIntTest, RoughlyUniform) {
  BitStream s = open_stream(preset_generator("mt19937_64"), 5);
  std::vector<int> counts(6, 0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_int(s, 6)];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 6.0) * (c - draws / 6.0) / (draws / 6.0);
  EXPECT_LT(chi2, 20.5);  // chi^2(5) upper 0.001 point
}

TEST(RandPermTest, TwoElementsFollowOneBit) {
  BitStream zero = make_vector_stream({0});
  EXPECT_EQ(rand_perm(2, zero), (std::vector<std::size_t>{0, 1}));
  BitStream one = make_vector_stream({1});
  EXPECT_EQ(rand_perm(2, one), (std::vector<std::size_t>{1, 0}));
}

TEST(RandPermTest, IsAPermutationAndUniformOnThree) {
  BitStream s = open_stream(preset_generator("mt19937_64"), 11);
  std::map<std::vector<std::size_t>, int> seen;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    std::vector<std::size_t> p = rand_perm(3, s);
    std::vector<std::size_t> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    ASSERT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2}));
    ++seen[p];
  }
  ASSERT_EQ(seen.size(), 6u);
  double chi2 = 0.0;
  for (const auto& [perm, c] : seen) chi2 += (c - draws / 6.0) * (c - draws / 6.0) / (draws / 6.0);
  EXPECT_LT(chi2, 20.5);
}

TEST(SplitMixTest, KnownValue) {
  // First output of the reference SplitMix64 generator with state 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFull);
}

}  // namespace
}  // namespace asintest
