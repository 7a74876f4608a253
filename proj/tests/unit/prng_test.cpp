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

#include "asintest/prng.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <cstdlib>
#include <random>

#include "asintest/bitstream.hpp"

namespace asintest {
namespace {

TEST(Mt19937_64Test, MatchesStandardLibraryForSeveralSeeds) {
  for (std::uint64_t seed : {std::uint64_t{5489}, std::uint64_t{0}, std::uint64_t{1},
                             std::uint64_t{0xDEADBEEFCAFEF00Dull}}) {
    Mt19937_64 ours(seed);
    std::mt19937_64 reference(seed);
    for (int i = 0; i < 2000; ++i) ASSERT_EQ(ours.next(), reference()) << "seed " << seed;
  }
}

TEST(Mt19937_64Test, DefaultSeedKnownOutputs) {
  Mt19937_64 mt;
  EXPECT_EQ(mt.next(), 14514284786278117030ull);
  for (int i = 2; i < 10000; ++i) mt.next();
  EXPECT_EQ(mt.next(), 9981545732273789042ull);
}

TEST(GlibcRandomTest, KnownSequences) {
  GlibcRandom one(1);
  EXPECT_EQ(one.next(), 1804289383u);
  EXPECT_EQ(one.next(), 846930886u);
  EXPECT_EQ(one.next(), 1681692777u);
  GlibcRandom two(2);
  EXPECT_EQ(two.next(), 1505335290u);
  EXPECT_EQ(two.next(), 1738766719u);
  EXPECT_EQ(two.next(), 190686788u);
  GlibcRandom other(12345);
  EXPECT_EQ(other.next(), 383100999u);
  EXPECT_EQ(other.next(), 858300821u);
  EXPECT_EQ(other.next(), 357768173u);
}

TEST(GlibcRandomTest, SeedZeroBehavesLikeSeedOne) {
  GlibcRandom zero(0);
  GlibcRandom one(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(zero.next(), one.next());
}

#if defined(__GLIBC__)
TEST(GlibcRandomTest, MatchesHostRand) {
  for (unsigned seed : {1u, 7u, 20260u, 2147483646u}) {
    std::srand(seed);
    GlibcRandom ours(seed);
    for (int i = 0; i < 1000; ++i) {
      ASSERT_EQ(ours.next(), static_cast<std::uint32_t>(std::rand())) << "seed " << seed;
    }
  }
}
#endif

TEST(CongruentialTest, RanduFromSeedOne) {
  const GeneratorSpec spec = preset_generator("randu");
  std::uint64_t x = 1;
  const std::uint64_t expected[] = {65539, 393225, 1769499, 7077969, 26542323};
  for (std::uint64_t e : expected) {
    x = congruential_step(x, *spec.lcg);
    EXPECT_EQ(x, e);
  }
}

TEST(CongruentialTest, MinstdMatchesStandardLibrary) {
  const GeneratorSpec a = preset_generator("minstd16807");
  const GeneratorSpec b = preset_generator("minstd48271");
  std::minstd_rand0 ref_a(1);
  std::minstd_rand ref_b(1);
  std::uint64_t xa = 1;
  std::uint64_t xb = 1;
  for (int i = 0; i < 10000; ++i) {
    xa = congruential_step(xa, *a.lcg);
    xb = congruential_step(xb, *b.lcg);
    ASSERT_EQ(xa, ref_a());
    ASSERT_EQ(xb, ref_b());
  }
  // The classic check values after 10000 steps from seed 1.
  EXPECT_EQ(xa, 1043618065u);
  EXPECT_EQ(xb, 399268537u);
}

TEST(CongruentialTest, MsvcWindowTakesTopEightOfFifteenBits) {
  const GeneratorSpec spec = preset_generator("msvc");
  EXPECT_EQ(spec.bits_per_value(), 8);
  // rand() after srand(1) is 41, 18467, 6334, 26500: bits 30..16 of the state.
  std::uint64_t x = 1;
  for (std::uint64_t rand_value : {41u, 18467u, 6334u, 26500u}) {
    x = congruential_step(x, *spec.lcg);
    EXPECT_EQ((x >> 16) & 0x7FFF, rand_value);
    EXPECT_EQ(lcg_output(x, *spec.lcg), rand_value >> 7);
  }
}

TEST(CongruentialTest, FullModulusArithmetic) {
  LcgParams p;
  p.modulus = kTwoPow64;
  p.multiplier = 6364136223846793005ull;
  p.increment = 1442695040888963407ull;
  std::uint64_t x = 0;
  std::uint64_t reference = 0;
  for (int i = 0; i < 100; ++i) {
    x = congruential_step(x, p);
    reference = reference * 6364136223846793005ull + 1442695040888963407ull;  // wraps mod 2^64
    ASSERT_EQ(x, reference);
  }
}

TEST(LcgParamsTest, RejectsInvalidParameters) {
  LcgParams p;
  p.modulus = 1;
  p.multiplier = 1;
  EXPECT_THROW(p.validate(), InvalidGenerator);
  p.modulus = 16;
  p.multiplier = 0;
  EXPECT_THROW(p.validate(), InvalidGenerator);
  p.multiplier = 16;
  EXPECT_THROW(p.validate(), InvalidGenerator);
  p.multiplier = 5;
  p.increment = 17;
  EXPECT_THROW(p.validate(), InvalidGenerator);
  p.increment = 3;
  p.window = OutputWindow{4, 1};
  EXPECT_THROW(p.validate(), InvalidGenerator);
  p.window = OutputWindow{3, 1};
  EXPECT_NO_THROW(p.validate());
  p.modulus = 15;
  EXPECT_THROW(p.validate(), InvalidGenerator);
}

TEST(ExtractBitsTest, PowerOfTwoModulusEmitsTheValue) {
  const ExtractedBits b = extract_bits(0b1011, 16);
  EXPECT_EQ(b.width, 4);
  EXPECT_EQ(b.bits, 0b1011u);
  EXPECT_EQ(b.bit(0), 1);
  EXPECT_EQ(b.bit(1), 0);
  EXPECT_EQ(b.to_vector(), (std::vector<std::uint8_t>{1, 0, 1, 1}));
  EXPECT_THROW(extract_bits(3, 16, 5), std::invalid_argument);
  EXPECT_THROW(extract_bits(16, 16), std::invalid_argument);
}

TEST(ExtractBitsTest, BinaryExpansionOfTheFraction) {
  // 3/10 = 0.0100110011...
  const ExtractedBits b = extract_bits(3, 10, 4);
  EXPECT_EQ(b.bits, 0b0100u);
  EXPECT_EQ(extract_bits(3, 10, 10).bits, 0b0100110011u);
  EXPECT_THROW(extract_bits(3, 10), std::invalid_argument);
}

TEST(ExtractBitsTest, AgreesWithFloorFormula) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t m = 3 + rng() % ((std::uint64_t{1} << 40) - 3);
    if ((m & (m - 1)) == 0) continue;
    const std::uint64_t v = rng() % m;
    const int d = 1 + static_cast<int>(rng() % 64);
    // floor(v 2^d / m); v 2^d < 2^104 fits in 128 bits.
    const auto expected = static_cast<std::uint64_t>((uint128{v} << d) / m);
    EXPECT_EQ(extract_bits(v, m, d).bits, expected) << v << "/" << m << " d=" << d;
  }
}

TEST(PresetTest, AllPresetsValidateAndStreamBits) {
  for (const std::string& name : preset_names()) {
    const GeneratorSpec spec = preset_generator(name);
    EXPECT_NO_THROW(spec.validate()) << name;
    EXPECT_EQ(spec.name, name);
    BitStream stream = open_stream(spec, spec.normalize_seed(42));
    EXPECT_NO_THROW(stream.skip(1000)) << name;
  }
  EXPECT_THROW(preset_generator("nope"), InvalidGenerator);
}

TEST(PresetTest, BitsPerValue) {
  EXPECT_EQ(preset_generator("randu").bits_per_value(), 31);
  EXPECT_EQ(preset_generator("bsd").bits_per_value(), 31);
  EXPECT_EQ(preset_generator("borland").bits_per_value(), 8);
  EXPECT_EQ(preset_generator("minstd16807").bits_per_value(), 31);
  EXPECT_EQ(preset_generator("glibc").bits_per_value(), 31);
  EXPECT_EQ(preset_generator("mt19937_64").bits_per_value(), 64);
}

TEST(SeedTest, DomainsPerFamily) {
  const GeneratorSpec randu = preset_generator("randu");
  EXPECT_FALSE(randu.seed_is_valid(0));
  EXPECT_TRUE(randu.seed_is_valid(1));
  EXPECT_FALSE(randu.seed_is_valid(std::uint64_t{1} << 31));
  const GeneratorSpec bsd = preset_generator("bsd");
  EXPECT_TRUE(bsd.seed_is_valid(0));
  EXPECT_FALSE(bsd.seed_is_valid(std::uint64_t{1} << 31));
  const GeneratorSpec glibc = preset_generator("glibc");
  EXPECT_TRUE(glibc.seed_is_valid(0));
  EXPECT_FALSE(glibc.seed_is_valid((std::uint64_t{1} << 31) - 1));
  EXPECT_TRUE(preset_generator("mt19937_64").seed_is_valid(~std::uint64_t{0}));
}

TEST(SeedTest, NormalizedSeedsAreValid) {
  std::mt19937_64 rng(3);
  for (const std::string& name : preset_names()) {
    const GeneratorSpec spec = preset_generator(name);
    for (int i = 0; i < 1000; ++i) {
      ASSERT_TRUE(spec.seed_is_valid(spec.normalize_seed(rng()))) << name;
    }
    EXPECT_TRUE(spec.seed_is_valid(spec.normalize_seed(0))) << name;
  }
}

TEST(SeedTest, InvalidSeedIsRejectedAtOpen) {
  EXPECT_THROW(open_stream(preset_generator("randu"), 0), InvalidGenerator);
}

}  // namespace
}  // namespace asintest
