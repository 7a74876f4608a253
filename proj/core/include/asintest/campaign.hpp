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

// Test campaigns: m independent generator/walk pipelines run on a worker
// pool, followed by the second-level test over their results.

#ifndef ASINTEST_CAMPAIGN_HPP_
#define ASINTEST_CAMPAIGN_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asintest/bitstream.hpp"
#include "asintest/prng.hpp"
#include "asintest/second_level.hpp"
#include "asintest/walk.hpp"

namespace asintest {

// Fewer seeds available than sequences requested.
class SeedShortage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A seed file line that is not a valid seed for the generator.
class BadSeed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Process exit codes. Statistical outcomes use 0..2, errors follow the BSD
// sysexits values.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitInconclusive = 2,  // also PASS with the reliability condition violated
  kExitUsage = 64,
  kExitDataError = 65,
  kExitNoInput = 66,
  kExitSoftware = 70,
  kExitIoError = 74,
};

int exit_code_for(const TestReport& report);
int exit_code_for(Verdict verdict, bool reliable);

enum class OutputFormat { kCsv, kJson };

struct GeneratorSelection {
  // A preset name, "lcg", "flawed" or "bitfile".
  std::string name = "mt19937_64";

  // Custom congruential generator. The modulus is a decimal string since it
  // may equal 2^64.
  std::string lcg_modulus;
  std::uint64_t lcg_multiplier = 0;
  std::uint64_t lcg_increment = 0;
  std::optional<int> lcg_window_hi;
  std::optional<int> lcg_window_lo;
  std::optional<int> lcg_digits;

  // Flawed wrapper around a preset or custom inner generator.
  std::string flawed_inner = "mt19937_64";
  int flawed_block_log2 = 18;
  double flawed_tau = 1.0 / 66.0;

  std::filesystem::path bitfile;

  friend bool operator==(const GeneratorSelection&, const GeneratorSelection&) = default;
};

// Throws InvalidGenerator for unknown names or bad parameters.
GeneratorSpec build_generator(const GeneratorSelection& selection);

struct CampaignConfig {
  std::string subcommand = "asin-test";
  GeneratorSelection generator;
  TestConfig test;
  // Seeds come from this file when set, otherwise from master_seed, otherwise
  // from OS entropy.
  std::optional<std::filesystem::path> seed_file;
  std::optional<std::uint64_t> master_seed;
  unsigned workers = 0;  // 0 selects the hardware concurrency
  OutputFormat format = OutputFormat::kCsv;
  std::optional<std::filesystem::path> output;
  int max_doublings = 0;

  friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

void to_json(nlohmann::json& j, const GeneratorSelection& g);
void from_json(const nlohmann::json& j, GeneratorSelection& g);
void to_json(nlohmann::json& j, const CampaignConfig& c);
void from_json(const nlohmann::json& j, CampaignConfig& c);

CampaignConfig load_campaign_config(const std::filesystem::path& path);
void save_campaign_config(const CampaignConfig& config, const std::filesystem::path& path);

// One unsigned 64-bit seed per line, decimal or 0x-prefixed hex. Blank lines
// and text after '#' are ignored. Throws IoError or BadSeed.
std::vector<std::uint64_t> read_seed_file(const std::filesystem::path& path);

// Seeds |offset| .. |offset| + |count| - 1 of the SplitMix64 sequence started
// at |master|, each mapped onto a valid seed of |spec|.
std::vector<std::uint64_t> derive_seeds(const GeneratorSpec& spec, std::uint64_t master,
                                        std::uint64_t count, std::uint64_t offset = 0);

std::uint64_t entropy_seed();

// Seeds for |attempt| (0-based): sequences attempt*m .. attempt*m + m - 1 of
// the configured seed source. Throws SeedShortage or BadSeed.
std::vector<std::uint64_t> campaign_seeds(const CampaignConfig& config, const GeneratorSpec& spec,
                                          int attempt = 0);

struct SequenceResult {
  std::uint64_t seed = 0;
  SojournFraction s_asin;
  double p_value = 0.0;  // basic p-value 1 - F(S)
};

struct CampaignResult {
  TestReport report;
  std::vector<SequenceResult> sequences;  // in seed order
  // Master seed actually used when seeds were derived rather than read.
  std::optional<std::uint64_t> master_seed;
};

// Called from worker threads with the number of finished sequences.
using ProgressCallback = std::function<void(std::uint64_t done, std::uint64_t total)>;

// Walks n bits for each seed on |workers| threads. The output order follows
// |seeds| regardless of scheduling.
std::vector<SequenceResult> run_sequences(const GeneratorSpec& spec, std::uint64_t n,
                                          const std::vector<std::uint64_t>& seeds,
                                          unsigned workers,
                                          const ProgressCallback& progress = {});

CampaignResult run_campaign(const CampaignConfig& config, const ProgressCallback& progress = {});

// Adaptive variant: doubles n on fresh seeds while the p-value is in the
// gray zone.
AdaptiveOutcome run_adaptive_campaign(const CampaignConfig& config,
                                      const ProgressCallback& progress = {});

}  // namespace asintest

#endif  // ASINTEST_CAMPAIGN_HPP_
