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

#include "asintest/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "asintest/arcsine.hpp"
#include "asintest/bitstream.hpp"
#include "asintest/flawed.hpp"

namespace asintest {
namespace {

uint128 parse_modulus(const std::string& text) {
  if (text.empty()) throw InvalidGenerator("lcg: modulus is required");
  uint128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw InvalidGenerator("lcg: modulus must be a decimal integer");
    value = value * 10 + static_cast<unsigned>(c - '0');
    if (value > kTwoPow64) throw InvalidGenerator("lcg: modulus exceeds 2^64");
  }
  return value;
}

GeneratorSpec build_named(const std::string& name, const GeneratorSelection& sel) {
  if (name == "lcg") {
    LcgParams params;
    params.modulus = parse_modulus(sel.lcg_modulus);
    params.multiplier = sel.lcg_multiplier;
    params.increment = sel.lcg_increment;
    if (sel.lcg_window_hi.has_value() != sel.lcg_window_lo.has_value()) {
      throw InvalidGenerator("lcg: output window needs both hi and lo");
    }
    if (sel.lcg_window_hi) params.window = OutputWindow{*sel.lcg_window_hi, *sel.lcg_window_lo};
    return make_lcg_spec("lcg", params, sel.lcg_digits);
  }
  return preset_generator(name);
}

template <typename T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  out.reset();
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value) {
  if (value) {
    j[key] = *value;
  } else {
    j[key] = nullptr;
  }
}

std::uint64_t parse_seed_token(const std::string& token, const std::string& where) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  int base = 10;
  if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
    first += 2;
    base = 16;
  }
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (ec != std::errc() || ptr != last || first == last) {
    throw BadSeed(where + ": not an unsigned 64-bit seed: '" + token + "'");
  }
  return value;
}

}  // namespace

int exit_code_for(Verdict verdict, bool reliable) {
  switch (verdict) {
    case Verdict::kFail:
      return kExitFail;
    case Verdict::kInconclusive:
      return kExitInconclusive;
    case Verdict::kPass:
      return reliable ? kExitPass : kExitInconclusive;
  }
  return kExitSoftware;
}

int exit_code_for(const TestReport& report) {
  return exit_code_for(report.overall(), report.reliable);
}

GeneratorSpec build_generator(const GeneratorSelection& sel) {
  GeneratorSpec spec;
  if (sel.name == "flawed") {
    spec = make_flawed_spec(build_named(sel.flawed_inner, sel), sel.flawed_block_log2,
                            sel.flawed_tau);
  } else if (sel.name == "bitfile") {
    if (sel.bitfile.empty()) throw InvalidGenerator("bitfile: path is required");
    spec = make_bitfile_spec(sel.bitfile);
  } else {
    spec = build_named(sel.name, sel);
  }
  spec.validate();
  return spec;
}

void to_json(nlohmann::json& j, const GeneratorSelection& g) {
  j = nlohmann::json{{"name", g.name},
                     {"lcg_modulus", g.lcg_modulus},
                     {"lcg_multiplier", g.lcg_multiplier},
                     {"lcg_increment", g.lcg_increment},
                     {"flawed_inner", g.flawed_inner},
                     {"flawed_block_log2", g.flawed_block_log2},
                     {"flawed_tau", g.flawed_tau},
                     {"bitfile", g.bitfile.string()}};
  put_optional(j, "lcg_window_hi", g.lcg_window_hi);
  put_optional(j, "lcg_window_lo", g.lcg_window_lo);
  put_optional(j, "lcg_digits", g.lcg_digits);
}

void from_json(const nlohmann::json& j, GeneratorSelection& g) {
  g = GeneratorSelection{};
  g.name = j.at("name").get<std::string>();
  g.lcg_modulus = j.value("lcg_modulus", std::string());
  g.lcg_multiplier = j.value("lcg_multiplier", std::uint64_t{0});
  g.lcg_increment = j.value("lcg_increment", std::uint64_t{0});
  get_optional(j, "lcg_window_hi", g.lcg_window_hi);
  get_optional(j, "lcg_window_lo", g.lcg_window_lo);
  get_optional(j, "lcg_digits", g.lcg_digits);
  g.flawed_inner = j.value("flawed_inner", g.flawed_inner);
  g.flawed_block_log2 = j.value("flawed_block_log2", g.flawed_block_log2);
  g.flawed_tau = j.value("flawed_tau", g.flawed_tau);
  g.bitfile = j.value("bitfile", std::string());
}

void to_json(nlohmann::json& j, const CampaignConfig& c) {
  j = nlohmann::json{{"subcommand", c.subcommand},
                     {"generator", c.generator},
                     {"n", c.test.n},
                     {"m", c.test.m},
                     {"s", c.test.s},
                     {"alpha", c.test.alpha},
                     {"mode", std::string(mode_name(c.test.mode))},
                     {"workers", c.workers},
                     {"format", c.format == OutputFormat::kJson ? "json" : "csv"},
                     {"max_doublings", c.max_doublings}};
  j["seed_file"] = c.seed_file ? nlohmann::json(c.seed_file->string()) : nlohmann::json(nullptr);
  put_optional(j, "master_seed", c.master_seed);
  j["output"] = c.output ? nlohmann::json(c.output->string()) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, CampaignConfig& c) {
  c = CampaignConfig{};
  c.subcommand = j.value("subcommand", c.subcommand);
  if (j.contains("generator")) c.generator = j.at("generator").get<GeneratorSelection>();
  c.test.n = j.value("n", c.test.n);
  c.test.m = j.value("m", c.test.m);
  c.test.s = j.value("s", c.test.s);
  c.test.alpha = j.value("alpha", c.test.alpha);
  c.test.mode = parse_mode(j.value("mode", std::string(mode_name(c.test.mode))));
  c.workers = j.value("workers", c.workers);
  const std::string format = j.value("format", std::string("csv"));
  if (format == "json") {
    c.format = OutputFormat::kJson;
  } else if (format == "csv") {
    c.format = OutputFormat::kCsv;
  } else {
    throw std::invalid_argument("unknown output format '" + format + "'");
  }
  c.max_doublings = j.value("max_doublings", c.max_doublings);
  std::optional<std::string> path;
  get_optional(j, "seed_file", path);
  if (path) c.seed_file = *path;
  get_optional(j, "master_seed", c.master_seed);
  get_optional(j, "output", path);
  if (path) c.output = *path;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open config file " + path.string());
  try {
    return nlohmann::json::parse(in).get<CampaignConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file " + path.string() + ": " + e.what());
  }
}

void save_campaign_config(const CampaignConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file " + path.string());
  out << nlohmann::json(config).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::uint64_t> read_seed_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open seed file " + path.string());
  std::vector<std::uint64_t> seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    seeds.push_back(parse_seed_token(token, where));
    if (tokens >> token) throw BadSeed(where + ": more than one seed on a line");
  }
  if (in.bad()) throw IoError("read failed for seed file " + path.string());
  return seeds;
}

std::vector<std::uint64_t> derive_seeds(const GeneratorSpec& spec, std::uint64_t master,
                                        std::uint64_t count, std::uint64_t offset) {
  std::vector<std::uint64_t> seeds(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    seeds[j] = spec.normalize_seed(splitmix64(master + offset + j));
  }
  return seeds;
}

std::uint64_t entropy_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

std::vector<std::uint64_t> campaign_seeds(const CampaignConfig& config, const GeneratorSpec& spec,
                                          int attempt) {
  const std::uint64_t m = config.test.m;
  const std::uint64_t offset = static_cast<std::uint64_t>(attempt) * m;
  if (!config.seed_file) {
    const std::uint64_t master = config.master_seed ? *config.master_seed : entropy_seed();
    return derive_seeds(spec, master, m, offset);
  }
  const std::vector<std::uint64_t> all = read_seed_file(*config.seed_file);
  if (all.size() < offset + m) {
    throw SeedShortage("seed file " + config.seed_file->string() + " holds " +
                       std::to_string(all.size()) + " seeds, " + std::to_string(offset + m) +
                       " needed");
  }
  std::vector<std::uint64_t> seeds(all.begin() + static_cast<std::ptrdiff_t>(offset),
                                   all.begin() + static_cast<std::ptrdiff_t>(offset + m));
  for (std::size_t j = 0; j < seeds.size(); ++j) {
    if (!spec.seed_is_valid(seeds[j])) {
      throw BadSeed("seed " + std::to_string(seeds[j]) + " (entry " +
                    std::to_string(offset + j + 1) + ") is not valid for " + spec.name);
    }
  }
  return seeds;
}

std::vector<SequenceResult> run_sequences(const GeneratorSpec& spec, std::uint64_t n,
                                          const std::vector<std::uint64_t>& seeds,
                                          unsigned workers, const ProgressCallback& progress) {
  std::vector<SequenceResult> results(seeds.size());
  if (seeds.empty()) return results;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, seeds.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (;;) {
        if (stop.load(std::memory_order_relaxed)) return;
        const std::size_t j = next.fetch_add(1, std::memory_order_relaxed);
        if (j >= seeds.size()) return;
        BitStream stream = open_stream(spec, seeds[j]);
        SequenceResult& r = results[j];
        r.seed = seeds[j];
        r.s_asin = walk_stream(stream, n);
        r.p_value = basic_pvalue(r.s_asin.value());
        const std::uint64_t finished = done.fetch_add(1, std::memory_order_relaxed) + 1;
        if (progress) progress(finished, seeds.size());
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop.store(true);
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace {

TestReport run_attempt(const CampaignConfig& config, const GeneratorSpec& spec,
                       const TestConfig& test, int attempt, const ProgressCallback& progress,
                       std::vector<SequenceResult>* sequences) {
  CampaignConfig attempt_config = config;
  attempt_config.test = test;
  const std::vector<std::uint64_t> seeds = campaign_seeds(attempt_config, spec, attempt);
  std::vector<SequenceResult> results =
      run_sequences(spec, test.n, seeds, config.workers, progress);
  std::vector<SojournFraction> values(results.size());
  for (std::size_t j = 0; j < results.size(); ++j) values[j] = results[j].s_asin;
  TestReport report = run_second_level(test, values);
  report.generator = spec.name;
  if (sequences) *sequences = std::move(results);
  return report;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, const ProgressCallback& progress) {
  config.test.validate();
  const GeneratorSpec spec = build_generator(config.generator);
  CampaignConfig fixed = config;
  if (!fixed.seed_file && !fixed.master_seed) fixed.master_seed = entropy_seed();
  CampaignResult result;
  result.master_seed = fixed.seed_file ? std::nullopt : fixed.master_seed;
  result.report = run_attempt(fixed, spec, config.test, 0, progress, &result.sequences);
  return result;
}

AdaptiveOutcome run_adaptive_campaign(const CampaignConfig& config,
                                      const ProgressCallback& progress) {
  config.test.validate();
  const GeneratorSpec spec = build_generator(config.generator);
  // Entropy seeding draws the master once so every attempt continues the
  // same derived sequence instead of reusing seeds.
  CampaignConfig fixed = config;
  if (!fixed.seed_file && !fixed.master_seed) fixed.master_seed = entropy_seed();
  const TestRunner runner = [&](const TestConfig& test, int attempt) {
    return run_attempt(fixed, spec, test, attempt, progress, nullptr);
  };
  return adaptive_retest(config.test, runner, config.max_doublings);
}

}  // namespace asintest
