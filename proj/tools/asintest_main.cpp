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

// asintest: command-line front end. Standard output carries results only;
// progress and diagnostics go to standard error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "asintest/arcsine.hpp"
#include "asintest/bitstream.hpp"
#include "asintest/campaign.hpp"
#include "asintest/dyck.hpp"
#include "asintest/flawed.hpp"
#include "asintest/prng.hpp"
#include "asintest/report_io.hpp"
#include "asintest/second_level.hpp"
#include "asintest/walk.hpp"

namespace {

using asintest::CampaignConfig;
using asintest::OutputFormat;

struct GeneratorFlags {
  std::string gen = "mt19937_64";
  std::string modulus;
  std::uint64_t multiplier = 0;
  std::uint64_t increment = 0;
  std::optional<int> window_hi;
  std::optional<int> window_lo;
  std::optional<int> digits;
  std::string inner = "mt19937_64";
  int block_log2 = 18;
  double tau = 1.0 / 66.0;
  std::string bitfile;

  asintest::GeneratorSelection selection() const {
    asintest::GeneratorSelection s;
    s.name = gen;
    s.lcg_modulus = modulus;
    s.lcg_multiplier = multiplier;
    s.lcg_increment = increment;
    s.lcg_window_hi = window_hi;
    s.lcg_window_lo = window_lo;
    s.lcg_digits = digits;
    s.flawed_inner = inner;
    s.flawed_block_log2 = block_log2;
    s.flawed_tau = tau;
    s.bitfile = bitfile;
    return s;
  }
};

struct SeedFlags {
  std::string seed_file;
  std::optional<std::uint64_t> master_seed;
};

struct CampaignFlags {
  GeneratorFlags gen;
  SeedFlags seeds;
  std::uint64_t n = std::uint64_t{1} << 20;
  std::uint64_t m = 10000;
  int s = 40;
  double alpha = 1e-4;
  std::string mode = "direct";
  unsigned workers = 0;
  std::string out;
  std::string format = "csv";
  std::string config;
  std::string save_config;
  std::string sequences_out;
  int max_doublings = 0;
  bool quiet = false;
};

std::string generator_help() {
  std::string names;
  for (const std::string& p : asintest::preset_names()) names += p + ", ";
  return "Generator: " + names + "lcg, flawed or bitfile";
}

void add_generator_flags(CLI::App* app, GeneratorFlags& g, const std::string& flag = "--gen") {
  app->add_option(flag, g.gen, generator_help())->capture_default_str();
  app->add_option("--modulus", g.modulus, "lcg: modulus M (decimal, up to 2^64)");
  app->add_option("--multiplier", g.multiplier, "lcg: multiplier a");
  app->add_option("--increment", g.increment, "lcg: increment c (0 gives an MCG)");
  app->add_option("--window-hi", g.window_hi, "lcg: highest state bit emitted");
  app->add_option("--window-lo", g.window_lo, "lcg: lowest state bit emitted");
  app->add_option("--digits", g.digits, "lcg: binary digits per value for non power-of-two M");
  app->add_option("--inner", g.inner, "flawed: inner generator")->capture_default_str();
  app->add_option("--N", g.block_log2, "flawed: block length 2^N bits")->capture_default_str();
  app->add_option("--tau", g.tau, "flawed: fraction of flawed seeds")->capture_default_str();
  app->add_option("--bitfile", g.bitfile, "bitfile: raw binary input");
}

void add_seed_flags(CLI::App* app, SeedFlags& s) {
  app->add_option("--seeds", s.seed_file, "Seed file, one seed per line");
  app->add_option("--master-seed", s.master_seed,
                  "Derive seeds from this value (default: OS entropy)");
}

OutputFormat parse_format(const std::string& f) {
  return f == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
}

CampaignConfig to_config(const CampaignFlags& f, const std::string& subcommand) {
  if (!f.config.empty()) {
    CampaignConfig c = asintest::load_campaign_config(f.config);
    c.subcommand = subcommand;
    return c;
  }
  CampaignConfig c;
  c.subcommand = subcommand;
  c.generator = f.gen.selection();
  c.test.n = f.n;
  c.test.m = f.m;
  c.test.s = f.s;
  c.test.alpha = f.alpha;
  c.test.mode = asintest::parse_mode(f.mode);
  if (!f.seeds.seed_file.empty()) c.seed_file = f.seeds.seed_file;
  c.master_seed = f.seeds.master_seed;
  c.workers = f.workers;
  c.format = parse_format(f.format);
  if (!f.out.empty()) c.output = f.out;
  c.max_doublings = f.max_doublings;
  return c;
}

void add_campaign_flags(CLI::App* app, CampaignFlags& f) {
  add_generator_flags(app, f.gen);
  add_seed_flags(app, f.seeds);
  app->add_option("--n", f.n, "Sequence length in bits (even)")->capture_default_str();
  app->add_option("--m", f.m, "Number of sequences")->capture_default_str();
  app->add_option("--s", f.s, "Partition parameter (s+1 bins)")->capture_default_str();
  app->add_option("--alpha", f.alpha, "Significance level")->capture_default_str();
  app->add_option("--mode", f.mode, "Binning: direct or pvalue")
      ->check(CLI::IsMember({"direct", "pvalue"}))
      ->capture_default_str();
  app->add_option("--workers", f.workers, "Worker threads (0: all cores)")->capture_default_str();
  app->add_option("--out", f.out, "Write the report here instead of standard output");
  app->add_option("--format", f.format, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--config", f.config, "Load the campaign from a JSON config file");
  app->add_option("--save-config", f.save_config, "Write the effective config as JSON");
  app->add_option("--sequences-out", f.sequences_out, "Write per-sequence S and p-values (CSV)");
  app->add_flag("--quiet", f.quiet, "No progress output");
}

// Prints at every tenth of the work.
asintest::ProgressCallback progress_printer(bool quiet) {
  if (quiet) return {};
  auto mutex = std::make_shared<std::mutex>();
  return [mutex](std::uint64_t done, std::uint64_t total) {
    const std::uint64_t step = total >= 10 ? total / 10 : 1;
    if (done % step != 0 && done != total) return;
    std::lock_guard<std::mutex> lock(*mutex);
    std::fprintf(stderr, "[asintest] %llu/%llu sequences\n",
                 static_cast<unsigned long long>(done), static_cast<unsigned long long>(total));
  };
}

// Writes to --out when given, otherwise standard output.
template <typename Fn>
void with_output(const std::optional<std::filesystem::path>& path, Fn&& fn) {
  if (!path) {
    fn(std::cout);
    std::cout.flush();
    if (!std::cout) throw asintest::IoError("write to standard output failed");
    return;
  }
  std::ofstream file(*path);
  if (!file) throw asintest::IoError("cannot open output file " + path->string());
  fn(file);
  file.flush();
  if (!file) throw asintest::IoError("write failed for " + path->string());
}

std::optional<std::filesystem::path> optional_path(const std::string& p) {
  if (p.empty()) return std::nullopt;
  return std::filesystem::path(p);
}

std::vector<std::uint64_t> resolve_seeds(const SeedFlags& flags, const asintest::GeneratorSpec& spec,
                                         std::uint64_t count) {
  CampaignConfig c;
  c.test.m = count;
  if (!flags.seed_file.empty()) c.seed_file = flags.seed_file;
  c.master_seed = flags.master_seed;
  if (!c.seed_file && !c.master_seed) {
    c.master_seed = asintest::entropy_seed();
    std::fprintf(stderr, "[asintest] master seed %llu\n",
                 static_cast<unsigned long long>(*c.master_seed));
  }
  return asintest::campaign_seeds(c, spec);
}

int cmd_asin_test(const CampaignFlags& flags) {
  const CampaignConfig config = to_config(flags, "asin-test");
  if (!flags.save_config.empty()) asintest::save_campaign_config(config, flags.save_config);
  const asintest::CampaignResult result =
      asintest::run_campaign(config, progress_printer(flags.quiet));
  if (result.master_seed && !flags.quiet) {
    std::fprintf(stderr, "[asintest] master seed %llu\n",
                 static_cast<unsigned long long>(*result.master_seed));
  }
  with_output(config.output, [&](std::ostream& out) {
    asintest::emit_table(out, std::span(&result.report, 1), config.format);
  });
  if (!flags.sequences_out.empty()) {
    with_output(optional_path(flags.sequences_out), [&](std::ostream& out) {
      asintest::write_sequence_csv(out, result.sequences);
    });
  }
  if (!result.report.reliable && !flags.quiet) {
    std::fprintf(stderr,
                 "[asintest] warning: approximation error 2C/n = %.6g exceeds sigma = %.6g; "
                 "m should not exceed %llu at this n\n",
                 result.report.delta, result.report.sigma_lb,
                 static_cast<unsigned long long>(result.report.max_reliable_m));
  }
  return asintest::exit_code_for(result.report);
}

int cmd_adaptive(const CampaignFlags& flags) {
  const CampaignConfig config = to_config(flags, "adaptive");
  if (!flags.save_config.empty()) asintest::save_campaign_config(config, flags.save_config);
  const asintest::AdaptiveOutcome outcome =
      asintest::run_adaptive_campaign(config, progress_printer(flags.quiet));
  with_output(config.output, [&](std::ostream& out) {
    asintest::emit_table(out, outcome.history, config.format);
  });
  if (!flags.quiet) {
    std::fprintf(stderr, "[asintest] adaptive verdict %s after %zu run(s)\n",
                 std::string(asintest::verdict_name(outcome.verdict)).c_str(),
                 outcome.history.size());
  }
  return asintest::exit_code_for(outcome.verdict, outcome.history.back().reliable);
}

struct ReliabilityFlags {
  std::uint64_t n = std::uint64_t{1} << 34;
  std::uint64_t m = 10000;
  int s = 40;
  double alpha = 1e-4;
  std::string format = "csv";
};

int cmd_reliability(const ReliabilityFlags& f) {
  const asintest::Reliability r = asintest::reliability_check(f.n, f.m, f.s);
  const asintest::DevroyeThreshold d = asintest::devroye_threshold(f.m, f.s, f.alpha);
  using asintest::format_real;
  if (f.format == "json") {
    nlohmann::json j = {{"n", f.n},
                        {"m", f.m},
                        {"s", f.s},
                        {"alpha", f.alpha},
                        {"C", r.C},
                        {"bound", r.delta / 2.0},
                        {"delta", r.delta},
                        {"sigma_lb", r.sigma_lb},
                        {"reliable", r.reliable},
                        {"max_reliable_m", r.max_reliable_m},
                        {"tv_epsilon", d.epsilon},
                        {"tv_threshold", d.threshold},
                        {"tv_validity_bound", d.validity_bound},
                        {"tv_condition_ok", d.condition_ok}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "n,m,s,alpha,C,bound,delta,sigma_lb,reliable,max_reliable_m,tv_epsilon,"
                 "tv_threshold,tv_validity_bound,tv_condition_ok\n"
              << f.n << ',' << f.m << ',' << f.s << ',' << format_real(f.alpha) << ','
              << format_real(r.C) << ',' << format_real(r.delta / 2.0) << ','
              << format_real(r.delta) << ',' << format_real(r.sigma_lb) << ','
              << (r.reliable ? "true" : "false") << ',' << r.max_reliable_m << ','
              << format_real(d.epsilon) << ',' << format_real(d.threshold) << ','
              << format_real(d.validity_bound) << ',' << (d.condition_ok ? "true" : "false")
              << '\n';
  }
  return r.reliable ? asintest::kExitPass : asintest::kExitInconclusive;
}

struct FlawedDumpFlags {
  GeneratorFlags gen;
  SeedFlags seeds;
  std::uint64_t count = 10;
  std::string bits_out;
  bool with_bits = false;
};

int cmd_flawed_dump(FlawedDumpFlags f) {
  f.gen.inner = f.gen.gen;
  f.gen.gen = "flawed";
  const asintest::GeneratorSpec spec = asintest::build_generator(f.gen.selection());
  const asintest::FlawedParams& params = *spec.flawed;
  const std::vector<std::uint64_t> seeds = resolve_seeds(f.seeds, spec, f.count);

  std::ofstream raw;
  if (!f.bits_out.empty()) {
    raw.open(f.bits_out, std::ios::binary);
    if (!raw) throw asintest::IoError("cannot open output file " + f.bits_out);
  }
  std::cout << "seed,flawed,above,steps,s_asin" << (f.with_bits ? ",bits" : "") << '\n';
  for (std::uint64_t seed : seeds) {
    const asintest::BitVector block = asintest::flawed_generate(params, seed);
    asintest::WalkAccumulator acc;
    for (std::uint8_t b : block) acc.feed(b);
    const asintest::SojournFraction frac = asintest::s_asin(acc);
    std::cout << seed << ',' << (params.takes_flawed_branch(seed) ? "true" : "false") << ','
              << frac.above << ',' << frac.steps << ',' << asintest::format_real(frac.value());
    if (f.with_bits) {
      std::cout << ',';
      for (std::uint8_t b : block) std::cout << static_cast<char>('0' + b);
    }
    std::cout << '\n';
    if (raw.is_open()) {
      // Pack MSB-first, the layout read back by the bitfile generator.
      for (std::size_t i = 0; i < block.size(); i += 8) {
        unsigned char byte = 0;
        for (std::size_t k = 0; k < 8; ++k) {
          byte = static_cast<unsigned char>(byte << 1);
          if (i + k < block.size()) byte |= block[i + k];
        }
        raw.put(static_cast<char>(byte));
      }
    }
  }
  if (raw.is_open() && !raw.flush()) throw asintest::IoError("write failed for " + f.bits_out);
  if (!std::cout.flush()) throw asintest::IoError("write to standard output failed");
  return asintest::kExitPass;
}

struct TrajectoryFlags {
  GeneratorFlags gen;
  SeedFlags seeds;
  std::uint64_t n = 10000;
  std::uint64_t count = 1;
  std::size_t max_points = asintest::kDefaultTrajectoryPoints;
  std::string out;
};

int cmd_trajectory_dump(const TrajectoryFlags& f) {
  const asintest::GeneratorSpec spec = asintest::build_generator(f.gen.selection());
  const std::vector<std::uint64_t> seeds = resolve_seeds(f.seeds, spec, f.count);
  with_output(optional_path(f.out), [&](std::ostream& out) {
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      asintest::BitStream stream = asintest::open_stream(spec, seeds[j]);
      const asintest::TrajectorySnapshot snap =
          asintest::record_trajectory(stream, f.n, f.max_points);
      asintest::write_trajectory_csv(out, snap, j, j == 0);
    }
  });
  return asintest::kExitPass;
}

struct DyckFlags {
  GeneratorFlags gen;
  SeedFlags seeds;
  std::uint64_t len = 8;
  std::uint64_t count = 1;
  bool reflect = false;
};

int cmd_dyck_sample(const DyckFlags& f) {
  if (f.len == 0 || f.len % 2 != 0) throw CLI::ValidationError("--len", "must be even and positive");
  const asintest::GeneratorSpec spec = asintest::build_generator(f.gen.selection());
  const std::vector<std::uint64_t> seeds = resolve_seeds(f.seeds, spec, f.count);
  for (std::uint64_t seed : seeds) {
    asintest::BitStream stream = asintest::open_stream(spec, seed);
    const asintest::BitVector path = asintest::sample_dyck_path(f.len / 2, stream, f.reflect);
    std::string line(path.size(), '0');
    for (std::size_t i = 0; i < path.size(); ++i) line[i] = static_cast<char>('0' + path[i]);
    std::cout << line << '\n';
  }
  if (!std::cout.flush()) throw asintest::IoError("write to standard output failed");
  return asintest::kExitPass;
}

int report_error(const char* kind, const std::exception& e, int code) {
  std::fprintf(stderr, "asintest: %s: %s\n", kind, e.what());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arcsine-law random walk test for pseudorandom bit generators"};
  app.require_subcommand(1);

  CampaignFlags test_flags;
  CLI::App* test_cmd = app.add_subcommand("asin-test", "Run the second-level arcsine test");
  add_campaign_flags(test_cmd, test_flags);

  CampaignFlags adaptive_flags;
  CLI::App* adaptive_cmd =
      app.add_subcommand("adaptive", "Rerun with doubled n while the p-value is inconclusive");
  add_campaign_flags(adaptive_cmd, adaptive_flags);
  adaptive_cmd->add_option("--max-doublings", adaptive_flags.max_doublings,
                           "Maximum number of doublings of n")
      ->capture_default_str();

  ReliabilityFlags rel_flags;
  CLI::App* rel_cmd = app.add_subcommand("reliability", "Approximation error and the bound on m");
  rel_cmd->add_option("--n", rel_flags.n, "Sequence length in bits (even)")->capture_default_str();
  rel_cmd->add_option("--m", rel_flags.m, "Number of sequences")->capture_default_str();
  rel_cmd->add_option("--s", rel_flags.s, "Partition parameter")->capture_default_str();
  rel_cmd->add_option("--alpha", rel_flags.alpha, "Significance level")->capture_default_str();
  rel_cmd->add_option("--format", rel_flags.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  FlawedDumpFlags flawed_flags;
  flawed_flags.gen.gen = "mt19937_64";
  CLI::App* flawed_cmd = app.add_subcommand("flawed-dump", "Generate blocks of the Flawed generator");
  add_generator_flags(flawed_cmd, flawed_flags.gen, "--rng");
  add_seed_flags(flawed_cmd, flawed_flags.seeds);
  flawed_cmd->add_option("--count", flawed_flags.count, "Number of seeds")->capture_default_str();
  flawed_cmd->add_option("--bits-out", flawed_flags.bits_out, "Write the blocks as raw bytes");
  flawed_cmd->add_flag("--with-bits", flawed_flags.with_bits, "Append the block as a 0/1 column");

  TrajectoryFlags traj_flags;
  CLI::App* traj_cmd = app.add_subcommand("trajectory-dump", "Walk trajectories with envelopes");
  add_generator_flags(traj_cmd, traj_flags.gen);
  add_seed_flags(traj_cmd, traj_flags.seeds);
  traj_cmd->add_option("--n", traj_flags.n, "Steps per trajectory")->capture_default_str();
  traj_cmd->add_option("--count", traj_flags.count, "Number of trajectories")->capture_default_str();
  traj_cmd->add_option("--max-points", traj_flags.max_points, "Points kept per trajectory")
      ->capture_default_str();
  traj_cmd->add_option("--out", traj_flags.out, "Output CSV path");

  DyckFlags dyck_flags;
  CLI::App* dyck_cmd = app.add_subcommand("dyck-sample", "Uniform random Dyck paths");
  add_generator_flags(dyck_cmd, dyck_flags.gen);
  add_seed_flags(dyck_cmd, dyck_flags.seeds);
  dyck_cmd->add_option("--len", dyck_flags.len, "Path length 2n")->capture_default_str();
  dyck_cmd->add_option("--count", dyck_flags.count, "Number of paths")->capture_default_str();
  dyck_cmd->add_flag("--reflect", dyck_flags.reflect, "Reflect below the axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : asintest::kExitUsage;
  }

  try {
    if (test_cmd->parsed()) return cmd_asin_test(test_flags);
    if (adaptive_cmd->parsed()) return cmd_adaptive(adaptive_flags);
    if (rel_cmd->parsed()) return cmd_reliability(rel_flags);
    if (flawed_cmd->parsed()) return cmd_flawed_dump(flawed_flags);
    if (traj_cmd->parsed()) return cmd_trajectory_dump(traj_flags);
    if (dyck_cmd->parsed()) return cmd_dyck_sample(dyck_flags);
  } catch (const CLI::ValidationError& e) {
    return report_error("usage", e, asintest::kExitUsage);
  } catch (const asintest::SeedShortage& e) {
    return report_error("seed shortage", e, asintest::kExitDataError);
  } catch (const asintest::BadSeed& e) {
    return report_error("bad seed", e, asintest::kExitDataError);
  } catch (const asintest::StreamExhausted& e) {
    return report_error("input exhausted", e, asintest::kExitDataError);
  } catch (const asintest::MissingInput& e) {
    return report_error("missing input", e, asintest::kExitNoInput);
  } catch (const asintest::IoError& e) {
    return report_error("i/o error", e, asintest::kExitIoError);
  } catch (const asintest::InvalidGenerator& e) {
    return report_error("invalid generator", e, asintest::kExitUsage);
  } catch (const std::invalid_argument& e) {
    return report_error("invalid argument", e, asintest::kExitUsage);
  } catch (const std::exception& e) {
    return report_error("internal error", e, asintest::kExitSoftware);
  }
  return asintest::kExitUsage;
}
