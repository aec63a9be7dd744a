// Copyright 2026 The divconst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "divconst/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "divconst/bench.hpp"
#include "divconst/census.hpp"
#include "divconst/costmodel.hpp"
#include "divconst/emitter.hpp"
#include "divconst/error.hpp"
#include "divconst/evaluator.hpp"
#include "divconst/lowering.hpp"
#include "divconst/magic.hpp"

namespace divconst::cli {
namespace {

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string seconds(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

unsigned default_jobs() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Parsed flag values shared by the subcommand handlers.
struct Options {
  std::string d;
  unsigned width = 32;
  std::string variant;
  bool exhaustive = false;
  bool full = false;
  std::string sample;
  std::string seed = "1";
  unsigned jobs = default_jobs();
  bool lines = false;
  std::string table;
  std::string target;
  std::string name;
  std::string output;
  std::string divisors = "7,19,107";
  std::string n;
  unsigned repeat = 10;
  std::string variants = "gm,wide";
};

int cmd_magic(const Options& o, std::ostream& out) {
  const Width width(o.width);
  const std::uint64_t d = parse_uint(o.d);
  const DivisorCase kind = classify(d, width);
  out << "d=" << d << " width=" << width.bits();
  if (kind != DivisorCase::identity && kind != DivisorCase::power_of_two) {
    const MagicResult m = compute_magic(d, width);
    out << " c=" << hex(m.c) << " a=" << m.a << " c_bits=" << m.c_bits;
  }
  out << " case=" << case_label(kind, width) << "\n";
  return kSuccess;
}

int cmd_lower(const Options& o, std::ostream& out) {
  const Width width(o.width);
  const std::uint64_t d = parse_uint(o.d);
  const VariantRequest req = parse_variant_request(o.variant.empty() ? "auto" : o.variant);
  for (const Strategy& s : lower(d, width, req)) {
    out << "d=" << d << " width=" << width.bits()
        << " variant=" << strategy_name(s);
    const std::string params = describe(s);
    if (!params.empty()) out << " " << params;
    out << " seq=" << to_instr_seq(s).to_string() << "\n";
  }
  return kSuccess;
}

void print_report(const VerifyReport& r, std::ostream& out) {
  const char* mode = std::holds_alternative<ExhaustiveDomain>(r.domain) ? "exhaustive"
                     : std::holds_alternative<RangeDomain>(r.domain)    ? "range"
                                                                        : "sample";
  out << "d=" << r.d << " width=" << r.width.bits() << " variant=" << r.variant
      << " mode=" << mode;
  if (const auto* s = std::get_if<SampleDomain>(&r.domain)) {
    out << " seed=" << s->seed;
  }
  out << " mismatches=" << r.mismatches << " domain=" << r.tested;
  if (r.first) {
    out << " first_x=" << r.first->x << " got=" << r.first->got
        << " expected=" << r.first->expected;
  }
  out << "\n";
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Width width(o.width);
  const std::uint64_t d = parse_uint(o.d);
  const VariantRequest req = parse_variant_request(o.variant.empty() ? "auto" : o.variant);
  Domain domain = ExhaustiveDomain{};
  if (!o.sample.empty()) {
    domain = SampleDomain{parse_uint(o.sample), parse_uint(o.seed)};
  } else if (!o.exhaustive && width.bits() == 32) {
    domain = SampleDomain{1'000'000, parse_uint(o.seed)};
  }
  bool ok = true;
  for (const VerifyReport& r : verify(d, width, req, domain, o.jobs)) {
    print_report(r, out);
    ok = ok && r.ok();
  }
  return ok ? kSuccess : kVerifyMismatch;
}

int cmd_verify_all(const Options& o, std::ostream& out) {
  const Width width(o.width);
  std::uint64_t strategies = 0;
  std::uint64_t pairs = 0;
  std::uint64_t mismatches = 0;
  for (std::uint64_t d = 1; d <= width.max(); ++d) {
    for (const VerifyReport& r :
         verify(d, width, VariantRequest::all, ExhaustiveDomain{}, o.jobs)) {
      ++strategies;
      pairs += r.tested;
      mismatches += r.mismatches;
      if (!r.ok()) print_report(r, out);
    }
  }
  out << "width=" << width.bits() << " divisors=" << width.max()
      << " strategies=" << strategies << " pairs=" << pairs
      << " mismatches=" << mismatches << "\n";
  return mismatches == 0 ? kSuccess : kVerifyMismatch;
}

int cmd_census(const Options& o, std::ostream& out) {
  const Width width(o.width);
  CensusDomain domain = CensusFull{};
  if (!o.sample.empty()) {
    domain = CensusSample{parse_uint(o.sample), parse_uint(o.seed)};
  } else if (!o.full && width.bits() == 32) {
    domain = CensusSample{1'000'000, parse_uint(o.seed)};
  }
  const CensusReport report = run_census(width, domain, o.jobs);
  out << (o.lines ? format_census_lines(report) : format_census_text(report));
  return kSuccess;
}

int cmd_cost(const Options& o, std::ostream& out) {
  const Width width(o.width);
  const std::uint64_t d = parse_uint(o.d);
  const CostTable table =
      o.table.empty() ? CostTable::skylake_x() : load_cost_table(o.table);
  const VariantRequest req = parse_variant_request(o.variant.empty() ? "all" : o.variant);
  for (const Strategy& s : lower(d, width, req)) {
    const CostEstimate e = estimate(to_instr_seq(s), table);
    out << "variant=" << strategy_name(s) << " latency=" << num(e.latency)
        << " tput=" << num(e.throughput) << " inloop=" << e.in_loop << "\n";
  }
  return kSuccess;
}

int cmd_emit(const Options& o, std::ostream& out) {
  const Width width(o.width);
  const std::uint64_t d = parse_uint(o.d);
  const EmitTarget target = parse_emit_target(o.target);
  const VariantRequest req = parse_variant_request(o.variant.empty() ? "auto" : o.variant);
  const std::string name = o.name.empty() ? "udiv" + std::to_string(d) : o.name;
  std::string text;
  for (const Strategy& s : lower(d, width, req)) {
    if (!text.empty()) text += "\n";
    const std::string sym =
        req == VariantRequest::all ? name + "_" + std::string(strategy_name(s)) : name;
    text += emit(s, target, sym, width);
  }
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!(file << text)) {
      throw Error(Errc::parse_error, "cannot write " + o.output);
    }
  }
  return kSuccess;
}

int cmd_bench(const Options& o, std::ostream& out) {
  BenchConfig config;
  config.divisors.clear();
  for (const std::string& item : split_list(o.divisors)) {
    const std::uint64_t d = parse_uint(item);
    if (d > 0xffffffffu) {
      throw Error(Errc::out_of_range, "bench divisor " + item + " exceeds 32 bits");
    }
    config.divisors.push_back(static_cast<std::uint32_t>(d));
  }
  if (!o.n.empty()) config.n = parse_uint(o.n);
  config.repeat = o.repeat;
  config.variants.clear();
  for (const std::string& item : split_list(o.variants)) {
    config.variants.push_back(parse_bench_variant(item));
  }

  const BenchResult result = run_bench(config);
  for (const DivisorBench& run : result.runs) {
    for (const VariantTiming& t : run.timings) {
      out << "d=" << run.d << " variant=" << bench_variant_name(t.variant)
          << " n=" << config.n << " repeat=" << config.repeat
          << " mean=" << seconds(t.mean) << " stddev=" << seconds(t.stddev)
          << " checksum=" << t.checksum
          << " constants=" << (run.compile_time_constants ? "static" : "runtime")
          << "\n";
    }
  }
  for (BenchVariant v : config.variants) {
    out << "total variant=" << bench_variant_name(v)
        << " mean=" << seconds(result.total_mean(v));
    if (auto ratio = result.ratio_vs_gm(v)) {
      out << " ratio_vs_gm=" << num(*ratio) << " speedup_vs_gm=" << num(1.0 / *ratio);
    }
    out << "\n";
  }
  return kSuccess;
}

}  // namespace

std::uint64_t parse_uint(const std::string& text) {
  std::string_view digits = text;
  int base = 10;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    digits.remove_prefix(2);
    base = 16;
  }
  std::uint64_t value = 0;
  const char* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value, base);
  if (digits.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::parse_error, "invalid unsigned integer '" + text + "'");
  }
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magic-number lowering for unsigned division by constants", "divconst"};
  app.require_subcommand(1);
  Options o;

  auto add_width = [&o](CLI::App* sub) {
    sub->add_option("--width", o.width, "dividend width in bits (8, 16, 32)");
  };
  auto add_divisor = [&o](CLI::App* sub) {
    sub->add_option("d", o.d, "divisor (decimal or 0x-hex)")->required();
  };
  auto add_jobs = [&o](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "worker threads");
  };
  auto add_sampling = [&o](CLI::App* sub, const char* all_flag, bool& all_target,
                           const char* all_help) {
    auto* all = sub->add_flag(all_flag, all_target, all_help);
    auto* sample = sub->add_option("--sample", o.sample, "sample size");
    sub->add_option("--seed", o.seed, "sample seed");
    all->excludes(sample);
    return all;
  };

  auto* magic = app.add_subcommand("magic", "print the minimal magic constant");
  add_divisor(magic);
  add_width(magic);

  auto* lower_cmd = app.add_subcommand("lower", "print lowered strategies");
  add_divisor(lower_cmd);
  add_width(lower_cmd);
  lower_cmd->add_option("--variant", o.variant, "auto|gm|wide|naive|all");

  auto* verify_cmd = app.add_subcommand("verify", "check strategies against division");
  add_divisor(verify_cmd);
  add_width(verify_cmd);
  verify_cmd->add_option("--variant", o.variant, "auto|gm|wide|naive|all");
  add_sampling(verify_cmd, "--exhaustive", o.exhaustive, "test every dividend");
  add_jobs(verify_cmd);

  auto* verify_all = app.add_subcommand("verify-all",
                                        "exhaustively check every divisor and variant");
  add_width(verify_all);
  add_jobs(verify_all);

  auto* census = app.add_subcommand("census", "count divisors needing a w+1-bit multiplier");
  add_width(census);
  add_sampling(census, "--full", o.full, "every divisor in [2, 2^(w-1)-1]");
  add_jobs(census);
  census->add_flag("--lines", o.lines, "class=<name> count=<n> fraction=<f> output");

  auto* cost = app.add_subcommand("cost", "estimate latency and throughput");
  add_divisor(cost);
  add_width(cost);
  cost->add_option("--table", o.table, "cost table file");
  cost->add_option("--variant", o.variant, "auto|gm|wide|naive|all (default all)");

  auto* emit_cmd = app.add_subcommand("emit", "emit C or assembly");
  add_divisor(emit_cmd);
  add_width(emit_cmd);
  emit_cmd->add_option("--target", o.target, "c|x86-64|aarch64")->required();
  emit_cmd->add_option("--variant", o.variant, "auto|gm|wide|naive|all");
  emit_cmd->add_option("--name", o.name, "function symbol (default udiv<d>)");
  emit_cmd->add_option("-o,--output", o.output, "write to file instead of stdout");

  auto* bench = app.add_subcommand("bench", "time native gm/wide/naive loops");
  bench->add_option("--divisors", o.divisors, "comma-separated divisors");
  bench->add_option("--n", o.n, "dividends per loop, x in [0, n)");
  bench->add_option("--repeat", o.repeat, "measurements per variant");
  bench->add_option("--variants", o.variants, "comma-separated gm,wide,naive");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (magic->parsed()) return cmd_magic(o, out);
    if (lower_cmd->parsed()) return cmd_lower(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (verify_all->parsed()) return cmd_verify_all(o, out);
    if (census->parsed()) return cmd_census(o, out);
    if (cost->parsed()) return cmd_cost(o, out);
    if (emit_cmd->parsed()) return cmd_emit(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
  } catch (const Error& e) {
    err << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    return e.code() == Errc::bench_checksum ? kBenchChecksum : kUsage;
  }
  return kUsage;
}

}  // namespace divconst::cli
