// Copyright 2026 The rvfusion Authors
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

#include "rvfusion/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "rvfusion/metrics.hpp"
#include "rvfusion/report.hpp"

namespace rvfusion::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;  // unreadable/malformed input, analysis errors
constexpr int kExitUsage = 2;  // bad flags or arguments

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonOpts {
  std::vector<std::string> inputs;
  std::vector<std::string> positional;
  std::string format;  // trace | asm | "" (infer from extension)
  std::string out = "json";
  std::string idioms = "default";
  bool multi_writeback = false;

  std::vector<std::string> all_inputs() const {
    std::vector<std::string> v = inputs;
    v.insert(v.end(), positional.begin(), positional.end());
    return v;
  }
};

void add_trace_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--input", opts.inputs, "Input trace file (repeatable)");
  cmd->add_option("files", opts.positional, "Input trace files");
  cmd->add_option("--format", opts.format, "Input format")
      ->check(CLI::IsMember({"trace", "asm"}));
  cmd->add_flag("--multi-writeback", opts.multi_writeback,
                "Also fuse pairs that retire two writebacks");
  cmd->add_option("--idioms", opts.idioms,
                  "Comma-separated idiom list, or all/none/default");
}

void add_out_option(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out, "Output format")
      ->check(CLI::IsMember({"json", "csv", "md"}));
}

OutputFormat out_format(const CommonOpts& opts) {
  if (opts.out == "csv") return OutputFormat::csv;
  if (opts.out == "md") return OutputFormat::md;
  return OutputFormat::json;
}

FusionConfig make_config(const CommonOpts& opts) {
  FusionConfig config;
  if (opts.idioms == "default") {
    config = FusionConfig::defaults();
  } else if (opts.idioms == "all") {
    config = FusionConfig::all();
  } else if (opts.idioms == "none") {
    config = FusionConfig::none();
  } else {
    std::vector<IdiomKind> kinds;
    std::string_view rest = opts.idioms;
    while (true) {
      size_t comma = rest.find(',');
      std::string_view name = rest.substr(0, comma);
      auto kind = idiom_from_name(name);
      if (!kind) throw UsageError("unknown idiom '" + std::string(name) + "'");
      kinds.push_back(*kind);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    config = FusionConfig::with(kinds);
  }
  config.allow_multi_writeback = opts.multi_writeback;
  return config;
}

std::vector<WeightedInstruction> load_items(const CommonOpts& opts) {
  std::vector<std::string> paths = opts.all_inputs();
  if (paths.empty()) throw UsageError("no input files given");
  std::vector<WeightedInstruction> merged;
  for (const std::string& path : paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    bool as_asm = opts.format == "asm" ||
                  (opts.format.empty() && path.size() > 4 &&
                   path.compare(path.size() - 4, 4, ".asm") == 0);
    std::vector<WeightedInstruction> items =
        as_asm ? parse_asm_trace(in) : parse_trace(in);
    merged.insert(merged.end(), items.begin(), items.end());
  }
  std::sort(merged.begin(), merged.end(),
            [](const WeightedInstruction& a, const WeightedInstruction& b) {
              return a.pc < b.pc;
            });
  for (size_t i = 1; i < merged.size(); ++i)
    if (merged[i].pc == merged[i - 1].pc)
      throw std::runtime_error("duplicate pc across input files");
  return merged;
}

IsaCountTable load_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MetricsError("cannot open " + path);
  return parse_isa_counts(in);
}

int do_run(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"RISC-V instruction-stream fusion analyzer"};
  app.name("rvfusion");
  app.require_subcommand(1);

  CommonOpts opts;
  std::string counts_path;
  std::string baseline = "x86-64";
  size_t top_n = 100;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Fusion statistics and effective instruction counts");
  add_trace_options(analyze, opts);
  add_out_option(analyze, opts);
  analyze->add_option("--counts", counts_path,
                      "benchmark,isa,count CSV for the cross-ISA table");
  analyze->add_option("--baseline", baseline, "Baseline ISA for ratios");
  analyze->add_option("--top", top_n, "CDF depth kept in the report")
      ->check(CLI::PositiveNumber);

  CLI::App* nearmiss = app.add_subcommand(
      "nearmiss", "Pairs recoverable by register renaming");
  add_trace_options(nearmiss, opts);
  add_out_option(nearmiss, opts);

  CLI::App* compare =
      app.add_subcommand("compare", "Normalized cross-ISA count table");
  compare->add_option("--counts", counts_path, "benchmark,isa,count CSV")
      ->required();
  compare->add_option("--baseline", baseline, "Baseline ISA for ratios");
  add_out_option(compare, opts);

  CLI::App* cdf_cmd = app.add_subcommand(
      "cdf", "Cumulative execution coverage of hottest instructions");
  add_trace_options(cdf_cmd, opts);
  add_out_option(cdf_cmd, opts);
  cdf_cmd->add_option("--top", top_n, "Number of ranks to emit")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  OutputFormat fmt = out_format(opts);
  if (analyze->parsed()) {
    FusionConfig config = make_config(opts);
    std::vector<WeightedInstruction> items = load_items(opts);
    std::optional<IsaCountTable> table;
    if (!counts_path.empty()) table = load_counts(counts_path);
    MetricsReport report =
        build_report(items, config, top_n, table, baseline);
    out << render_analyze(report, fmt);
  } else if (nearmiss->parsed()) {
    FusionConfig config = make_config(opts);
    std::vector<WeightedInstruction> items = load_items(opts);
    std::vector<NearMissRow> rows;
    for (const Block& block : segment_blocks(items)) {
      for (const NearMiss& nm : near_misses(block, config)) {
        rows.push_back(NearMissRow{block.items[nm.start].pc, nm.kind,
                                   nm.blocking_register, nm.suggested_rename,
                                   nm.weight});
      }
    }
    out << render_nearmiss(rows, dynamic_count(items), fmt);
  } else if (compare->parsed()) {
    IsaCountTable table = load_counts(counts_path);
    out << render_compare(make_comparison(table, baseline), fmt);
  } else if (cdf_cmd->parsed()) {
    std::vector<WeightedInstruction> items = load_items(opts);
    if (items.empty()) throw MetricsError("empty trace");
    out << render_cdf(cdf(items, top_n), fmt);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return do_run(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace rvfusion::cli
