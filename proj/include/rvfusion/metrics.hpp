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

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvfusion/fusion.hpp"
#include "rvfusion/trace.hpp"

namespace rvfusion {

class MetricsError : public std::runtime_error {
 public:
  explicit MetricsError(const std::string& what) : std::runtime_error(what) {}
};

/// Σ count over all items.
uint64_t dynamic_count(const std::vector<WeightedInstruction>& items);

/// Σ count × encoded_length: dynamic instruction-stream footprint in bytes.
uint64_t dynamic_bytes(const std::vector<WeightedInstruction>& items);

/// Dynamic count after fusion: total − Σ weight·(arity−1) over matches.
/// Errors if the matches would remove more than the total (they cannot, for
/// matches produced by select_fusions on the same items).
uint64_t effective_count(uint64_t total, const std::vector<FusionMatch>& matches);

struct CdfPoint {
  size_t rank = 0;           // 1-based
  double cumulative = 0.0;   // fraction of total dynamic count
};

/// Execution-coverage CDF: items sorted by count descending (pc ascending
/// on ties), running-sum fractions for ranks 1..top_n. With fewer distinct
/// items than top_n the tail repeats the final cumulative value; an empty
/// item list yields an empty sequence.
std::vector<CdfPoint> cdf(const std::vector<WeightedInstruction>& items,
                          size_t top_n);

/// Per-benchmark dynamic instruction counts across ISAs, keyed
/// [benchmark][isa]. Parsed from "benchmark,isa,count" CSV.
struct IsaCountTable {
  std::map<std::string, std::map<std::string, double>> counts;
  std::vector<std::string> isa_order;  // first-appearance order in the CSV

  /// Benchmarks in sorted order.
  std::vector<std::string> benchmarks() const;
};

IsaCountTable parse_isa_counts(std::istream& in);

/// ratio[b][isa] = count(b,isa) / count(b,baseline). Errors if any
/// benchmark in the table lacks a baseline entry.
std::map<std::string, std::map<std::string, double>> normalize(
    const IsaCountTable& table, const std::string& baseline);

/// Geometric mean, computed in the log domain. Errors on empty input or
/// any value ≤ 0.
double geomean(const std::vector<double>& values);

/// Dynamic shares (percent of all instructions) of ARMv8 memory ops that
/// crack into two micro-ops on a typical decoder: writeback addressing
/// modes and pair ops. ld/st cover the plain single-µop forms for context.
struct Armv8MemShares {
  double ld = 0, ldia = 0, ldp = 0, ldpia = 0;
  double st = 0, stia = 0, stp = 0, stpia = 0;
};

/// Extra micro-ops, as a percent of instruction count, a µop-expanding
/// decoder adds: one each for writeback loads and load pairs, two for
/// writeback load pairs (ldia + ldp + 2·ldpia).
double armv8_uop_adjust(const Armv8MemShares& shares);

struct MetricsReport {
  uint64_t total_count = 0;
  uint64_t total_bytes = 0;
  double bytes_per_instruction = 0;
  uint64_t effective = 0;
  double macro_op_ratio = 1.0;
  FusionStats fusion;
  std::vector<CdfPoint> cdf_points;

  struct Comparison {
    std::string baseline;
    std::vector<std::string> benchmarks;          // sorted
    std::vector<std::string> isas;                // CSV first-appearance order
    std::map<std::string, std::map<std::string, double>> ratios;
    std::map<std::string, double> geomeans;       // per isa
  };
  std::optional<Comparison> comparison;
};

/// Normalized ratios plus per-ISA geomeans for a parsed count table.
/// A benchmark that lacks some (non-baseline) ISA is simply skipped in that
/// ISA's geomean.
MetricsReport::Comparison make_comparison(const IsaCountTable& table,
                                          const std::string& baseline);

/// One-stop analysis: counts, bytes, fusion stats, CDF, and (when a count
/// table is supplied) the cross-ISA comparison. Errors on an empty trace.
MetricsReport build_report(const std::vector<WeightedInstruction>& items,
                           const FusionConfig& config, size_t top_n,
                           const std::optional<IsaCountTable>& table = {},
                           const std::string& baseline = "x86-64");

}  // namespace rvfusion
