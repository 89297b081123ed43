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

#include "rvfusion/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace rvfusion {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(uint8_t(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(uint8_t(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

uint64_t dynamic_count(const std::vector<WeightedInstruction>& items) {
  uint64_t total = 0;
  for (const WeightedInstruction& wi : items) total += wi.count;
  return total;
}

uint64_t dynamic_bytes(const std::vector<WeightedInstruction>& items) {
  uint64_t bytes = 0;
  for (const WeightedInstruction& wi : items)
    bytes += wi.count * wi.ins.encoded_length;
  return bytes;
}

uint64_t effective_count(uint64_t total,
                         const std::vector<FusionMatch>& matches) {
  uint64_t removed = 0;
  for (const FusionMatch& m : matches)
    removed += m.weight * uint64_t(m.arity - 1);
  if (removed > total)
    throw MetricsError("fusion removes more instructions than exist");
  return total - removed;
}

std::vector<CdfPoint> cdf(const std::vector<WeightedInstruction>& items,
                          size_t top_n) {
  if (items.empty()) return {};
  std::vector<WeightedInstruction> sorted = items;
  std::sort(sorted.begin(), sorted.end(),
            [](const WeightedInstruction& a, const WeightedInstruction& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.pc < b.pc;
            });
  double total = double(dynamic_count(items));
  std::vector<CdfPoint> points;
  points.reserve(top_n);
  uint64_t running = 0;
  for (size_t rank = 1; rank <= top_n; ++rank) {
    if (rank <= sorted.size()) running += sorted[rank - 1].count;
    points.push_back({rank, double(running) / total});
  }
  return points;
}

std::vector<std::string> IsaCountTable::benchmarks() const {
  std::vector<std::string> names;
  names.reserve(counts.size());
  for (const auto& [b, _] : counts) names.push_back(b);
  return names;  // map iteration is already sorted
}

IsaCountTable parse_isa_counts(std::istream& in) {
  IsaCountTable table;
  std::string raw_line;
  size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, raw_line)) {
    ++lineno;
    std::string_view line = trim(raw_line);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "benchmark,isa,count")
        throw MetricsError("line " + std::to_string(lineno) +
                           ": expected header benchmark,isa,count");
      header_seen = true;
      continue;
    }
    size_t c1 = line.find(',');
    size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos ||
        line.find(',', c2 + 1) != std::string_view::npos)
      throw MetricsError("line " + std::to_string(lineno) +
                         ": expected benchmark,isa,count");
    std::string bench(trim(line.substr(0, c1)));
    std::string isa(trim(line.substr(c1 + 1, c2 - c1 - 1)));
    std::string_view value = trim(line.substr(c2 + 1));
    if (bench.empty() || isa.empty())
      throw MetricsError("line " + std::to_string(lineno) + ": empty field");
    double count = 0;
    auto [p, ec] = std::from_chars(value.begin(), value.end(), count);
    if (ec != std::errc() || p != value.end() || !(count > 0))
      throw MetricsError("line " + std::to_string(lineno) +
                         ": count must be a positive number");
    auto [it, inserted] = table.counts[bench].emplace(isa, count);
    if (!inserted)
      throw MetricsError("line " + std::to_string(lineno) + ": duplicate " +
                         bench + "/" + isa);
    if (std::find(table.isa_order.begin(), table.isa_order.end(), isa) ==
        table.isa_order.end())
      table.isa_order.push_back(isa);
  }
  if (!header_seen) throw MetricsError("empty count table");
  return table;
}

std::map<std::string, std::map<std::string, double>> normalize(
    const IsaCountTable& table, const std::string& baseline) {
  std::map<std::string, std::map<std::string, double>> ratios;
  for (const auto& [bench, row] : table.counts) {
    auto base = row.find(baseline);
    if (base == row.end())
      throw MetricsError("benchmark " + bench + " has no " + baseline +
                         " count");
    for (const auto& [isa, count] : row)
      ratios[bench][isa] = count / base->second;
  }
  return ratios;
}

double geomean(const std::vector<double>& values) {
  if (values.empty()) throw MetricsError("geomean of nothing");
  double log_sum = 0;
  for (double v : values) {
    if (!(v > 0)) throw MetricsError("geomean requires positive values");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / double(values.size()));
}

double armv8_uop_adjust(const Armv8MemShares& shares) {
  return shares.ldia + shares.ldp + 2.0 * shares.ldpia;
}

MetricsReport::Comparison make_comparison(const IsaCountTable& table,
                                          const std::string& baseline) {
  MetricsReport::Comparison cmp;
  cmp.baseline = baseline;
  cmp.benchmarks = table.benchmarks();
  cmp.isas = table.isa_order;
  cmp.ratios = normalize(table, baseline);
  for (const std::string& isa : cmp.isas) {
    std::vector<double> per_bench;
    for (const std::string& b : cmp.benchmarks) {
      const auto& row = cmp.ratios.at(b);
      auto it = row.find(isa);
      if (it != row.end()) per_bench.push_back(it->second);
    }
    if (!per_bench.empty()) cmp.geomeans[isa] = geomean(per_bench);
  }
  return cmp;
}

MetricsReport build_report(const std::vector<WeightedInstruction>& items,
                           const FusionConfig& config, size_t top_n,
                           const std::optional<IsaCountTable>& table,
                           const std::string& baseline) {
  if (items.empty()) throw MetricsError("empty trace");
  MetricsReport report;
  report.fusion = fusion_stats(segment_blocks(items), config);
  report.total_count = report.fusion.total;
  report.total_bytes = dynamic_bytes(items);
  report.bytes_per_instruction =
      double(report.total_bytes) / double(report.total_count);
  report.effective = report.fusion.effective;
  report.macro_op_ratio = report.fusion.ratio;
  report.cdf_points = cdf(items, top_n);
  if (table) report.comparison = make_comparison(*table, baseline);
  return report;
}

}  // namespace rvfusion
