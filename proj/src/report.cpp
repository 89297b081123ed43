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

#include "rvfusion/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace rvfusion {

namespace {

using nlohmann::json;

// Comparison-table values round to two decimals; everything else carries six.
constexpr int kTablePlaces = 2;
constexpr int kValuePlaces = 6;

std::string hex_pc(uint64_t pc) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llx", (unsigned long long)pc);
  return buf;
}

// Parsing the fixed string back keeps JSON numbers byte-identical to the
// text formats.
double fixed_value(double v, int places) {
  return std::stod(format_fixed(v, places));
}

json comparison_json(const MetricsReport::Comparison& cmp) {
  json ratios = json::object();
  for (const std::string& b : cmp.benchmarks) {
    json row = json::object();
    for (const std::string& isa : cmp.isas) {
      auto it = cmp.ratios.at(b).find(isa);
      if (it != cmp.ratios.at(b).end())
        row[isa] = fixed_value(it->second, kTablePlaces);
    }
    ratios[b] = std::move(row);
  }
  json geomeans = json::object();
  for (const auto& [isa, g] : cmp.geomeans)
    geomeans[isa] = fixed_value(g, kTablePlaces);
  return json{{"baseline", cmp.baseline},
              {"isas", cmp.isas},
              {"benchmarks", cmp.benchmarks},
              {"ratios", std::move(ratios)},
              {"geomean", std::move(geomeans)}};
}

void comparison_csv(std::ostream& os, const MetricsReport::Comparison& cmp) {
  os << "benchmark";
  for (const std::string& isa : cmp.isas) os << ',' << isa;
  os << '\n';
  for (const std::string& b : cmp.benchmarks) {
    os << b;
    for (const std::string& isa : cmp.isas) {
      os << ',';
      auto it = cmp.ratios.at(b).find(isa);
      if (it != cmp.ratios.at(b).end())
        os << format_fixed(it->second, kTablePlaces);
    }
    os << '\n';
  }
  os << "geomean";
  for (const std::string& isa : cmp.isas) {
    os << ',';
    auto it = cmp.geomeans.find(isa);
    if (it != cmp.geomeans.end()) os << format_fixed(it->second, kTablePlaces);
  }
  os << '\n';
}

void comparison_md(std::ostream& os, const MetricsReport::Comparison& cmp) {
  os << "| benchmark |";
  for (const std::string& isa : cmp.isas) os << ' ' << isa << " |";
  os << "\n|---|";
  for (size_t i = 0; i < cmp.isas.size(); ++i) os << "---|";
  os << '\n';
  for (const std::string& b : cmp.benchmarks) {
    os << "| " << b << " |";
    for (const std::string& isa : cmp.isas) {
      auto it = cmp.ratios.at(b).find(isa);
      os << ' '
         << (it != cmp.ratios.at(b).end()
                 ? format_fixed(it->second, kTablePlaces)
                 : std::string())
         << " |";
    }
    os << '\n';
  }
  os << "| **geomean** |";
  for (const std::string& isa : cmp.isas) {
    auto it = cmp.geomeans.find(isa);
    os << ' '
       << (it != cmp.geomeans.end() ? format_fixed(it->second, kTablePlaces)
                                    : std::string())
       << " |";
  }
  os << '\n';
}

}  // namespace

std::string format_fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  std::string s = buf;
  // Avoid the IEEE negative-zero rendering so equal values print equally.
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

std::string render_analyze(const MetricsReport& report, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::json: {
      json idioms = json::array();
      for (const auto& [kind, row] : report.fusion.per_idiom) {
        idioms.push_back(
            {{"idiom", std::string(idiom_name(kind))},
             {"groups", row.groups},
             {"removed", row.removed},
             {"reduction_pct", fixed_value(row.reduction_pct, kValuePlaces)}});
      }
      json j{{"command", "analyze"},
             {"total_instructions", report.total_count},
             {"total_bytes", report.total_bytes},
             {"bytes_per_instruction",
              fixed_value(report.bytes_per_instruction, kValuePlaces)},
             {"effective_instructions", report.effective},
             {"macro_op_ratio",
              fixed_value(report.macro_op_ratio, kValuePlaces)},
             {"idioms", std::move(idioms)}};
      if (report.comparison) j["comparison"] = comparison_json(*report.comparison);
      return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
      std::ostringstream os;
      os << "metric,value\n";
      os << "total_instructions," << report.total_count << '\n';
      os << "total_bytes," << report.total_bytes << '\n';
      os << "bytes_per_instruction,"
         << format_fixed(report.bytes_per_instruction, kValuePlaces) << '\n';
      os << "effective_instructions," << report.effective << '\n';
      os << "macro_op_ratio,"
         << format_fixed(report.macro_op_ratio, kValuePlaces) << '\n';
      os << "\nidiom,groups,removed,reduction_pct\n";
      for (const auto& [kind, row] : report.fusion.per_idiom) {
        os << idiom_name(kind) << ',' << row.groups << ',' << row.removed
           << ',' << format_fixed(row.reduction_pct, kValuePlaces) << '\n';
      }
      if (report.comparison) {
        os << '\n';
        comparison_csv(os, *report.comparison);
      }
      return os.str();
    }
    case OutputFormat::md: {
      std::ostringstream os;
      os << "# Instruction stream analysis\n\n";
      os << "| metric | value |\n|---|---|\n";
      os << "| total instructions | " << report.total_count << " |\n";
      os << "| total bytes | " << report.total_bytes << " |\n";
      os << "| bytes per instruction | "
         << format_fixed(report.bytes_per_instruction, kValuePlaces) << " |\n";
      os << "| effective instructions | " << report.effective << " |\n";
      os << "| macro-op ratio | "
         << format_fixed(report.macro_op_ratio, kValuePlaces) << " |\n";
      os << "\n## Fusion by idiom\n\n";
      os << "| idiom | groups | removed | reduction % |\n|---|---|---|---|\n";
      for (const auto& [kind, row] : report.fusion.per_idiom) {
        os << "| " << idiom_name(kind) << " | " << row.groups << " | "
           << row.removed << " | "
           << format_fixed(row.reduction_pct, kValuePlaces) << " |\n";
      }
      if (report.comparison) {
        os << "\n## Normalized counts (baseline: "
           << report.comparison->baseline << ")\n\n";
        comparison_md(os, *report.comparison);
      }
      return os.str();
    }
  }
  return {};
}

std::string render_nearmiss(const std::vector<NearMissRow>& rows,
                            uint64_t total_count, OutputFormat fmt) {
  uint64_t recoverable = 0;
  for (const NearMissRow& r : rows) recoverable += r.weight;
  double pct =
      total_count ? double(recoverable) / double(total_count) * 100.0 : 0.0;

  switch (fmt) {
    case OutputFormat::json: {
      json list = json::array();
      for (const NearMissRow& r : rows) {
        list.push_back({{"pc", hex_pc(r.pc)},
                        {"idiom", std::string(idiom_name(r.kind))},
                        {"blocking_register",
                         std::string(reg_name(r.blocking_register))},
                        {"suggested_rename",
                         std::string(reg_name(r.suggested_rename))},
                        {"weight", r.weight}});
      }
      json j{{"command", "nearmiss"},
             {"total_instructions", total_count},
             {"near_misses", std::move(list)},
             {"recoverable_reduction_pct", fixed_value(pct, kValuePlaces)}};
      return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
      std::ostringstream os;
      os << "pc,idiom,blocking_register,suggested_rename,weight\n";
      for (const NearMissRow& r : rows) {
        os << hex_pc(r.pc) << ',' << idiom_name(r.kind) << ','
           << reg_name(r.blocking_register) << ','
           << reg_name(r.suggested_rename) << ',' << r.weight << '\n';
      }
      os << "\nrecoverable_reduction_pct," << format_fixed(pct, kValuePlaces)
         << '\n';
      return os.str();
    }
    case OutputFormat::md: {
      std::ostringstream os;
      os << "# Near-miss fusion pairs\n\n";
      if (rows.empty()) {
        os << "No near misses.\n";
      } else {
        os << "| pc | idiom | blocked by | rename |\n|---|---|---|---|\n";
        for (const NearMissRow& r : rows) {
          os << "| " << hex_pc(r.pc) << " | " << idiom_name(r.kind) << " | "
             << reg_name(r.blocking_register) << " | "
             << reg_name(r.suggested_rename) << " -> "
             << reg_name(r.blocking_register) << " (weight " << r.weight
             << ") |\n";
        }
      }
      os << "\nRecoverable reduction: " << format_fixed(pct, kValuePlaces)
         << "%\n";
      return os.str();
    }
  }
  return {};
}

std::string render_compare(const MetricsReport::Comparison& cmp,
                           OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::json: {
      json j = comparison_json(cmp);
      j["command"] = "compare";
      return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
      std::ostringstream os;
      comparison_csv(os, cmp);
      return os.str();
    }
    case OutputFormat::md: {
      std::ostringstream os;
      os << "# Dynamic instruction counts relative to " << cmp.baseline
         << "\n\n";
      comparison_md(os, cmp);
      return os.str();
    }
  }
  return {};
}

std::string render_cdf(const std::vector<CdfPoint>& points, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::json: {
      json list = json::array();
      for (const CdfPoint& p : points)
        list.push_back(
            {{"rank", p.rank},
             {"cumulative_fraction", fixed_value(p.cumulative, kValuePlaces)}});
      json j{{"command", "cdf"}, {"points", std::move(list)}};
      return j.dump(2) + "\n";
    }
    case OutputFormat::csv: {
      std::ostringstream os;
      os << "rank,cumulative_fraction\n";
      for (const CdfPoint& p : points)
        os << p.rank << ',' << format_fixed(p.cumulative, kValuePlaces)
           << '\n';
      return os.str();
    }
    case OutputFormat::md: {
      std::ostringstream os;
      os << "# Execution coverage by static instruction\n\n";
      os << "| rank | cumulative fraction |\n|---|---|\n";
      for (const CdfPoint& p : points)
        os << "| " << p.rank << " | " << format_fixed(p.cumulative, kValuePlaces)
           << " |\n";
      return os.str();
    }
  }
  return {};
}

}  // namespace rvfusion
