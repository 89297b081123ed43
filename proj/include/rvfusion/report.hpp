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

#include <string>
#include <vector>

#include "rvfusion/fusion.hpp"
#include "rvfusion/metrics.hpp"

namespace rvfusion {

enum class OutputFormat { json, csv, md };

/// A near miss resolved to its pc and register names, ready to print.
struct NearMissRow {
  uint64_t pc = 0;
  IdiomKind kind{};
  Reg blocking_register = 0;
  Reg suggested_rename = 0;
  uint64_t weight = 0;
};

/// Floating-point values render through fixed-precision strings (6 decimal
/// places; comparison tables 2), so repeated runs and all three formats
/// carry byte-identical numbers.
std::string format_fixed(double v, int places);

std::string render_analyze(const MetricsReport& report, OutputFormat fmt);
std::string render_nearmiss(const std::vector<NearMissRow>& rows,
                            uint64_t total_count, OutputFormat fmt);
std::string render_compare(const MetricsReport::Comparison& cmp,
                           OutputFormat fmt);
std::string render_cdf(const std::vector<CdfPoint>& points, OutputFormat fmt);

}  // namespace rvfusion
