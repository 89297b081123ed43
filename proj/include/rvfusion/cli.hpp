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

#include <ostream>
#include <string>
#include <vector>

namespace rvfusion::cli {

/// Runs the command line given argv-style arguments (excluding argv[0]).
/// Returns the process exit code: 0 success, 1 input/analysis error,
/// 2 usage error. All output goes to the supplied streams, making the tool
/// drivable in-process from tests.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rvfusion::cli
