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
#include <stdexcept>
#include <string>
#include <vector>

#include "rvfusion/instruction.hpp"

namespace rvfusion {

/// Thrown on malformed trace input; the message carries the 1-based line
/// number of the offending line.
class TraceError : public std::runtime_error {
 public:
  TraceError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

/// One static instruction with its dynamic execution count.
struct WeightedInstruction {
  uint64_t pc = 0;
  Instruction ins;
  uint64_t count = 0;
};

/// A maximal straight-line run of consecutive instructions. `first` indexes
/// into the item list the block was segmented from.
struct Block {
  size_t first = 0;
  std::vector<WeightedInstruction> items;
};

/// Parses the raw trace format: one "PC_HEX ENC_HEX COUNT_DEC" entry per
/// line, '#' starts a comment, blank lines ignored. ENC_HEX is 4 hex digits
/// for compressed and 8 for standard encodings and must agree with the
/// encoding's own length bits. Counts must be positive; pcs must be unique.
/// Items come back sorted by pc.
std::vector<WeightedInstruction> parse_trace(std::istream& in);

/// Parses the asm-text format: "PC_HEX: <asm>" with an optional
/// "; count=N" suffix (default 1), or a "@base PC_HEX" directive after
/// which lines carry no pc and are laid out consecutively by encoded
/// length. Same comment/blank/uniqueness/count rules as parse_trace.
std::vector<WeightedInstruction> parse_asm_trace(std::istream& in);

/// Splits pc-sorted items into maximal straight-line blocks: a block ends
/// after a branch/jal/jalr or wherever the next pc is not contiguous with
/// the previous instruction's end. Every item lands in exactly one block,
/// in order.
std::vector<Block> segment_blocks(const std::vector<WeightedInstruction>& items);

}  // namespace rvfusion
