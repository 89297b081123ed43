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
#include <optional>
#include <stdexcept>
#include <string>

#include "rvfusion/instruction.hpp"

namespace rvfusion {

/// Thrown for unrecognized mnemonics, malformed operands, or out-of-range
/// immediates while assembling a single line of asm text.
class AsmError : public std::runtime_error {
 public:
  explicit AsmError(const std::string& what) : std::runtime_error(what) {}
};

/// Assembles one instruction from text, e.g. "add a0, a0, a1",
/// "ld a3, 0(a4)", "c.mv a0, a1", "li t1, 12", ".word 0xffffffff".
///
/// Mnemonics cover the decoded subset plus the usual pseudo-ops (nop, li,
/// mv, j, jr, ret, beqz, bnez) and compressed spellings: the dedicated RVC
/// forms (c.mv, c.add, c.li, ...) as well as a generic "c." prefix on any
/// standard mnemonic, both meaning encoded_length = 2.
///
/// When `pc` is given, branch and jump targets are absolute addresses
/// (unprefixed hex, objdump style) and are converted to pc-relative
/// immediates; without a pc they are taken as raw signed offsets.
/// Assembled instructions carry raw = 0: the raw field is an input artifact
/// of decoding, not part of the semantic fields.
Instruction assemble_line(std::string_view text,
                          std::optional<uint64_t> pc = std::nullopt);

/// Renders an instruction in canonical text form, e.g. "add a0, a0, a1" or
/// "c.addi a5, a5, 16". FP memory ops use f-register names for the data
/// register; `other` renders as ".word 0x…" / ".half 0x…" from raw.
/// Branch/jump immediates render as raw offsets unless `pc` is supplied, in
/// which case they render as absolute hex targets (matching assemble_line).
std::string disassemble(const Instruction& ins,
                        std::optional<uint64_t> pc = std::nullopt);

}  // namespace rvfusion
