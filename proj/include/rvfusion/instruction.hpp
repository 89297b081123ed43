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
#include <string>

namespace rvfusion {

/// Architectural register index (x0..x31, or f0..f31 for FP memory ops).
/// FP registers share the 0..31 index space; the opclass tells the file apart.
using Reg = uint8_t;

enum class Mnemonic : uint8_t {
  // integer reg-reg
  add, sub, sll, slt, sltu, srl, sra, or_, and_, xor_,
  addw, subw, sllw, srlw, sraw,
  // integer reg-imm
  addi, slti, sltiu, xori, ori, andi, slli, srli, srai,
  addiw, slliw, srliw, sraiw,
  // loads / stores
  lb, lh, lw, ld, lbu, lhu, lwu,
  sb, sh, sw, sd,
  // control flow
  beq, bne, blt, bge, bltu, bgeu,
  jal, jalr,
  // upper-immediate
  lui, auipc,
  // M extension
  mul, mulh, mulhsu, mulhu, mulw,
  div, divu, rem, remu, divw, divuw, remw, remuw,
  // FP memory ops
  flw, fld, fsw, fsd,
  // anything we do not model
  other,
};

enum class OpClass : uint8_t {
  int_reg_reg,
  int_reg_imm,
  load,
  store,
  branch,
  jal,
  jalr,
  lui,
  auipc,
  mul_family,
  div_family,
  fp_load,
  fp_store,
  other,
};

OpClass mnemonic_class(Mnemonic m);
std::string_view mnemonic_name(Mnemonic m);

/// One decoded RV64GC operation in canonical (expanded) form. A compressed
/// encoding carries the same fields as its 4-byte counterpart; only
/// encoded_length (and raw) differ.
struct Instruction {
  Mnemonic mnemonic = Mnemonic::other;
  std::optional<Reg> rd;
  std::optional<Reg> rs1;
  std::optional<Reg> rs2;
  std::optional<int64_t> imm;
  uint8_t encoded_length = 4;  // 2 or 4 bytes
  uint32_t raw = 0;

  OpClass opclass() const { return mnemonic_class(mnemonic); }

  bool is(Mnemonic m) const { return mnemonic == m; }
  bool is_load() const {
    OpClass c = opclass();
    return c == OpClass::load || c == OpClass::fp_load;
  }
  bool is_store() const {
    OpClass c = opclass();
    return c == OpClass::store || c == OpClass::fp_store;
  }
  bool is_control_flow() const {
    OpClass c = opclass();
    return c == OpClass::branch || c == OpClass::jal || c == OpClass::jalr;
  }

  /// Bytes moved by a load/store mnemonic (1, 2, 4 or 8); 0 otherwise.
  unsigned access_size() const;

  /// Field-level equality ignoring the raw encoding bits, used for
  /// round-trip and expansion-equivalence checks.
  bool semantic_equals(const Instruction& o) const {
    return mnemonic == o.mnemonic && rd == o.rd && rs1 == o.rs1 &&
           rs2 == o.rs2 && imm == o.imm && encoded_length == o.encoded_length;
  }
};

/// ABI name for an integer register index ("a0", "sp", ...).
std::string_view reg_name(Reg r);
/// ABI name for an FP register index ("fa0", "ft3", ...).
std::string_view fp_reg_name(Reg r);
/// Parses "a0", "x10", "fa0", "f10", ... Returns the index, or nullopt.
std::optional<Reg> parse_reg_name(std::string_view name, bool* is_fp = nullptr);

}  // namespace rvfusion
