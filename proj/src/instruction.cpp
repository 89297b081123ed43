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

#include "rvfusion/instruction.hpp"

#include <array>

namespace rvfusion {

OpClass mnemonic_class(Mnemonic m) {
  switch (m) {
    case Mnemonic::add: case Mnemonic::sub: case Mnemonic::sll:
    case Mnemonic::slt: case Mnemonic::sltu: case Mnemonic::srl:
    case Mnemonic::sra: case Mnemonic::or_: case Mnemonic::and_:
    case Mnemonic::xor_: case Mnemonic::addw: case Mnemonic::subw:
    case Mnemonic::sllw: case Mnemonic::srlw: case Mnemonic::sraw:
      return OpClass::int_reg_reg;
    case Mnemonic::addi: case Mnemonic::slti: case Mnemonic::sltiu:
    case Mnemonic::xori: case Mnemonic::ori: case Mnemonic::andi:
    case Mnemonic::slli: case Mnemonic::srli: case Mnemonic::srai:
    case Mnemonic::addiw: case Mnemonic::slliw: case Mnemonic::srliw:
    case Mnemonic::sraiw:
      return OpClass::int_reg_imm;
    case Mnemonic::lb: case Mnemonic::lh: case Mnemonic::lw:
    case Mnemonic::ld: case Mnemonic::lbu: case Mnemonic::lhu:
    case Mnemonic::lwu:
      return OpClass::load;
    case Mnemonic::sb: case Mnemonic::sh: case Mnemonic::sw:
    case Mnemonic::sd:
      return OpClass::store;
    case Mnemonic::beq: case Mnemonic::bne: case Mnemonic::blt:
    case Mnemonic::bge: case Mnemonic::bltu: case Mnemonic::bgeu:
      return OpClass::branch;
    case Mnemonic::jal:
      return OpClass::jal;
    case Mnemonic::jalr:
      return OpClass::jalr;
    case Mnemonic::lui:
      return OpClass::lui;
    case Mnemonic::auipc:
      return OpClass::auipc;
    case Mnemonic::mul: case Mnemonic::mulh: case Mnemonic::mulhsu:
    case Mnemonic::mulhu: case Mnemonic::mulw:
      return OpClass::mul_family;
    case Mnemonic::div: case Mnemonic::divu: case Mnemonic::rem:
    case Mnemonic::remu: case Mnemonic::divw: case Mnemonic::divuw:
    case Mnemonic::remw: case Mnemonic::remuw:
      return OpClass::div_family;
    case Mnemonic::flw: case Mnemonic::fld:
      return OpClass::fp_load;
    case Mnemonic::fsw: case Mnemonic::fsd:
      return OpClass::fp_store;
    case Mnemonic::other:
      return OpClass::other;
  }
  return OpClass::other;
}

std::string_view mnemonic_name(Mnemonic m) {
  switch (m) {
    case Mnemonic::add: return "add";
    case Mnemonic::sub: return "sub";
    case Mnemonic::sll: return "sll";
    case Mnemonic::slt: return "slt";
    case Mnemonic::sltu: return "sltu";
    case Mnemonic::srl: return "srl";
    case Mnemonic::sra: return "sra";
    case Mnemonic::or_: return "or";
    case Mnemonic::and_: return "and";
    case Mnemonic::xor_: return "xor";
    case Mnemonic::addw: return "addw";
    case Mnemonic::subw: return "subw";
    case Mnemonic::sllw: return "sllw";
    case Mnemonic::srlw: return "srlw";
    case Mnemonic::sraw: return "sraw";
    case Mnemonic::addi: return "addi";
    case Mnemonic::slti: return "slti";
    case Mnemonic::sltiu: return "sltiu";
    case Mnemonic::xori: return "xori";
    case Mnemonic::ori: return "ori";
    case Mnemonic::andi: return "andi";
    case Mnemonic::slli: return "slli";
    case Mnemonic::srli: return "srli";
    case Mnemonic::srai: return "srai";
    case Mnemonic::addiw: return "addiw";
    case Mnemonic::slliw: return "slliw";
    case Mnemonic::srliw: return "srliw";
    case Mnemonic::sraiw: return "sraiw";
    case Mnemonic::lb: return "lb";
    case Mnemonic::lh: return "lh";
    case Mnemonic::lw: return "lw";
    case Mnemonic::ld: return "ld";
    case Mnemonic::lbu: return "lbu";
    case Mnemonic::lhu: return "lhu";
    case Mnemonic::lwu: return "lwu";
    case Mnemonic::sb: return "sb";
    case Mnemonic::sh: return "sh";
    case Mnemonic::sw: return "sw";
    case Mnemonic::sd: return "sd";
    case Mnemonic::beq: return "beq";
    case Mnemonic::bne: return "bne";
    case Mnemonic::blt: return "blt";
    case Mnemonic::bge: return "bge";
    case Mnemonic::bltu: return "bltu";
    case Mnemonic::bgeu: return "bgeu";
    case Mnemonic::jal: return "jal";
    case Mnemonic::jalr: return "jalr";
    case Mnemonic::lui: return "lui";
    case Mnemonic::auipc: return "auipc";
    case Mnemonic::mul: return "mul";
    case Mnemonic::mulh: return "mulh";
    case Mnemonic::mulhsu: return "mulhsu";
    case Mnemonic::mulhu: return "mulhu";
    case Mnemonic::mulw: return "mulw";
    case Mnemonic::div: return "div";
    case Mnemonic::divu: return "divu";
    case Mnemonic::rem: return "rem";
    case Mnemonic::remu: return "remu";
    case Mnemonic::divw: return "divw";
    case Mnemonic::divuw: return "divuw";
    case Mnemonic::remw: return "remw";
    case Mnemonic::remuw: return "remuw";
    case Mnemonic::flw: return "flw";
    case Mnemonic::fld: return "fld";
    case Mnemonic::fsw: return "fsw";
    case Mnemonic::fsd: return "fsd";
    case Mnemonic::other: return "other";
  }
  return "other";
}

unsigned Instruction::access_size() const {
  switch (mnemonic) {
    case Mnemonic::lb: case Mnemonic::lbu: case Mnemonic::sb:
      return 1;
    case Mnemonic::lh: case Mnemonic::lhu: case Mnemonic::sh:
      return 2;
    case Mnemonic::lw: case Mnemonic::lwu: case Mnemonic::sw:
    case Mnemonic::flw: case Mnemonic::fsw:
      return 4;
    case Mnemonic::ld: case Mnemonic::sd:
    case Mnemonic::fld: case Mnemonic::fsd:
      return 8;
    default:
      return 0;
  }
}

namespace {

constexpr std::array<std::string_view, 32> kIntRegNames = {
    "zero", "ra", "sp", "gp", "tp", "t0", "t1", "t2",
    "s0",   "s1", "a0", "a1", "a2", "a3", "a4", "a5",
    "a6",   "a7", "s2", "s3", "s4", "s5", "s6", "s7",
    "s8",   "s9", "s10", "s11", "t3", "t4", "t5", "t6",
};

constexpr std::array<std::string_view, 32> kFpRegNames = {
    "ft0", "ft1", "ft2",  "ft3",  "ft4", "ft5", "ft6",  "ft7",
    "fs0", "fs1", "fa0",  "fa1",  "fa2", "fa3", "fa4",  "fa5",
    "fa6", "fa7", "fs2",  "fs3",  "fs4", "fs5", "fs6",  "fs7",
    "fs8", "fs9", "fs10", "fs11", "ft8", "ft9", "ft10", "ft11",
};

std::optional<Reg> parse_numeric_suffix(std::string_view s) {
  if (s.empty() || s.size() > 2) return std::nullopt;
  unsigned v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + unsigned(c - '0');
  }
  if (v > 31) return std::nullopt;
  return Reg(v);
}

}  // namespace

std::string_view reg_name(Reg r) { return kIntRegNames[r & 31]; }
std::string_view fp_reg_name(Reg r) { return kFpRegNames[r & 31]; }

std::optional<Reg> parse_reg_name(std::string_view name, bool* is_fp) {
  if (is_fp) *is_fp = false;
  if (name.empty()) return std::nullopt;
  for (Reg i = 0; i < 32; ++i) {
    if (name == kIntRegNames[i]) return i;
  }
  for (Reg i = 0; i < 32; ++i) {
    if (name == kFpRegNames[i]) {
      if (is_fp) *is_fp = true;
      return i;
    }
  }
  if (name == "fp") return Reg(8);  // alias of s0
  if (name[0] == 'x') return parse_numeric_suffix(name.substr(1));
  if (name[0] == 'f') {
    auto r = parse_numeric_suffix(name.substr(1));
    if (r && is_fp) *is_fp = true;
    return r;
  }
  return std::nullopt;
}

}  // namespace rvfusion
