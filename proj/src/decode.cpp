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

#include "rvfusion/decode.hpp"

namespace rvfusion {

namespace {

constexpr uint32_t bits(uint32_t w, unsigned hi, unsigned lo) {
  return (w >> lo) & ((1u << (hi - lo + 1)) - 1);
}

constexpr int64_t sext(uint32_t value, unsigned width) {
  uint32_t sign = 1u << (width - 1);
  return int64_t(int32_t((value ^ sign))) - int64_t(sign);
}

Instruction other(uint32_t raw, uint8_t len) {
  Instruction ins;
  ins.mnemonic = Mnemonic::other;
  ins.raw = raw;
  ins.encoded_length = len;
  return ins;
}

Instruction make(Mnemonic m, std::optional<Reg> rd, std::optional<Reg> rs1,
                 std::optional<Reg> rs2, std::optional<int64_t> imm,
                 uint32_t raw, uint8_t len) {
  Instruction ins;
  ins.mnemonic = m;
  ins.rd = rd;
  ins.rs1 = rs1;
  ins.rs2 = rs2;
  ins.imm = imm;
  ins.raw = raw;
  ins.encoded_length = len;
  return ins;
}

Mnemonic op_mnemonic(uint32_t f7, uint32_t f3) {
  if (f7 == 0x00) {
    switch (f3) {
      case 0: return Mnemonic::add;
      case 1: return Mnemonic::sll;
      case 2: return Mnemonic::slt;
      case 3: return Mnemonic::sltu;
      case 4: return Mnemonic::xor_;
      case 5: return Mnemonic::srl;
      case 6: return Mnemonic::or_;
      case 7: return Mnemonic::and_;
    }
  } else if (f7 == 0x20) {
    if (f3 == 0) return Mnemonic::sub;
    if (f3 == 5) return Mnemonic::sra;
  } else if (f7 == 0x01) {
    switch (f3) {
      case 0: return Mnemonic::mul;
      case 1: return Mnemonic::mulh;
      case 2: return Mnemonic::mulhsu;
      case 3: return Mnemonic::mulhu;
      case 4: return Mnemonic::div;
      case 5: return Mnemonic::divu;
      case 6: return Mnemonic::rem;
      case 7: return Mnemonic::remu;
    }
  }
  return Mnemonic::other;
}

Mnemonic op32_mnemonic(uint32_t f7, uint32_t f3) {
  if (f7 == 0x00) {
    if (f3 == 0) return Mnemonic::addw;
    if (f3 == 1) return Mnemonic::sllw;
    if (f3 == 5) return Mnemonic::srlw;
  } else if (f7 == 0x20) {
    if (f3 == 0) return Mnemonic::subw;
    if (f3 == 5) return Mnemonic::sraw;
  } else if (f7 == 0x01) {
    switch (f3) {
      case 0: return Mnemonic::mulw;
      case 4: return Mnemonic::divw;
      case 5: return Mnemonic::divuw;
      case 6: return Mnemonic::remw;
      case 7: return Mnemonic::remuw;
    }
  }
  return Mnemonic::other;
}

}  // namespace

LengthClass instr_length(uint16_t low_half) {
  if ((low_half & 0x1F) == 0x1F) return LengthClass::reserved_long;
  if ((low_half & 0x3) == 0x3) return LengthClass::four;
  return LengthClass::two;
}

Instruction decode32(uint32_t w) {
  uint32_t opcode = bits(w, 6, 0);
  Reg rd = Reg(bits(w, 11, 7));
  Reg rs1 = Reg(bits(w, 19, 15));
  Reg rs2 = Reg(bits(w, 24, 20));
  uint32_t f3 = bits(w, 14, 12);
  uint32_t f7 = bits(w, 31, 25);
  int64_t imm_i = sext(bits(w, 31, 20), 12);
  int64_t imm_s = sext(bits(w, 31, 25) << 5 | bits(w, 11, 7), 12);
  int64_t imm_b = sext(bits(w, 31, 31) << 12 | bits(w, 7, 7) << 11 |
                           bits(w, 30, 25) << 5 | bits(w, 11, 8) << 1,
                       13);
  int64_t imm_u = int64_t(int32_t(w & 0xFFFFF000u));
  int64_t imm_j = sext(bits(w, 31, 31) << 20 | bits(w, 19, 12) << 12 |
                           bits(w, 20, 20) << 11 | bits(w, 30, 21) << 1,
                       21);

  switch (opcode) {
    case 0x33: {  // OP
      Mnemonic m = op_mnemonic(f7, f3);
      if (m == Mnemonic::other) return other(w, 4);
      return make(m, rd, rs1, rs2, std::nullopt, w, 4);
    }
    case 0x3B: {  // OP-32
      Mnemonic m = op32_mnemonic(f7, f3);
      if (m == Mnemonic::other) return other(w, 4);
      return make(m, rd, rs1, rs2, std::nullopt, w, 4);
    }
    case 0x13: {  // OP-IMM
      switch (f3) {
        case 0: return make(Mnemonic::addi, rd, rs1, {}, imm_i, w, 4);
        case 2: return make(Mnemonic::slti, rd, rs1, {}, imm_i, w, 4);
        case 3: return make(Mnemonic::sltiu, rd, rs1, {}, imm_i, w, 4);
        case 4: return make(Mnemonic::xori, rd, rs1, {}, imm_i, w, 4);
        case 6: return make(Mnemonic::ori, rd, rs1, {}, imm_i, w, 4);
        case 7: return make(Mnemonic::andi, rd, rs1, {}, imm_i, w, 4);
        case 1:  // shamt is 6 bits on RV64
          if (bits(w, 31, 26) != 0x00) return other(w, 4);
          return make(Mnemonic::slli, rd, rs1, {}, bits(w, 25, 20), w, 4);
        case 5:
          if (bits(w, 31, 26) == 0x00)
            return make(Mnemonic::srli, rd, rs1, {}, bits(w, 25, 20), w, 4);
          if (bits(w, 31, 26) == 0x10)
            return make(Mnemonic::srai, rd, rs1, {}, bits(w, 25, 20), w, 4);
          return other(w, 4);
      }
      return other(w, 4);
    }
    case 0x1B: {  // OP-IMM-32
      switch (f3) {
        case 0: return make(Mnemonic::addiw, rd, rs1, {}, imm_i, w, 4);
        case 1:
          if (f7 != 0x00) return other(w, 4);
          return make(Mnemonic::slliw, rd, rs1, {}, bits(w, 24, 20), w, 4);
        case 5:
          if (f7 == 0x00)
            return make(Mnemonic::srliw, rd, rs1, {}, bits(w, 24, 20), w, 4);
          if (f7 == 0x20)
            return make(Mnemonic::sraiw, rd, rs1, {}, bits(w, 24, 20), w, 4);
          return other(w, 4);
      }
      return other(w, 4);
    }
    case 0x03: {  // LOAD
      static constexpr Mnemonic kLoads[8] = {
          Mnemonic::lb,  Mnemonic::lh,  Mnemonic::lw,    Mnemonic::ld,
          Mnemonic::lbu, Mnemonic::lhu, Mnemonic::lwu, Mnemonic::other};
      Mnemonic m = kLoads[f3];
      if (m == Mnemonic::other) return other(w, 4);
      return make(m, rd, rs1, {}, imm_i, w, 4);
    }
    case 0x23: {  // STORE
      static constexpr Mnemonic kStores[4] = {Mnemonic::sb, Mnemonic::sh,
                                              Mnemonic::sw, Mnemonic::sd};
      if (f3 > 3) return other(w, 4);
      return make(kStores[f3], {}, rs1, rs2, imm_s, w, 4);
    }
    case 0x63: {  // BRANCH
      static constexpr Mnemonic kBranches[8] = {
          Mnemonic::beq,   Mnemonic::bne, Mnemonic::other, Mnemonic::other,
          Mnemonic::blt,   Mnemonic::bge, Mnemonic::bltu,  Mnemonic::bgeu};
      Mnemonic m = kBranches[f3];
      if (m == Mnemonic::other) return other(w, 4);
      return make(m, {}, rs1, rs2, imm_b, w, 4);
    }
    case 0x6F:
      return make(Mnemonic::jal, rd, {}, {}, imm_j, w, 4);
    case 0x67:
      if (f3 != 0) return other(w, 4);
      return make(Mnemonic::jalr, rd, rs1, {}, imm_i, w, 4);
    case 0x37:
      return make(Mnemonic::lui, rd, {}, {}, imm_u, w, 4);
    case 0x17:
      return make(Mnemonic::auipc, rd, {}, {}, imm_u, w, 4);
    case 0x07: {  // LOAD-FP
      if (f3 == 2) return make(Mnemonic::flw, rd, rs1, {}, imm_i, w, 4);
      if (f3 == 3) return make(Mnemonic::fld, rd, rs1, {}, imm_i, w, 4);
      return other(w, 4);
    }
    case 0x27: {  // STORE-FP
      if (f3 == 2) return make(Mnemonic::fsw, {}, rs1, rs2, imm_s, w, 4);
      if (f3 == 3) return make(Mnemonic::fsd, {}, rs1, rs2, imm_s, w, 4);
      return other(w, 4);
    }
    default:
      return other(w, 4);
  }
}

Instruction decode16(uint16_t h) {
  uint32_t w = h;
  uint32_t op = w & 0x3;
  uint32_t f3 = bits(w, 15, 13);
  // Register fields common to the compressed formats.
  Reg rd_full = Reg(bits(w, 11, 7));       // CR/CI
  Reg rs2_full = Reg(bits(w, 6, 2));       // CR/CSS
  Reg rd_c = Reg(bits(w, 4, 2) + 8);       // CIW/CL rd', CA rs2'
  Reg rs1_c = Reg(bits(w, 9, 7) + 8);      // CL/CS/CB rs1', CA rd'
  int64_t imm6 = sext(bits(w, 12, 12) << 5 | bits(w, 6, 2), 6);
  uint32_t shamt6 = bits(w, 12, 12) << 5 | bits(w, 6, 2);

  switch (op) {
    case 0:  // quadrant 0: stack-pointer and register-relative memory forms
      switch (f3) {
        case 0: {  // c.addi4spn
          uint32_t uimm = bits(w, 12, 11) << 4 | bits(w, 10, 7) << 6 |
                          bits(w, 6, 6) << 2 | bits(w, 5, 5) << 3;
          if (uimm == 0) return other(h, 2);  // covers the all-zero encoding
          return make(Mnemonic::addi, rd_c, Reg(2), {}, uimm, h, 2);
        }
        case 2: {  // c.lw
          uint32_t uimm =
              bits(w, 12, 10) << 3 | bits(w, 6, 6) << 2 | bits(w, 5, 5) << 6;
          return make(Mnemonic::lw, rd_c, rs1_c, {}, uimm, h, 2);
        }
        case 3: {  // c.ld
          uint32_t uimm = bits(w, 12, 10) << 3 | bits(w, 6, 5) << 6;
          return make(Mnemonic::ld, rd_c, rs1_c, {}, uimm, h, 2);
        }
        case 6: {  // c.sw
          uint32_t uimm =
              bits(w, 12, 10) << 3 | bits(w, 6, 6) << 2 | bits(w, 5, 5) << 6;
          return make(Mnemonic::sw, {}, rs1_c, rd_c, uimm, h, 2);
        }
        case 7: {  // c.sd
          uint32_t uimm = bits(w, 12, 10) << 3 | bits(w, 6, 5) << 6;
          return make(Mnemonic::sd, {}, rs1_c, rd_c, uimm, h, 2);
        }
        default:  // FP memory forms and the reserved row
          return other(h, 2);
      }
    case 1:  // quadrant 1: immediates, ALU ops, control flow
      switch (f3) {
        case 0:  // c.addi (rd = x0 with imm 0 is the canonical nop)
          return make(Mnemonic::addi, rd_full, rd_full, {}, imm6, h, 2);
        case 1:  // c.addiw
          if (rd_full == 0) return other(h, 2);
          return make(Mnemonic::addiw, rd_full, rd_full, {}, imm6, h, 2);
        case 2:  // c.li
          return make(Mnemonic::addi, rd_full, Reg(0), {}, imm6, h, 2);
        case 3: {
          if (rd_full == 2) {  // c.addi16sp
            int64_t imm = sext(bits(w, 12, 12) << 9 | bits(w, 6, 6) << 4 |
                                   bits(w, 5, 5) << 6 | bits(w, 4, 3) << 7 |
                                   bits(w, 2, 2) << 5,
                               10);
            if (imm == 0) return other(h, 2);
            return make(Mnemonic::addi, Reg(2), Reg(2), {}, imm, h, 2);
          }
          // c.lui: the 6-bit field is imm[17:12] of the expanded form
          if (imm6 == 0) return other(h, 2);
          return make(Mnemonic::lui, rd_full, {}, {}, imm6 << 12, h, 2);
        }
        case 4:  // ALU row
          switch (bits(w, 11, 10)) {
            case 0:
              return make(Mnemonic::srli, rs1_c, rs1_c, {}, shamt6, h, 2);
            case 1:
              return make(Mnemonic::srai, rs1_c, rs1_c, {}, shamt6, h, 2);
            case 2:
              return make(Mnemonic::andi, rs1_c, rs1_c, {}, imm6, h, 2);
            case 3: {
              static constexpr Mnemonic kAlu[2][4] = {
                  {Mnemonic::sub, Mnemonic::xor_, Mnemonic::or_,
                   Mnemonic::and_},
                  {Mnemonic::subw, Mnemonic::addw, Mnemonic::other,
                   Mnemonic::other}};
              Mnemonic m = kAlu[bits(w, 12, 12)][bits(w, 6, 5)];
              if (m == Mnemonic::other) return other(h, 2);
              return make(m, rs1_c, rs1_c, rd_c, std::nullopt, h, 2);
            }
          }
          return other(h, 2);
        case 5: {  // c.j
          int64_t imm = sext(bits(w, 12, 12) << 11 | bits(w, 11, 11) << 4 |
                                 bits(w, 10, 9) << 8 | bits(w, 8, 8) << 10 |
                                 bits(w, 7, 7) << 6 | bits(w, 6, 6) << 7 |
                                 bits(w, 5, 3) << 1 | bits(w, 2, 2) << 5,
                             12);
          return make(Mnemonic::jal, Reg(0), {}, {}, imm, h, 2);
        }
        case 6:
        case 7: {  // c.beqz / c.bnez
          int64_t imm = sext(bits(w, 12, 12) << 8 | bits(w, 11, 10) << 3 |
                                 bits(w, 6, 5) << 6 | bits(w, 4, 3) << 1 |
                                 bits(w, 2, 2) << 5,
                             9);
          Mnemonic m = f3 == 6 ? Mnemonic::beq : Mnemonic::bne;
          return make(m, {}, rs1_c, Reg(0), imm, h, 2);
        }
      }
      return other(h, 2);
    case 2:  // quadrant 2: stack-pointer loads/stores, register moves
      switch (f3) {
        case 0:  // c.slli (shamt 0 is a hint; decode it mechanically)
          return make(Mnemonic::slli, rd_full, rd_full, {}, shamt6, h, 2);
        case 2: {  // c.lwsp
          if (rd_full == 0) return other(h, 2);
          uint32_t uimm =
              bits(w, 12, 12) << 5 | bits(w, 6, 4) << 2 | bits(w, 3, 2) << 6;
          return make(Mnemonic::lw, rd_full, Reg(2), {}, uimm, h, 2);
        }
        case 3: {  // c.ldsp
          if (rd_full == 0) return other(h, 2);
          uint32_t uimm =
              bits(w, 12, 12) << 5 | bits(w, 6, 5) << 3 | bits(w, 4, 2) << 6;
          return make(Mnemonic::ld, rd_full, Reg(2), {}, uimm, h, 2);
        }
        case 4: {
          bool hi = bits(w, 12, 12) != 0;
          if (rs2_full == 0) {
            if (rd_full == 0) return other(h, 2);  // reserved / c.ebreak
            // c.jr expands to a plain indirect jump, c.jalr links through ra
            return make(Mnemonic::jalr, Reg(hi ? 1 : 0), rd_full, {},
                        int64_t(0), h, 2);
          }
          if (hi)  // c.add
            return make(Mnemonic::add, rd_full, rd_full, rs2_full,
                        std::nullopt, h, 2);
          // c.mv
          return make(Mnemonic::add, rd_full, Reg(0), rs2_full, std::nullopt,
                      h, 2);
        }
        case 6: {  // c.swsp
          uint32_t uimm = bits(w, 12, 9) << 2 | bits(w, 8, 7) << 6;
          return make(Mnemonic::sw, {}, Reg(2), rs2_full, uimm, h, 2);
        }
        case 7: {  // c.sdsp
          uint32_t uimm = bits(w, 12, 10) << 3 | bits(w, 9, 7) << 6;
          return make(Mnemonic::sd, {}, Reg(2), rs2_full, uimm, h, 2);
        }
        default:  // FP stack forms
          return other(h, 2);
      }
    default:  // low bits 0b11: not a compressed encoding
      return other(h, 2);
  }
}

Instruction decode(uint32_t word, LengthClass len) {
  switch (len) {
    case LengthClass::four:
      return decode32(word);
    case LengthClass::two:
      return decode16(uint16_t(word & 0xFFFF));
    case LengthClass::reserved_long:
      return other(word, 4);
  }
  return other(word, 4);
}

}  // namespace rvfusion
