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

#include <random>

#include "doctest.h"
#include "rvfusion/instruction.hpp"

using namespace rvfusion;

TEST_CASE("length class from the low halfword") {
  CHECK(instr_length(0x0013) == LengthClass::four);   // addi
  CHECK(instr_length(0x0533) == LengthClass::four);   // add
  CHECK(instr_length(0x0001) == LengthClass::two);    // c.nop
  CHECK(instr_length(0x8502) == LengthClass::two);    // c.jr
  CHECK(instr_length(0x0000) == LengthClass::two);    // defined-illegal
  CHECK(instr_length(0x001F) == LengthClass::reserved_long);
  CHECK(instr_length(0xFFFF) == LengthClass::reserved_long);
  CHECK(instr_length(0xABDF) == LengthClass::reserved_long);
}

TEST_CASE("length classes partition the halfword space") {
  std::mt19937 rng(0xD15EA5E);
  for (int i = 0; i < 20000; ++i) {
    uint16_t h = uint16_t(rng());
    LengthClass lc = instr_length(h);
    if ((h & 0x1F) == 0x1F) {
      CHECK(lc == LengthClass::reserved_long);
    } else if ((h & 0x3) == 0x3) {
      CHECK(lc == LengthClass::four);
    } else {
      CHECK(lc == LengthClass::two);
    }
  }
}

TEST_CASE("standard encodings decode to expected fields") {
  SUBCASE("addi x0, x0, 0") {
    Instruction ins = decode32(0x00000013);
    CHECK(ins.mnemonic == Mnemonic::addi);
    CHECK(ins.rd == Reg(0));
    CHECK(ins.rs1 == Reg(0));
    CHECK(ins.imm == 0);
    CHECK(ins.encoded_length == 4);
    CHECK(ins.raw == 0x00000013);
  }
  SUBCASE("add a0, a0, a1") {
    Instruction ins = decode32(0x00B50533);
    CHECK(ins.mnemonic == Mnemonic::add);
    CHECK(ins.rd == Reg(10));
    CHECK(ins.rs1 == Reg(10));
    CHECK(ins.rs2 == Reg(11));
    CHECK(!ins.imm.has_value());
  }
  SUBCASE("addi a0, a1, 42") {
    Instruction ins = decode32(0x02A58513);
    CHECK(ins.mnemonic == Mnemonic::addi);
    CHECK(ins.rd == Reg(10));
    CHECK(ins.rs1 == Reg(11));
    CHECK(ins.imm == 42);
  }
  SUBCASE("negative I-immediate sign-extends") {
    // addi a0, a0, -1 = 0xFFF50513
    Instruction ins = decode32(0xFFF50513);
    CHECK(ins.mnemonic == Mnemonic::addi);
    CHECK(ins.imm == -1);
  }
  SUBCASE("lui upper immediate keeps the 32-bit value") {
    // lui a0, 0xFFFFF
    Instruction ins = decode32(0xFFFFF537);
    CHECK(ins.mnemonic == Mnemonic::lui);
    CHECK(ins.rd == Reg(10));
    CHECK(ins.imm == -4096);
  }
  SUBCASE("unknown major opcode becomes opaque") {
    Instruction ins = decode32(0xFFFFFFFF);
    CHECK(ins.mnemonic == Mnemonic::other);
    CHECK(ins.raw == 0xFFFFFFFF);
    CHECK(ins.encoded_length == 4);
  }
  SUBCASE("system opcode is opaque") {
    // ecall
    CHECK(decode32(0x00000073).mnemonic == Mnemonic::other);
  }
}

TEST_CASE("compressed encodings expand to canonical fields") {
  SUBCASE("c.nop is a two-byte addi x0, x0, 0") {
    Instruction ins = decode16(0x0001);
    CHECK(ins.mnemonic == Mnemonic::addi);
    CHECK(ins.rd == Reg(0));
    CHECK(ins.rs1 == Reg(0));
    CHECK(ins.imm == 0);
    CHECK(ins.encoded_length == 2);
  }
  SUBCASE("c.mv a0, a1") {
    Instruction ins = decode16(0x852E);
    CHECK(ins.mnemonic == Mnemonic::add);
    CHECK(ins.rd == Reg(10));
    CHECK(ins.rs1 == Reg(0));
    CHECK(ins.rs2 == Reg(11));
    CHECK(ins.encoded_length == 2);
  }
  SUBCASE("c.addi16sp sp, -64") {
    Instruction ins = decode16(0x7139);
    CHECK(ins.mnemonic == Mnemonic::addi);
    CHECK(ins.rd == Reg(2));
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.imm == -64);
  }
  SUBCASE("c.addi4spn a0, sp, 16") {
    Instruction ins = decode16(0x0808);
    CHECK(ins.mnemonic == Mnemonic::addi);
    CHECK(ins.rd == Reg(10));
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.imm == 16);
  }
  SUBCASE("c.lwsp a0, 8(sp)") {
    Instruction ins = decode16(0x4522);
    CHECK(ins.mnemonic == Mnemonic::lw);
    CHECK(ins.rd == Reg(10));
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.imm == 8);
  }
  SUBCASE("c.sdsp a1, 16(sp)") {
    Instruction ins = decode16(0xE82E);
    CHECK(ins.mnemonic == Mnemonic::sd);
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.rs2 == Reg(11));
    CHECK(ins.imm == 16);
  }
  SUBCASE("c.ldsp s0, 40(sp)") {
    Instruction ins = decode16(0x7422);
    CHECK(ins.mnemonic == Mnemonic::ld);
    CHECK(ins.rd == Reg(8));
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.imm == 40);
  }
  SUBCASE("c.jr a0 and c.jalr a1") {
    Instruction jr = decode16(0x8502);
    CHECK(jr.mnemonic == Mnemonic::jalr);
    CHECK(jr.rd == Reg(0));
    CHECK(jr.rs1 == Reg(10));
    CHECK(jr.imm == 0);
    Instruction jalr = decode16(0x9582);
    CHECK(jalr.mnemonic == Mnemonic::jalr);
    CHECK(jalr.rd == Reg(1));
    CHECK(jalr.rs1 == Reg(11));
  }
  SUBCASE("c.slli a2, 32") {
    Instruction ins = decode16(0x1602);
    CHECK(ins.mnemonic == Mnemonic::slli);
    CHECK(ins.rd == Reg(12));
    CHECK(ins.rs1 == Reg(12));
    CHECK(ins.imm == 32);
  }
  SUBCASE("c.lui a3, 31") {
    Instruction ins = decode16(0x66FD);
    CHECK(ins.mnemonic == Mnemonic::lui);
    CHECK(ins.rd == Reg(13));
    CHECK(ins.imm == 31 << 12);
  }
  SUBCASE("quadrant 1 funct3 001 is c.addiw on RV64") {
    Instruction ins = decode16(0x3771);
    CHECK(ins.mnemonic == Mnemonic::addiw);
    CHECK(ins.rd == Reg(14));
    CHECK(ins.rs1 == Reg(14));
    CHECK(ins.imm == -4);
  }
  SUBCASE("compressed branch with negative offset") {
    // c.beqz a0, -2
    Instruction ins = decode16(0xDD7D);
    CHECK(ins.mnemonic == Mnemonic::beq);
    CHECK(ins.rs1 == Reg(10));
    CHECK(ins.rs2 == Reg(0));
    CHECK(ins.imm == -2);
  }
  SUBCASE("c.j with negative offset") {
    Instruction ins = decode16(0xBFF5);
    CHECK(ins.mnemonic == Mnemonic::jal);
    CHECK(ins.rd == Reg(0));
    CHECK(ins.imm == -4);
  }
  SUBCASE("the all-zero halfword is opaque") {
    Instruction ins = decode16(0x0000);
    CHECK(ins.mnemonic == Mnemonic::other);
    CHECK(ins.encoded_length == 2);
  }
  SUBCASE("compressed FP loads are not modeled") {
    // c.fld fa2, 0(a0) = 0x2110... use Q2 c.fldsp: funct3=001, op=10
    Instruction ins = decode16(0x2522);
    CHECK(ins.mnemonic == Mnemonic::other);
    CHECK(ins.encoded_length == 2);
  }
}

TEST_CASE("decoding is total and length-faithful") {
  std::mt19937 rng(0xC0FFEE);
  for (int i = 0; i < 20000; ++i) {
    uint32_t w = rng();
    uint16_t low = uint16_t(w & 0xFFFF);
    LengthClass lc = instr_length(low);
    Instruction ins = decode(w, lc);
    if (lc == LengthClass::two) {
      CHECK(ins.encoded_length == 2);
      CHECK(ins.raw == low);
    } else {
      CHECK(ins.encoded_length == 4);
      if (lc == LengthClass::reserved_long)
        CHECK(ins.mnemonic == Mnemonic::other);
    }
    // Every decoded non-opaque instruction carries a classifiable opclass
    // and a printable mnemonic.
    CHECK(!mnemonic_name(ins.mnemonic).empty());
  }
}

TEST_CASE("decode dispatches on length class") {
  CHECK(decode(0x00B50533, LengthClass::four).mnemonic == Mnemonic::add);
  CHECK(decode(0x0001, LengthClass::two).mnemonic == Mnemonic::addi);
  CHECK(decode(0x0000001F, LengthClass::reserved_long).mnemonic ==
        Mnemonic::other);
}
