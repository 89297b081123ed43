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

#include "rvfusion/assembler.hpp"

#include "doctest.h"
#include "rvfusion/instruction.hpp"
#include "support/generators.hpp"

using namespace rvfusion;

TEST_CASE("basic forms assemble to expected fields") {
  SUBCASE("register-register") {
    Instruction ins = assemble_line("add a5, s0, a5");
    CHECK(ins.mnemonic == Mnemonic::add);
    CHECK(ins.rd == Reg(15));
    CHECK(ins.rs1 == Reg(8));
    CHECK(ins.rs2 == Reg(15));
    CHECK(ins.encoded_length == 4);
  }
  SUBCASE("hex shift amount") {
    Instruction ins = assemble_line("slli a5, a5, 0x20");
    CHECK(ins.mnemonic == Mnemonic::slli);
    CHECK(ins.imm == 32);
  }
  SUBCASE("load with displacement") {
    Instruction ins = assemble_line("ld a3, 0(a4)");
    CHECK(ins.mnemonic == Mnemonic::ld);
    CHECK(ins.rd == Reg(13));
    CHECK(ins.rs1 == Reg(14));
    CHECK(ins.imm == 0);
  }
  SUBCASE("store operand order is rs2, imm(rs1)") {
    Instruction ins = assemble_line("sw a0, 80(sp)");
    CHECK(ins.mnemonic == Mnemonic::sw);
    CHECK(ins.rs2 == Reg(10));
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.imm == 80);
  }
  SUBCASE("x-numbered and ABI names agree") {
    CHECK(assemble_line("add x10, x2, x8").semantic_equals(
        assemble_line("add a0, sp, s0")));
    CHECK(assemble_line("add a0, sp, fp").semantic_equals(
        assemble_line("add a0, sp, s0")));
  }
  SUBCASE("fp memory ops use the fp file") {
    Instruction ins = assemble_line("fld fa0, 8(a1)");
    CHECK(ins.mnemonic == Mnemonic::fld);
    CHECK(ins.rd == Reg(10));
    CHECK(ins.rs1 == Reg(11));
  }
}

TEST_CASE("pseudo-instructions expand") {
  CHECK(assemble_line("nop").semantic_equals(assemble_line("addi x0, x0, 0")));
  CHECK(assemble_line("li a4, 1").semantic_equals(
      assemble_line("addi a4, x0, 1")));
  CHECK(assemble_line("mv a0, a1").semantic_equals(
      assemble_line("addi a0, a1, 0")));
  CHECK(assemble_line("ret").semantic_equals(assemble_line("jalr x0, 0(ra)")));
  CHECK(assemble_line("j 16").semantic_equals(assemble_line("jal x0, 16")));
  SUBCASE("branch-on-zero forms") {
    Instruction ins = assemble_line("bnez a5, 140");
    CHECK(ins.mnemonic == Mnemonic::bne);
    CHECK(ins.rs1 == Reg(15));
    CHECK(ins.rs2 == Reg(0));
    CHECK(ins.imm == 140);
  }
}

TEST_CASE("pc-relative targets are absolute addresses when pc is known") {
  Instruction ins = assemble_line("bnez a5, 35b00", 0x35a74);
  CHECK(ins.mnemonic == Mnemonic::bne);
  CHECK(ins.imm == 0x8C);
  Instruction back = assemble_line("bne a3, a5, 36ee6", 0x36ef6);
  CHECK(back.imm == -16);
  SUBCASE("round-trip through disassemble keeps the target") {
    std::string text = disassemble(ins, 0x35a74);
    CHECK(assemble_line(text, 0x35a74).semantic_equals(ins));
  }
}

TEST_CASE("compressed spellings") {
  SUBCASE("tied two-operand arithmetic") {
    Instruction ins = assemble_line("c.addi a5, 16");
    CHECK(ins.semantic_equals([] {
      Instruction x = assemble_line("addi a5, a5, 16");
      x.encoded_length = 2;
      return x;
    }()));
  }
  SUBCASE("tied two-operand register op") {
    Instruction ins = assemble_line("c.xor a4, a2");
    CHECK(ins.mnemonic == Mnemonic::xor_);
    CHECK(ins.rd == Reg(14));
    CHECK(ins.rs1 == Reg(14));
    CHECK(ins.rs2 == Reg(12));
    CHECK(ins.encoded_length == 2);
  }
  SUBCASE("c.mv goes through x0") {
    Instruction ins = assemble_line("c.mv a0, a1");
    CHECK(ins.mnemonic == Mnemonic::add);
    CHECK(ins.rs1 == Reg(0));
    CHECK(ins.rs2 == Reg(11));
    CHECK(ins.encoded_length == 2);
  }
  SUBCASE("stack-pointer loads and stores") {
    Instruction ins = assemble_line("c.ldsp s0, 40(sp)");
    CHECK(ins.mnemonic == Mnemonic::ld);
    CHECK(ins.rd == Reg(8));
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.imm == 40);
    CHECK(ins.encoded_length == 2);
    CHECK_THROWS_AS(assemble_line("c.ldsp s0, 40(a0)"), AsmError);
  }
  SUBCASE("frame-pointer adjust forms") {
    Instruction ins = assemble_line("c.addi16sp sp, -64");
    CHECK(ins.mnemonic == Mnemonic::addi);
    CHECK(ins.rd == Reg(2));
    CHECK(ins.rs1 == Reg(2));
    CHECK(ins.imm == -64);
    CHECK_THROWS_AS(assemble_line("c.addi16sp a0, -64"), AsmError);
  }
}

TEST_CASE("directives produce opaque instructions") {
  Instruction word = assemble_line(".word 0xffffffff");
  CHECK(word.mnemonic == Mnemonic::other);
  CHECK(word.raw == 0xFFFFFFFF);
  CHECK(word.encoded_length == 4);
  Instruction half = assemble_line(".half 0x0000");
  CHECK(half.mnemonic == Mnemonic::other);
  CHECK(half.encoded_length == 2);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(assemble_line("frobnicate x1"), AsmError);
  CHECK_THROWS_AS(assemble_line("add a0, a1"), AsmError);
  CHECK_THROWS_AS(assemble_line("add a0, a1, 5"), AsmError);
  CHECK_THROWS_AS(assemble_line("addi a0, a1, 5000"), AsmError);
  CHECK_THROWS_AS(assemble_line("li a0, 4096"), AsmError);
  CHECK_THROWS_AS(assemble_line("slli a0, a1, 64"), AsmError);
  CHECK_THROWS_AS(assemble_line("slliw a0, a1, 32"), AsmError);
  CHECK_THROWS_AS(assemble_line("lw a0, 0(q9)"), AsmError);
  CHECK_THROWS_AS(assemble_line("beq a0, a1, 3"), AsmError);  // odd offset
  CHECK_THROWS_AS(assemble_line(""), AsmError);
}

TEST_CASE("disassemble produces canonical text") {
  CHECK(disassemble(assemble_line("add a0, a0, a1")) == "add a0, a0, a1");
  CHECK(disassemble(assemble_line("c.nop")) == "c.nop");
  CHECK(disassemble(assemble_line(".word 0xffffffff")) == ".word 0xffffffff");
  CHECK(disassemble(assemble_line("lw a4, -8(t4)")) == "lw a4, -8(t4)");
  CHECK(disassemble(assemble_line("fsd fa0, 16(sp)")) == "fsd fa0, 16(sp)");
  CHECK(disassemble(assemble_line("lui a0, 0x12345")) == "lui a0, 0x12345");
}

TEST_CASE("random instructions round-trip through text") {
  testsupport::Gen g(0xA55E7);
  size_t checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Instruction ins = testsupport::random_op(g, true);
    if (ins.mnemonic == Mnemonic::other) continue;  // covered by directives
    ++checked;
    std::string text = disassemble(ins);
    CAPTURE(text);
    Instruction back = assemble_line(text);
    CHECK(back.semantic_equals(ins));
    // The same fields spelled compressed survive as a 2-byte encoding.
    Instruction c = ins;
    c.encoded_length = 2;
    Instruction cback = assemble_line(disassemble(c));
    CHECK(cback.semantic_equals(c));
  }
  CHECK(checked > 8000);
}
