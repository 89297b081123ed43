#!/usr/bin/env python3
# Copyright 2026 The rvfusion Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates tests/data/decoder_oracle.txt.

Every case is built as structured intent (mnemonic + operand fields), rendered
to assembly, and encoded by clang's RISC-V MC layer, which acts as the
independent reference encoder. The transcript pairs each reference encoding
with the intended fields, so the decoder test never depends on this repo's own
assembler or decode tables.

Line format:
    ENC_HEX LEN MNEMONIC RD RS1 RS2 IMM | asm text
with '-' for fields the instruction does not carry.
"""

import struct
import subprocess
import sys
import tempfile
from pathlib import Path

CLANG = "clang"


class Case:
    def __init__(self, asm, mn, rd=None, rs1=None, rs2=None, imm=None):
        self.asm = asm
        self.mn = mn
        self.rd = rd
        self.rs1 = rs1
        self.rs2 = rs2
        self.imm = imm


def sext(value, bits):
    sign = 1 << (bits - 1)
    return (value & (sign - 1)) - (value & sign)


def upper_imm(field20):
    """Instruction.imm convention for lui/auipc: the 32-bit value."""
    return sext((field20 & 0xFFFFF) << 12, 32)


X = [f"x{i}" for i in range(32)]
F = [f"f{i}" for i in range(32)]


def reg_reg_cases():
    mnemonics = ["add", "sub", "sll", "slt", "sltu", "srl", "sra", "or",
                 "and", "xor", "addw", "subw", "sllw", "srlw", "sraw",
                 "mul", "mulh", "mulhsu", "mulhu", "mulw",
                 "div", "divu", "rem", "remu", "divw", "divuw", "remw",
                 "remuw"]
    combos = [(10, 10, 11), (0, 1, 2), (31, 30, 29), (5, 6, 7),
              (15, 20, 25), (8, 0, 31), (20, 21, 22)]
    out = []
    for m in mnemonics:
        for rd, rs1, rs2 in combos:
            out.append(Case(f"{m} {X[rd]}, {X[rs1]}, {X[rs2]}",
                            m, rd=rd, rs1=rs1, rs2=rs2))
    return out


def reg_imm_cases():
    arith = ["addi", "slti", "sltiu", "xori", "ori", "andi", "addiw"]
    combos = [(10, 11, 42), (0, 1, -1), (31, 31, 2047), (5, 6, -2048),
              (15, 0, 0)]
    out = []
    for m in arith:
        for rd, rs1, imm in combos:
            out.append(Case(f"{m} {X[rd]}, {X[rs1]}, {imm}",
                            m, rd=rd, rs1=rs1, imm=imm))
    for m in ["slli", "srli", "srai"]:
        for rd, rs1, sh in [(10, 11, 1), (5, 6, 31), (12, 13, 32),
                            (31, 1, 63), (15, 15, 0)]:
            out.append(Case(f"{m} {X[rd]}, {X[rs1]}, {sh}",
                            m, rd=rd, rs1=rs1, imm=sh))
    for m in ["slliw", "srliw", "sraiw"]:
        for rd, rs1, sh in [(10, 11, 1), (5, 6, 15), (31, 1, 31),
                            (15, 15, 0)]:
            out.append(Case(f"{m} {X[rd]}, {X[rs1]}, {sh}",
                            m, rd=rd, rs1=rs1, imm=sh))
    return out


def memory_cases():
    out = []
    loads = ["lb", "lh", "lw", "ld", "lbu", "lhu", "lwu"]
    combos = [(10, 11, 0), (0, 2, 8), (31, 8, 2047), (5, 6, -2048),
              (14, 29, -4)]
    for m in loads:
        for rd, rs1, imm in combos:
            out.append(Case(f"{m} {X[rd]}, {imm}({X[rs1]})",
                            m, rd=rd, rs1=rs1, imm=imm))
    stores = ["sb", "sh", "sw", "sd"]
    for m in stores:
        for rs2, rs1, imm in combos:
            out.append(Case(f"{m} {X[rs2]}, {imm}({X[rs1]})",
                            m, rs1=rs1, rs2=rs2, imm=imm))
    for m, fcombos in [("flw", combos), ("fld", combos)]:
        for rd, rs1, imm in fcombos:
            out.append(Case(f"{m} {F[rd]}, {imm}({X[rs1]})",
                            m, rd=rd, rs1=rs1, imm=imm))
    for m in ["fsw", "fsd"]:
        for rs2, rs1, imm in combos:
            out.append(Case(f"{m} {F[rs2]}, {imm}({X[rs1]})",
                            m, rs1=rs1, rs2=rs2, imm=imm))
    return out


def upper_cases():
    out = []
    for m in ["lui", "auipc"]:
        for rd, field in [(10, 1), (1, 0xFFFFF), (31, 0x12345),
                          (5, 0x80000), (15, 0x7FFFF), (0, 4)]:
            out.append(Case(f"{m} {X[rd]}, {field}",
                            m, rd=rd, imm=upper_imm(field)))
    return out


def jalr_cases():
    out = []
    for rd, rs1, imm in [(0, 1, 0), (1, 10, 16), (10, 10, -2048),
                         (31, 5, 2047), (0, 31, -4)]:
        out.append(Case(f"jalr {X[rd]}, {imm}({X[rs1]})",
                        "jalr", rd=rd, rs1=rs1, imm=imm))
    return out


class Branchy:
    """A control-transfer case whose offset is fixed up after layout."""

    def __init__(self, fmt, mn, rd=None, rs1=None, rs2=None):
        self.fmt = fmt          # format string taking the label
        self.mn = mn
        self.rd = rd
        self.rs1 = rs1
        self.rs2 = rs2


def branch_cases():
    """Branches and jumps, interleaved with nop padding so offsets vary."""
    out = []
    branches = [("beq", 10, 11), ("bne", 0, 1), ("blt", 30, 31),
                ("bge", 5, 6), ("bltu", 12, 13), ("bgeu", 8, 9),
                ("beq", 31, 0), ("bne", 15, 15)]
    for m, rs1, rs2 in branches:
        out.append(Branchy(f"{m} {X[rs1]}, {X[rs2]}, {{}}", m,
                           rs1=rs1, rs2=rs2))
        out.append(Case("nop", "addi", rd=0, rs1=0, imm=0))
    jumps = [("jal", 0), ("jal", 1), ("jal", 10), ("jal", 31)]
    for m, rd in jumps:
        out.append(Branchy(f"{m} {X[rd]}, {{}}", m, rd=rd))
        out.append(Case("nop", "addi", rd=0, rs1=0, imm=0))
    return out


def rvc_cases():
    out = []
    c = out.append
    # CI arithmetic (tied destination)
    for rd, imm in [(1, 1), (2, -1), (8, 31), (15, -32), (31, 5), (10, 16)]:
        c(Case(f"c.addi {X[rd]}, {imm}", "addi", rd=rd, rs1=rd, imm=imm))
    for rd, imm in [(1, 1), (8, 31), (15, -32), (31, -1), (10, 7)]:
        c(Case(f"c.addiw {X[rd]}, {imm}", "addiw", rd=rd, rs1=rd, imm=imm))
    for rd, imm in [(1, 0), (8, 31), (15, -32), (31, -1), (10, 13)]:
        c(Case(f"c.li {X[rd]}, {imm}", "addi", rd=rd, rs1=0, imm=imm))
    for rd, field in [(1, 1), (8, 31), (15, 0xFFFFF), (31, 0xFFFE0),
                      (10, 16)]:
        c(Case(f"c.lui {X[rd]}, {field}", "lui", rd=rd, imm=upper_imm(field)))
    for rd, sh in [(1, 1), (8, 31), (15, 32), (31, 63), (10, 2)]:
        c(Case(f"c.slli {X[rd]}, {sh}", "slli", rd=rd, rs1=rd, imm=sh))
    for m in ["c.srli", "c.srai"]:
        for rd, sh in [(8, 1), (9, 31), (12, 32), (15, 63)]:
            c(Case(f"{m} {X[rd]}, {sh}", m[2:], rd=rd, rs1=rd, imm=sh))
    for rd, imm in [(8, 1), (9, -32), (12, 31), (15, -1)]:
        c(Case(f"c.andi {X[rd]}, {imm}", "andi", rd=rd, rs1=rd, imm=imm))
    # CA register ops
    for m in ["sub", "xor", "or", "and", "subw", "addw"]:
        for rd, rs2 in [(8, 9), (15, 8), (12, 12), (10, 14)]:
            c(Case(f"c.{m} {X[rd]}, {X[rs2]}",
                   m, rd=rd, rs1=rd, rs2=rs2))
    # CR: moves, adds, indirect jumps
    for rd, rs2 in [(1, 2), (8, 31), (15, 10), (31, 1)]:
        c(Case(f"c.mv {X[rd]}, {X[rs2]}", "add", rd=rd, rs1=0, rs2=rs2))
    for rd, rs2 in [(1, 2), (8, 31), (15, 10), (31, 1)]:
        c(Case(f"c.add {X[rd]}, {X[rs2]}", "add", rd=rd, rs1=rd, rs2=rs2))
    for rs1 in [1, 5, 10, 31]:
        c(Case(f"c.jr {X[rs1]}", "jalr", rd=0, rs1=rs1, imm=0))
    for rs1 in [5, 10, 15, 31]:
        c(Case(f"c.jalr {X[rs1]}", "jalr", rd=1, rs1=rs1, imm=0))
    c(Case("c.nop", "addi", rd=0, rs1=0, imm=0))
    # Stack frame helpers
    for rd, imm in [(8, 4), (9, 8), (15, 1020), (10, 256)]:
        c(Case(f"c.addi4spn {X[rd]}, x2, {imm}", "addi", rd=rd, rs1=2,
               imm=imm))
    for imm in [16, -64, 496, -512]:
        c(Case(f"c.addi16sp x2, {imm}", "addi", rd=2, rs1=2, imm=imm))
    # Register-relative memory
    for rd, rs1, imm in [(8, 9, 0), (9, 8, 4), (12, 13, 124), (15, 15, 64)]:
        c(Case(f"c.lw {X[rd]}, {imm}({X[rs1]})", "lw", rd=rd, rs1=rs1,
               imm=imm))
    for rd, rs1, imm in [(8, 9, 0), (9, 8, 8), (12, 13, 248), (15, 15, 64)]:
        c(Case(f"c.ld {X[rd]}, {imm}({X[rs1]})", "ld", rd=rd, rs1=rs1,
               imm=imm))
    for rs2, rs1, imm in [(8, 9, 0), (9, 8, 4), (12, 13, 124), (15, 15, 64)]:
        c(Case(f"c.sw {X[rs2]}, {imm}({X[rs1]})", "sw", rs1=rs1, rs2=rs2,
               imm=imm))
    for rs2, rs1, imm in [(8, 9, 0), (9, 8, 8), (12, 13, 248), (15, 15, 64)]:
        c(Case(f"c.sd {X[rs2]}, {imm}({X[rs1]})", "sd", rs1=rs1, rs2=rs2,
               imm=imm))
    # Stack-pointer-relative memory
    for rd, imm in [(1, 0), (8, 4), (15, 252), (31, 64)]:
        c(Case(f"c.lwsp {X[rd]}, {imm}(x2)", "lw", rd=rd, rs1=2, imm=imm))
    for rd, imm in [(1, 0), (8, 8), (15, 504), (31, 64)]:
        c(Case(f"c.ldsp {X[rd]}, {imm}(x2)", "ld", rd=rd, rs1=2, imm=imm))
    for rs2, imm in [(0, 0), (8, 4), (15, 252), (31, 64)]:
        c(Case(f"c.swsp {X[rs2]}, {imm}(x2)", "sw", rs1=2, rs2=rs2, imm=imm))
    for rs2, imm in [(0, 0), (8, 8), (15, 504), (31, 64)]:
        c(Case(f"c.sdsp {X[rs2]}, {imm}(x2)", "sd", rs1=2, rs2=rs2, imm=imm))
    # Compressed control flow, padded with c.nop so offsets vary
    for m, mn in [("c.beqz", "beq"), ("c.bnez", "bne")]:
        for rs1 in [8, 10, 13, 15]:
            out.append(Branchy(f"{m} {X[rs1]}, {{}}", mn, rs1=rs1, rs2=0))
            c(Case("c.nop", "addi", rd=0, rs1=0, imm=0))
    for _ in range(3):
        out.append(Branchy("c.j {}", "jal", rd=0))
        c(Case("c.nop", "addi", rd=0, rs1=0, imm=0))
    return out


def layout_with_targets(cases, size):
    """Renders cases with a label per instruction; control transfers target
    a nearby label (alternating backward/forward) so offsets vary."""
    n = len(cases)
    lines = []
    resolved = []
    n_branchy = 0
    for i, case in enumerate(cases):
        lines.append(f"L{i}:")
        if isinstance(case, Branchy):
            n_branchy += 1
            delta = 1 + (n_branchy % 5)
            j = i + delta if (n_branchy % 2 == 0 and i + delta < n) \
                else max(i - delta, 0)
            text = case.fmt.format(f"L{j}")
            lines.append(text)
            resolved.append(Case(text, case.mn, rd=case.rd, rs1=case.rs1,
                                 rs2=case.rs2, imm=(j - i) * size))
        else:
            lines.append(case.asm)
            resolved.append(case)
    return lines, resolved


def assemble(lines, march):
    asm = "\n".join([".text"] + lines) + "\n"
    with tempfile.TemporaryDirectory() as tmp:
        src = Path(tmp) / "batch.s"
        obj = Path(tmp) / "batch.o"
        src.write_text(asm)
        subprocess.run(
            [CLANG, "--target=riscv64", f"-march={march}", "-mno-relax",
             "-c", str(src), "-o", str(obj)],
            check=True, capture_output=True)
        return extract_text(obj.read_bytes())


def extract_text(elf):
    (shoff,) = struct.unpack_from("<Q", elf, 0x28)
    (shentsize, shnum, shstrndx) = struct.unpack_from("<HHH", elf, 0x3A)

    def section(i):
        base = shoff + i * shentsize
        (name_off,) = struct.unpack_from("<I", elf, base)
        (offset,) = struct.unpack_from("<Q", elf, base + 0x18)
        (size,) = struct.unpack_from("<Q", elf, base + 0x20)
        return name_off, offset, size

    _, str_off, _ = section(shstrndx)
    for i in range(shnum):
        name_off, offset, size = section(i)
        end = elf.index(b"\0", str_off + name_off)
        if elf[str_off + name_off:end] == b".text":
            return elf[offset:offset + size]
    raise RuntimeError(".text not found")


def split_encodings(blob):
    encs = []
    pos = 0
    while pos < len(blob):
        low = struct.unpack_from("<H", blob, pos)[0]
        if (low & 0x3) == 0x3:
            encs.append((struct.unpack_from("<I", blob, pos)[0], 4))
            pos += 4
        else:
            encs.append((low, 2))
            pos += 2
    return encs


def field(v):
    return "-" if v is None else str(v)


def main():
    out_path = Path(__file__).resolve().parent.parent / "tests" / "data" / \
        "decoder_oracle.txt"
    batches = [
        (reg_reg_cases() + reg_imm_cases() + memory_cases() + upper_cases()
         + jalr_cases() + branch_cases(), "rv64g", 4),
        (rvc_cases(), "rv64gc", 2),
    ]
    records = []
    for cases, march, size in batches:
        lines, resolved = layout_with_targets(cases, size)
        encs = split_encodings(assemble(lines, march))
        if len(encs) != len(resolved):
            raise RuntimeError(
                f"{march}: {len(encs)} encodings for {len(resolved)} cases")
        for (enc, enc_len), case in zip(encs, resolved):
            if enc_len != size:
                raise RuntimeError(
                    f"{march}: '{case.asm}' came out {enc_len} bytes")
            width = 8 if enc_len == 4 else 4
            records.append(
                f"{enc:0{width}x} {enc_len} {case.mn} {field(case.rd)} "
                f"{field(case.rs1)} {field(case.rs2)} {field(case.imm)} | "
                f"{case.asm}")
    n_rvc = sum(1 for r in records if r.split()[1] == "2")
    header = [
        "# Reference decoder transcript. Regenerate with",
        "# tools/gen_decoder_oracle.py (requires clang with a riscv64",
        "# target). Format: ENC_HEX LEN MNEMONIC RD RS1 RS2 IMM | asm",
        f"# {len(records)} encodings, {n_rvc} compressed",
    ]
    out_path.write_text("\n".join(header + records) + "\n")
    print(f"wrote {out_path}: {len(records)} encodings ({n_rvc} compressed)")


if __name__ == "__main__":
    sys.exit(main())
