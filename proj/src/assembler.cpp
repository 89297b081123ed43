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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <vector>

namespace rvfusion {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(uint8_t(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(uint8_t(s.back()))) s.remove_suffix(1);
  return s;
}

const std::map<std::string_view, Mnemonic>& mnemonic_table() {
  static const std::map<std::string_view, Mnemonic> table = [] {
    std::map<std::string_view, Mnemonic> t;
    for (int i = 0; i <= int(Mnemonic::other); ++i) {
      Mnemonic m = Mnemonic(i);
      t[mnemonic_name(m)] = m;
    }
    t.erase("other");
    return t;
  }();
  return table;
}

int64_t parse_imm(std::string_view tok, std::string_view what) {
  tok = trim(tok);
  bool neg = false;
  if (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
    neg = tok[0] == '-';
    tok.remove_prefix(1);
  }
  int base = 10;
  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
    base = 16;
    tok.remove_prefix(2);
  }
  int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.begin(), tok.end(), v, base);
  if (ec != std::errc() || p != tok.end() || tok.empty())
    throw AsmError("bad " + std::string(what) + " '" + std::string(tok) + "'");
  return neg ? -v : v;
}

uint64_t parse_pc_hex(std::string_view tok) {
  tok = trim(tok);
  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X'))
    tok.remove_prefix(2);
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.begin(), tok.end(), v, 16);
  if (ec != std::errc() || p != tok.end() || tok.empty())
    throw AsmError("bad target address '" + std::string(tok) + "'");
  return v;
}

Reg parse_reg(std::string_view tok, bool* is_fp = nullptr) {
  auto r = parse_reg_name(trim(tok), is_fp);
  if (!r) throw AsmError("bad register '" + std::string(tok) + "'");
  return *r;
}

// "imm(reg)" or "(reg)"; the register may be an FP base only never, so the
// base is always parsed as an integer register.
std::pair<int64_t, Reg> parse_mem(std::string_view tok) {
  tok = trim(tok);
  size_t open = tok.find('(');
  if (open == std::string_view::npos || tok.back() != ')')
    throw AsmError("expected imm(reg), got '" + std::string(tok) + "'");
  std::string_view immpart = trim(tok.substr(0, open));
  std::string_view regpart = tok.substr(open + 1, tok.size() - open - 2);
  int64_t imm = immpart.empty() ? 0 : parse_imm(immpart, "offset");
  return {imm, parse_reg(regpart)};
}

void check_range(int64_t v, int64_t lo, int64_t hi, std::string_view what) {
  if (v < lo || v > hi)
    throw AsmError(std::string(what) + " out of range: " + std::to_string(v));
}

int64_t resolve_target(std::string_view tok, std::optional<uint64_t> pc) {
  if (pc) return int64_t(parse_pc_hex(tok)) - int64_t(*pc);
  return parse_imm(tok, "offset");
}

Instruction finish(Instruction ins, uint8_t len) {
  ins.encoded_length = len;
  ins.raw = 0;
  return ins;
}

}  // namespace

Instruction assemble_line(std::string_view text, std::optional<uint64_t> pc) {
  std::string_view line = trim(text);
  if (line.empty()) throw AsmError("empty instruction");

  size_t sp = line.find_first_of(" \t");
  std::string mn(line.substr(0, sp));
  std::transform(mn.begin(), mn.end(), mn.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  std::string_view rest =
      sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));

  std::vector<std::string_view> ops;
  while (!rest.empty()) {
    size_t comma = rest.find(',');
    ops.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  auto want = [&](size_t n) {
    if (ops.size() != n)
      throw AsmError(mn + " takes " + std::to_string(n) + " operands, got " +
                     std::to_string(ops.size()));
  };

  // Raw-bits directives, for encodings outside the modeled subset.
  if (mn == ".word" || mn == ".half") {
    want(1);
    Instruction ins;
    ins.mnemonic = Mnemonic::other;
    uint64_t v = uint64_t(parse_imm(ops[0], "value"));
    ins.raw = uint32_t(v);
    ins.encoded_length = mn == ".word" ? 4 : 2;
    return ins;
  }

  uint8_t len = 4;
  if (mn.size() > 2 && mn[0] == 'c' && mn[1] == '.') {
    len = 2;
    mn.erase(0, 2);
  }

  Instruction ins;
  auto reg3 = [&](Mnemonic m) {
    want(3);
    ins.mnemonic = m;
    ins.rd = parse_reg(ops[0]);
    ins.rs1 = parse_reg(ops[1]);
    ins.rs2 = parse_reg(ops[2]);
    return finish(ins, len);
  };
  auto regimm = [&](Mnemonic m, int64_t lo, int64_t hi) {
    want(3);
    ins.mnemonic = m;
    ins.rd = parse_reg(ops[0]);
    ins.rs1 = parse_reg(ops[1]);
    int64_t imm = parse_imm(ops[2], "immediate");
    check_range(imm, lo, hi, "immediate");
    ins.imm = imm;
    return finish(ins, len);
  };
  auto loadop = [&](Mnemonic m) {
    want(2);
    ins.mnemonic = m;
    bool fp = false;
    ins.rd = parse_reg(ops[0], &fp);
    auto [imm, base] = parse_mem(ops[1]);
    check_range(imm, -2048, 2047, "offset");
    ins.rs1 = base;
    ins.imm = imm;
    return finish(ins, len);
  };
  auto storeop = [&](Mnemonic m) {
    want(2);
    ins.mnemonic = m;
    bool fp = false;
    ins.rs2 = parse_reg(ops[0], &fp);
    auto [imm, base] = parse_mem(ops[1]);
    check_range(imm, -2048, 2047, "offset");
    ins.rs1 = base;
    ins.imm = imm;
    return finish(ins, len);
  };
  auto branch = [&](Mnemonic m, Reg rs1, Reg rs2, std::string_view target) {
    ins.mnemonic = m;
    ins.rs1 = rs1;
    ins.rs2 = rs2;
    int64_t imm = resolve_target(target, pc);
    check_range(imm, -4096, 4095, "branch offset");
    if (imm & 1) throw AsmError("odd branch offset");
    ins.imm = imm;
    return finish(ins, len);
  };
  auto jump = [&](Reg rd, std::string_view target) {
    ins.mnemonic = Mnemonic::jal;
    ins.rd = rd;
    int64_t imm = resolve_target(target, pc);
    check_range(imm, -(1 << 20), (1 << 20) - 1, "jump offset");
    if (imm & 1) throw AsmError("odd jump offset");
    ins.imm = imm;
    return finish(ins, len);
  };
  auto upper = [&](Mnemonic m) {
    want(2);
    ins.mnemonic = m;
    ins.rd = parse_reg(ops[0]);
    int64_t field = parse_imm(ops[1], "immediate");
    check_range(field & ~0xFFFFF, 0, 0, "upper immediate");
    ins.imm = int64_t(int32_t(uint32_t(field) << 12));
    return finish(ins, len);
  };

  // Pseudo-instructions and the compressed spellings whose operand shapes
  // differ from their expanded forms.
  if (mn == "nop") {
    want(0);
    ins.mnemonic = Mnemonic::addi;
    ins.rd = ins.rs1 = Reg(0);
    ins.imm = 0;
    return finish(ins, len);
  }
  if (mn == "li") {
    want(2);
    ins.mnemonic = Mnemonic::addi;
    ins.rd = parse_reg(ops[0]);
    ins.rs1 = Reg(0);
    int64_t imm = parse_imm(ops[1], "immediate");
    check_range(imm, -2048, 2047, "li immediate");
    ins.imm = imm;
    return finish(ins, len);
  }
  if (mn == "mv" && len == 4) {
    want(2);
    ins.mnemonic = Mnemonic::addi;
    ins.rd = parse_reg(ops[0]);
    ins.rs1 = parse_reg(ops[1]);
    ins.imm = 0;
    return finish(ins, len);
  }
  if (mn == "mv") {  // c.mv expands to an add through x0
    want(2);
    ins.mnemonic = Mnemonic::add;
    ins.rd = parse_reg(ops[0]);
    ins.rs1 = Reg(0);
    ins.rs2 = parse_reg(ops[1]);
    return finish(ins, len);
  }
  if (mn == "j") {
    want(1);
    return jump(Reg(0), ops[0]);
  }
  if (mn == "jr") {
    want(1);
    ins.mnemonic = Mnemonic::jalr;
    ins.rd = Reg(0);
    ins.rs1 = parse_reg(ops[0]);
    ins.imm = 0;
    return finish(ins, len);
  }
  if (mn == "ret") {
    want(0);
    ins.mnemonic = Mnemonic::jalr;
    ins.rd = Reg(0);
    ins.rs1 = Reg(1);
    ins.imm = 0;
    return finish(ins, len);
  }
  if (mn == "beqz" || mn == "bnez") {
    want(2);
    return branch(mn == "beqz" ? Mnemonic::beq : Mnemonic::bne,
                  parse_reg(ops[0]), Reg(0), ops[1]);
  }
  if (mn == "addi16sp") {
    want(2);
    if (parse_reg(ops[0]) != 2) throw AsmError("addi16sp writes sp");
    ins.mnemonic = Mnemonic::addi;
    ins.rd = ins.rs1 = Reg(2);
    ins.imm = parse_imm(ops[1], "immediate");
    return finish(ins, len);
  }
  if (mn == "addi4spn") {
    want(3);
    if (parse_reg(ops[1]) != 2) throw AsmError("addi4spn reads sp");
    ins.mnemonic = Mnemonic::addi;
    ins.rd = parse_reg(ops[0]);
    ins.rs1 = Reg(2);
    ins.imm = parse_imm(ops[2], "immediate");
    return finish(ins, len);
  }
  if (mn == "lwsp" || mn == "ldsp" || mn == "swsp" || mn == "sdsp") {
    bool store = mn[0] == 's';
    Mnemonic m = mn[1] == 'w' ? (store ? Mnemonic::sw : Mnemonic::lw)
                              : (store ? Mnemonic::sd : Mnemonic::ld);
    Instruction out = store ? storeop(m) : loadop(m);
    if (out.rs1 != Reg(2)) throw AsmError(mn + " is sp-relative");
    return out;
  }

  auto it = mnemonic_table().find(mn);
  if (it == mnemonic_table().end()) throw AsmError("unknown mnemonic '" + mn + "'");
  Mnemonic m = it->second;

  // Compressed tied-register shapes: "c.addi a5, 16", "c.and a0, a1".
  if (len == 2 && ops.size() == 2) {
    switch (mnemonic_class(m)) {
      case OpClass::int_reg_reg: {
        ins.mnemonic = m;
        ins.rd = ins.rs1 = parse_reg(ops[0]);
        ins.rs2 = parse_reg(ops[1]);
        return finish(ins, len);
      }
      case OpClass::int_reg_imm: {
        ins.mnemonic = m;
        ins.rd = ins.rs1 = parse_reg(ops[0]);
        ins.imm = parse_imm(ops[1], "immediate");
        return finish(ins, len);
      }
      default:
        break;
    }
  }

  switch (mnemonic_class(m)) {
    case OpClass::int_reg_reg:
    case OpClass::mul_family:
    case OpClass::div_family:
      return reg3(m);
    case OpClass::int_reg_imm:
      switch (m) {
        case Mnemonic::slli: case Mnemonic::srli: case Mnemonic::srai:
          return regimm(m, 0, 63);
        case Mnemonic::slliw: case Mnemonic::srliw: case Mnemonic::sraiw:
          return regimm(m, 0, 31);
        default:
          return regimm(m, -2048, 2047);
      }
    case OpClass::load:
    case OpClass::fp_load:
      return loadop(m);
    case OpClass::store:
    case OpClass::fp_store:
      return storeop(m);
    case OpClass::branch:
      want(3);
      return branch(m, parse_reg(ops[0]), parse_reg(ops[1]), ops[2]);
    case OpClass::jal:
      if (ops.size() == 1) return jump(Reg(1), ops[0]);
      want(2);
      return jump(parse_reg(ops[0]), ops[1]);
    case OpClass::jalr: {
      if (ops.size() == 1) {  // "jalr rs" links through ra
        ins.mnemonic = m;
        ins.rd = Reg(1);
        ins.rs1 = parse_reg(ops[0]);
        ins.imm = 0;
        return finish(ins, len);
      }
      want(2);
      ins.mnemonic = m;
      ins.rd = parse_reg(ops[0]);
      auto [imm, base] = parse_mem(ops[1]);
      check_range(imm, -2048, 2047, "offset");
      ins.rs1 = base;
      ins.imm = imm;
      return finish(ins, len);
    }
    case OpClass::lui:
    case OpClass::auipc:
      return upper(m);
    default:
      throw AsmError("unknown mnemonic '" + mn + "'");
  }
}

namespace {

std::string hex_u64(uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

}  // namespace

std::string disassemble(const Instruction& ins, std::optional<uint64_t> pc) {
  char buf[48];
  if (ins.mnemonic == Mnemonic::other) {
    if (ins.encoded_length == 2)
      std::snprintf(buf, sizeof buf, ".half 0x%04x", ins.raw & 0xFFFF);
    else
      std::snprintf(buf, sizeof buf, ".word 0x%08x", ins.raw);
    return buf;
  }

  // The canonical nop keeps its own compressed spelling.
  if (ins.encoded_length == 2 && ins.is(Mnemonic::addi) && ins.rd == Reg(0) &&
      ins.rs1 == Reg(0) && ins.imm == 0)
    return "c.nop";

  std::string out;
  if (ins.encoded_length == 2) out += "c.";
  out += mnemonic_name(ins.mnemonic);
  out += ' ';

  auto target = [&](int64_t imm) {
    if (pc) return hex_u64(uint64_t(int64_t(*pc) + imm));
    return std::to_string(imm);
  };

  switch (ins.opclass()) {
    case OpClass::int_reg_reg:
    case OpClass::mul_family:
    case OpClass::div_family:
      out += std::string(reg_name(*ins.rd)) + ", " +
             std::string(reg_name(*ins.rs1)) + ", " +
             std::string(reg_name(*ins.rs2));
      break;
    case OpClass::int_reg_imm:
      out += std::string(reg_name(*ins.rd)) + ", " +
             std::string(reg_name(*ins.rs1)) + ", " + std::to_string(*ins.imm);
      break;
    case OpClass::load:
    case OpClass::fp_load: {
      bool fp = ins.opclass() == OpClass::fp_load;
      out += std::string(fp ? fp_reg_name(*ins.rd) : reg_name(*ins.rd)) + ", " +
             std::to_string(*ins.imm) + "(" + std::string(reg_name(*ins.rs1)) +
             ")";
      break;
    }
    case OpClass::store:
    case OpClass::fp_store: {
      bool fp = ins.opclass() == OpClass::fp_store;
      out += std::string(fp ? fp_reg_name(*ins.rs2) : reg_name(*ins.rs2)) +
             ", " + std::to_string(*ins.imm) + "(" +
             std::string(reg_name(*ins.rs1)) + ")";
      break;
    }
    case OpClass::branch:
      out += std::string(reg_name(*ins.rs1)) + ", " +
             std::string(reg_name(*ins.rs2)) + ", " + target(*ins.imm);
      break;
    case OpClass::jal:
      out += std::string(reg_name(*ins.rd)) + ", " + target(*ins.imm);
      break;
    case OpClass::jalr:
      out += std::string(reg_name(*ins.rd)) + ", " + std::to_string(*ins.imm) +
             "(" + std::string(reg_name(*ins.rs1)) + ")";
      break;
    case OpClass::lui:
    case OpClass::auipc: {
      std::snprintf(buf, sizeof buf, "0x%x",
                    unsigned((uint64_t(*ins.imm) >> 12) & 0xFFFFF));
      out += std::string(reg_name(*ins.rd)) + ", " + buf;
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace rvfusion
