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

#include "rvfusion/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "rvfusion/assembler.hpp"
#include "rvfusion/decode.hpp"

namespace rvfusion {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(uint8_t(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(uint8_t(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  size_t hash = s.find('#');
  if (hash != std::string_view::npos) s = s.substr(0, hash);
  return trim(s);
}

uint64_t parse_hex_field(std::string_view tok, size_t line,
                         std::string_view what) {
  if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X'))
    tok.remove_prefix(2);
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.begin(), tok.end(), v, 16);
  if (ec != std::errc() || p != tok.end() || tok.empty())
    throw TraceError(line, "bad " + std::string(what) + " '" +
                               std::string(tok) + "'");
  return v;
}

uint64_t parse_count_field(std::string_view tok, size_t line) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.begin(), tok.end(), v, 10);
  if (ec != std::errc() || p != tok.end() || tok.empty())
    throw TraceError(line, "bad count '" + std::string(tok) + "'");
  if (v == 0) throw TraceError(line, "count must be positive");
  return v;
}

void finish_items(std::vector<WeightedInstruction>& items) {
  std::sort(items.begin(), items.end(),
            [](const WeightedInstruction& a, const WeightedInstruction& b) {
              return a.pc < b.pc;
            });
}

class DuplicateCheck {
 public:
  void add(uint64_t pc, size_t line) {
    if (!seen_.insert(pc).second) {
      char buf[24];
      std::snprintf(buf, sizeof buf, "%llx", (unsigned long long)pc);
      throw TraceError(line, std::string("duplicate pc ") + buf);
    }
  }

 private:
  std::unordered_set<uint64_t> seen_;
};

}  // namespace

std::vector<WeightedInstruction> parse_trace(std::istream& in) {
  std::vector<WeightedInstruction> items;
  DuplicateCheck dups;
  std::string raw_line;
  size_t lineno = 0;
  while (std::getline(in, raw_line)) {
    ++lineno;
    std::string_view line = strip_comment(raw_line);
    if (line.empty()) continue;

    std::string_view fields[3];
    size_t nfields = 0;
    std::string_view rest = line;
    while (!rest.empty()) {
      size_t sp = rest.find_first_of(" \t");
      std::string_view tok = rest.substr(0, sp);
      if (nfields == 3)
        throw TraceError(lineno, "expected PC ENC COUNT, got extra fields");
      fields[nfields++] = tok;
      if (sp == std::string_view::npos) break;
      rest = trim(rest.substr(sp));
    }
    if (nfields != 3)
      throw TraceError(lineno, "expected PC ENC COUNT");

    uint64_t pc = parse_hex_field(fields[0], lineno, "pc");
    std::string_view enc = fields[1];
    if (enc.size() != 4 && enc.size() != 8)
      throw TraceError(lineno, "encoding must be 4 or 8 hex digits");
    uint64_t enc_value = parse_hex_field(enc, lineno, "encoding");
    uint64_t count = parse_count_field(fields[2], lineno);

    LengthClass len = instr_length(uint16_t(enc_value & 0xFFFF));
    if (len == LengthClass::reserved_long)
      throw TraceError(lineno, "encoding is longer than 32 bits");
    uint8_t expect_digits = len == LengthClass::two ? 4 : 8;
    if (enc.size() != expect_digits)
      throw TraceError(lineno, "encoding width disagrees with its length bits");

    dups.add(pc, lineno);
    items.push_back({pc, decode(uint32_t(enc_value), len), count});
  }
  finish_items(items);
  return items;
}

std::vector<WeightedInstruction> parse_asm_trace(std::istream& in) {
  std::vector<WeightedInstruction> items;
  DuplicateCheck dups;
  std::string raw_line;
  size_t lineno = 0;
  std::optional<uint64_t> auto_pc;
  while (std::getline(in, raw_line)) {
    ++lineno;
    std::string_view line = strip_comment(raw_line);
    if (line.empty()) continue;

    if (line.substr(0, 5) == "@base") {
      auto_pc = parse_hex_field(trim(line.substr(5)), lineno, "base pc");
      continue;
    }

    // Optional "; count=N" suffix.
    uint64_t count = 1;
    size_t semi = line.find(';');
    if (semi != std::string_view::npos) {
      std::string_view suffix = trim(line.substr(semi + 1));
      if (suffix.substr(0, 6) != "count=")
        throw TraceError(lineno, "expected count=N after ';'");
      count = parse_count_field(trim(suffix.substr(6)), lineno);
      line = trim(line.substr(0, semi));
    }

    uint64_t pc;
    std::string_view asm_text;
    if (auto_pc) {
      pc = *auto_pc;
      asm_text = line;
    } else {
      size_t colon = line.find(':');
      if (colon == std::string_view::npos)
        throw TraceError(lineno, "expected 'PC: instruction' (or @base first)");
      pc = parse_hex_field(trim(line.substr(0, colon)), lineno, "pc");
      asm_text = trim(line.substr(colon + 1));
    }

    Instruction ins;
    try {
      ins = assemble_line(asm_text, pc);
    } catch (const AsmError& e) {
      throw TraceError(lineno, e.what());
    }
    dups.add(pc, lineno);
    items.push_back({pc, ins, count});
    if (auto_pc) *auto_pc += ins.encoded_length;
  }
  finish_items(items);
  return items;
}

std::vector<Block> segment_blocks(
    const std::vector<WeightedInstruction>& items) {
  std::vector<Block> blocks;
  Block current;
  uint64_t next_pc = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    const WeightedInstruction& wi = items[i];
    if (!current.items.empty() && wi.pc != next_pc) {
      blocks.push_back(std::move(current));
      current = Block{};
    }
    if (current.items.empty()) current.first = i;
    current.items.push_back(wi);
    next_pc = wi.pc + wi.ins.encoded_length;
    if (wi.ins.is_control_flow()) {
      blocks.push_back(std::move(current));
      current = Block{};
    }
  }
  if (!current.items.empty()) blocks.push_back(std::move(current));
  return blocks;
}

}  // namespace rvfusion
