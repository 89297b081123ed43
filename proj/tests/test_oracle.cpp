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
//
// Replays the reference decoder transcript (produced by an external
// assembler, see tools/gen_decoder_oracle.py) against decode16/decode32
// and demands field-for-field agreement on every encoding.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rvfusion/decode.hpp"

namespace {

using namespace rvfusion;

struct OracleRow {
  uint32_t encoding = 0;
  int length = 0;
  std::string mnemonic;
  std::optional<Reg> rd, rs1, rs2;
  std::optional<int64_t> imm;
  std::string text;  // original assembly, for failure messages
};

std::optional<Reg> parse_reg_field(const std::string& f) {
  if (f == "-") return std::nullopt;
  return static_cast<Reg>(std::stoi(f));
}

std::optional<int64_t> parse_imm_field(const std::string& f) {
  if (f == "-") return std::nullopt;
  return std::stoll(f);
}

std::vector<OracleRow> load_transcript() {
  std::ifstream in(std::string(RVFUSION_TEST_DATA_DIR) +
                   "/decoder_oracle.txt");
  REQUIRE(in.is_open());
  std::vector<OracleRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    OracleRow row;
    std::string enc, rd, rs1, rs2, imm, bar;
    fields >> enc >> row.length >> row.mnemonic >> rd >> rs1 >> rs2 >> imm >>
        bar;
    REQUIRE(bar == "|");
    row.encoding = static_cast<uint32_t>(std::stoul(enc, nullptr, 16));
    row.rd = parse_reg_field(rd);
    row.rs1 = parse_reg_field(rs1);
    row.rs2 = parse_reg_field(rs2);
    row.imm = parse_imm_field(imm);
    std::getline(fields >> std::ws, row.text);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("decoder agrees with the reference transcript on every field") {
  std::vector<OracleRow> rows = load_transcript();
  size_t compressed = 0;
  for (const OracleRow& row : rows) {
    CAPTURE(row.text);
    Instruction ins = row.length == 2
                          ? decode16(static_cast<uint16_t>(row.encoding))
                          : decode32(row.encoding);
    CHECK(mnemonic_name(ins.mnemonic) == row.mnemonic);
    CHECK(ins.rd == row.rd);
    CHECK(ins.rs1 == row.rs1);
    CHECK(ins.rs2 == row.rs2);
    CHECK(ins.imm == row.imm);
    CHECK(int(ins.encoded_length) == row.length);
    CHECK(ins.raw == row.encoding);
    if (row.length == 2) ++compressed;
  }
  // The corpus has to be broad enough to mean something.
  CHECK(rows.size() >= 500);
  CHECK(compressed >= 100);
}

TEST_CASE("length classification matches the transcript") {
  for (const OracleRow& row : load_transcript()) {
    CAPTURE(row.text);
    LengthClass want =
        row.length == 2 ? LengthClass::two : LengthClass::four;
    CHECK(instr_length(static_cast<uint16_t>(row.encoding)) == want);
  }
}
