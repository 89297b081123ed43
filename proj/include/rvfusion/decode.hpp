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

#include "rvfusion/instruction.hpp"

namespace rvfusion {

enum class LengthClass : uint8_t {
  two,           // compressed, 2 bytes
  four,          // standard, 4 bytes
  reserved_long, // low five bits all set: >= 48-bit encoding, unsupported
};

/// Classifies an encoding's length from its low halfword, without decoding.
LengthClass instr_length(uint16_t low_half);

/// Decodes a 4-byte encoding. Total: unrecognized opcodes come back with
/// mnemonic/opclass `other`, raw preserved, no operand fields.
Instruction decode32(uint32_t word);

/// Decodes a 2-byte RVC encoding into its expanded form (encoded_length 2).
/// Also total; reserved and out-of-scope encodings come back `other`.
Instruction decode16(uint16_t half);

/// Decodes from raw bits given the length class of the low halfword.
/// For 2-byte encodings only the low halfword of `word` is consumed.
Instruction decode(uint32_t word, LengthClass len);

}  // namespace rvfusion
