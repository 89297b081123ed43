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

// Reference implementations kept deliberately separate from the library:
// pattern predicates, greedy selection, and liveness are re-derived here in
// a plain brute-force style so the tests can cross-check the production
// algorithms against an independent second opinion.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include "rvfusion/fusion.hpp"
#include "rvfusion/instruction.hpp"
#include "rvfusion/trace.hpp"

namespace testsupport {

using rvfusion::Block;
using rvfusion::FusionConfig;
using rvfusion::IdiomKind;
using rvfusion::Instruction;
using rvfusion::Mnemonic;
using rvfusion::OpClass;
using rvfusion::Reg;

inline bool has_dest(const Instruction& x, Reg r) {
  return x.rd.has_value() && *x.rd == r;
}

inline bool nonzero_dest(const Instruction& x) {
  return x.rd.has_value() && *x.rd != 0;
}

inline bool reads(const Instruction& x, Reg r) {
  return (x.rs1 && *x.rs1 == r) || (x.rs2 && *x.rs2 == r);
}

inline bool small_shift(const Instruction& x) {
  return x.imm && *x.imm >= 1 && *x.imm <= 3;
}

// Arity and writeback count for one idiom instance, or nullopt. `third` is
// the instruction after the pair when the block has one.
inline std::optional<std::pair<int, int>> ref_match(
    const Instruction& a, const Instruction& b, const Instruction* third,
    IdiomKind kind) {
  using K = IdiomKind;
  const bool a_nz = nonzero_dest(a);
  switch (kind) {
    case K::lea:
      if (a_nz && a.is(Mnemonic::slli) && small_shift(a) &&
          b.is(Mnemonic::add) && has_dest(b, *a.rd) && reads(b, *a.rd))
        return {{2, 1}};
      break;
    case K::indexed_load:
      if (a_nz && a.is(Mnemonic::add) && b.is_load() && has_dest(b, *a.rd) &&
          b.rs1 == a.rd && b.imm == 0)
        return {{2, 1}};
      break;
    case K::indexed_load_long:
      if (third && a_nz && a.is(Mnemonic::slli) && small_shift(a) &&
          b.is(Mnemonic::add) && has_dest(b, *a.rd) && reads(b, *a.rd) &&
          third->is_load() && has_dest(*third, *a.rd) && third->rs1 == a.rd &&
          third->imm == 0)
        return {{3, 1}};
      break;
    case K::clear_upper_word:
      if (a_nz && a.is(Mnemonic::slli) && a.imm == 32 &&
          b.is(Mnemonic::srli) && b.imm == 32 && has_dest(b, *a.rd) &&
          b.rs1 == a.rd)
        return {{2, 1}};
      break;
    case K::clear_upper_shift:
      if (a_nz && a.is(Mnemonic::slli) && a.imm == 32 &&
          b.is(Mnemonic::srli) && b.imm && *b.imm >= 29 && *b.imm <= 32 &&
          has_dest(b, *a.rd) && b.rs1 == a.rd)
        return {{2, 1}};
      break;
    case K::lui_immop:
      if (a_nz && a.is(Mnemonic::lui) &&
          b.opclass() == OpClass::int_reg_imm && has_dest(b, *a.rd) &&
          b.rs1 == a.rd)
        return {{2, 1}};
      break;
    case K::lui_load:
      if (a_nz && a.is(Mnemonic::lui) && b.is_load() && has_dest(b, *a.rd) &&
          b.rs1 == a.rd)
        return {{2, 1}};
      break;
    case K::auipc_load:
      if (a_nz && a.is(Mnemonic::auipc) && b.is_load() &&
          has_dest(b, *a.rd) && b.rs1 == a.rd)
        return {{2, 1}};
      break;
    case K::auipc_jalr:
      if (a_nz && a.is(Mnemonic::auipc) && b.is(Mnemonic::jalr) &&
          b.rs1 == a.rd) {
        if (has_dest(b, *a.rd)) return {{2, 1}};
        if (has_dest(b, 1)) return {{2, 2}};
      }
      break;
    case K::mulh_mul: {
      bool hi = a.is(Mnemonic::mulh) || a.is(Mnemonic::mulhu) ||
                a.is(Mnemonic::mulhsu);
      if (hi && b.is(Mnemonic::mul) && a.rs1 == b.rs1 && a.rs2 == b.rs2 &&
          a_nz && nonzero_dest(b) && *a.rd != *b.rd)
        return {{2, 2}};
      break;
    }
    case K::div_rem: {
      bool pair = (a.is(Mnemonic::div) && b.is(Mnemonic::rem)) ||
                  (a.is(Mnemonic::divu) && b.is(Mnemonic::remu)) ||
                  (a.is(Mnemonic::divw) && b.is(Mnemonic::remw)) ||
                  (a.is(Mnemonic::divuw) && b.is(Mnemonic::remuw));
      if (pair && a.rs1 == b.rs1 && a.rs2 == b.rs2 && a_nz &&
          nonzero_dest(b) && *a.rd != *b.rd)
        return {{2, 2}};
      break;
    }
    case K::load_pair:
      if (a.is_load() && b.is_load() && a.access_size() == b.access_size() &&
          a.rs1 == b.rs1 && a.imm && b.imm &&
          std::llabs(*a.imm - *b.imm) == a.access_size() && a_nz &&
          nonzero_dest(b) && *a.rd != *b.rd && a.rs1 != a.rd)
        return {{2, 2}};
      break;
    case K::store_pair:
      if (a.is_store() && b.is_store() &&
          a.access_size() == b.access_size() && a.rs1 == b.rs1 && a.imm &&
          b.imm && std::llabs(*a.imm - *b.imm) == a.access_size())
        return {{2, 0}};
      break;
    case K::post_indexed_load:
      if (a.is_load() && a.rd && a.rs1 && *a.rs1 != 0 && *a.rd != 0 &&
          *a.rd != *a.rs1 && b.is(Mnemonic::addi) && b.rd == a.rs1 &&
          b.rs1 == a.rs1)
        return {{2, 2}};
      break;
    case K::post_indexed_store:
      if (a.is_store() && a.rs1 && *a.rs1 != 0 && b.is(Mnemonic::addi) &&
          b.rd == a.rs1 && b.rs1 == a.rs1)
        return {{2, 1}};
      break;
  }
  return std::nullopt;
}

struct RefMatch {
  IdiomKind kind{};
  size_t start = 0;
  int arity = 2;
  int writebacks = 1;
  uint64_t weight = 0;
};

// Greedy leftmost scan, first matching kind in priority order, jump past the
// consumed members.
inline std::vector<RefMatch> ref_select(const Block& block,
                                        const FusionConfig& config) {
  std::vector<RefMatch> out;
  const auto& v = block.items;
  size_t i = 0;
  while (i < v.size()) {
    std::optional<RefMatch> found;
    if (i + 1 < v.size()) {
      const Instruction* third = i + 2 < v.size() ? &v[i + 2].ins : nullptr;
      for (IdiomKind k : config.priority) {
        if (rvfusion::idiom_is_multi_writeback(k) &&
            !config.allow_multi_writeback)
          continue;
        if (auto m = ref_match(v[i].ins, v[i + 1].ins, third, k)) {
          uint64_t w = v[i].count;
          for (int j = 1; j < m->first; ++j) w = std::min(w, v[i + j].count);
          found = RefMatch{k, i, m->first, m->second, w};
          break;
        }
      }
    }
    if (found) {
      out.push_back(*found);
      i += size_t(found->arity);
    } else {
      ++i;
    }
  }
  return out;
}

// Which integer registers an instruction sources / defines, as bitmasks.
// Opaque instructions source everything and define nothing; FP memory ops
// only touch the integer base register.
inline void ref_uses_defs(const Instruction& x, uint32_t* uses,
                          uint32_t* defs) {
  auto bit = [](const std::optional<Reg>& r) -> uint32_t {
    return r && *r ? 1u << *r : 0u;
  };
  *uses = 0;
  *defs = 0;
  switch (x.opclass()) {
    case OpClass::other:
      *uses = rvfusion::kAllRegsLive;
      return;
    case OpClass::fp_load:
    case OpClass::fp_store:
      *uses = bit(x.rs1);
      return;
    case OpClass::store:
    case OpClass::branch:
      *uses = bit(x.rs1) | bit(x.rs2);
      return;
    case OpClass::jal:
    case OpClass::lui:
    case OpClass::auipc:
      *defs = bit(x.rd);
      return;
    case OpClass::int_reg_imm:
    case OpClass::load:
    case OpClass::jalr:
      *uses = bit(x.rs1);
      *defs = bit(x.rd);
      return;
    case OpClass::int_reg_reg:
    case OpClass::mul_family:
    case OpClass::div_family:
      *uses = bit(x.rs1) | bit(x.rs2);
      *defs = bit(x.rd);
      return;
  }
}

// Live-before masks via the standard backward data-flow walk, everything
// live at block exit.
inline std::vector<uint32_t> ref_live_before(const Block& block) {
  std::vector<uint32_t> before(block.items.size());
  uint32_t live = rvfusion::kAllRegsLive;
  for (size_t i = block.items.size(); i-- > 0;) {
    uint32_t uses = 0, defs = 0;
    ref_uses_defs(block.items[i].ins, &uses, &defs);
    live = uses | (live & ~defs);
    before[i] = live;
  }
  return before;
}

}  // namespace testsupport
