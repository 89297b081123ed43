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

#include "rvfusion/fusion.hpp"

#include <algorithm>
#include <cstdlib>

namespace rvfusion {

std::string_view idiom_name(IdiomKind k) {
  switch (k) {
    case IdiomKind::lea: return "lea";
    case IdiomKind::indexed_load: return "indexed-load";
    case IdiomKind::indexed_load_long: return "indexed-load-long";
    case IdiomKind::clear_upper_word: return "clear-upper-word";
    case IdiomKind::clear_upper_shift: return "clear-upper-shift";
    case IdiomKind::lui_immop: return "lui-immop";
    case IdiomKind::lui_load: return "lui-load";
    case IdiomKind::auipc_load: return "auipc-load";
    case IdiomKind::auipc_jalr: return "auipc-jalr";
    case IdiomKind::mulh_mul: return "mulh-mul";
    case IdiomKind::div_rem: return "div-rem";
    case IdiomKind::load_pair: return "load-pair";
    case IdiomKind::store_pair: return "store-pair";
    case IdiomKind::post_indexed_load: return "post-indexed-load";
    case IdiomKind::post_indexed_store: return "post-indexed-store";
  }
  return "";
}

std::optional<IdiomKind> idiom_from_name(std::string_view name) {
  for (IdiomKind k : kAllIdioms)
    if (idiom_name(k) == name) return k;
  return std::nullopt;
}

bool idiom_is_multi_writeback(IdiomKind k) {
  switch (k) {
    case IdiomKind::mulh_mul:
    case IdiomKind::div_rem:
    case IdiomKind::load_pair:
    case IdiomKind::post_indexed_load:
      return true;
    default:
      return false;
  }
}

namespace {

// indexed-load-long outranks everything so a 3-wide match beats the 2-wide
// prefixes it contains; the rest keep declaration order.
std::vector<IdiomKind> default_priority(
    const std::array<bool, kIdiomCount>& enabled) {
  std::vector<IdiomKind> order;
  if (enabled[size_t(IdiomKind::indexed_load_long)])
    order.push_back(IdiomKind::indexed_load_long);
  for (IdiomKind k : kAllIdioms)
    if (enabled[size_t(k)] && k != IdiomKind::indexed_load_long)
      order.push_back(k);
  return order;
}

}  // namespace

FusionConfig FusionConfig::with(const std::vector<IdiomKind>& kinds) {
  FusionConfig c;
  for (IdiomKind k : kinds) c.enabled[size_t(k)] = true;
  c.priority = default_priority(c.enabled);
  return c;
}

FusionConfig FusionConfig::with(std::initializer_list<IdiomKind> kinds) {
  return with(std::vector<IdiomKind>(kinds));
}

FusionConfig FusionConfig::defaults() {
  return with({IdiomKind::lea, IdiomKind::indexed_load,
               IdiomKind::indexed_load_long, IdiomKind::clear_upper_word});
}

FusionConfig FusionConfig::all() {
  FusionConfig c;
  c.enabled.fill(true);
  c.priority = default_priority(c.enabled);
  return c;
}

FusionConfig FusionConfig::none() { return FusionConfig{}; }

namespace {

struct Shape {
  uint8_t arity;
  uint8_t writebacks;
};

// The destination a fused op would retire to: must exist and not be x0.
std::optional<Reg> fusion_dest(const Instruction& a) {
  if (a.rd && *a.rd != 0) return a.rd;
  return std::nullopt;
}

bool shift_by(const Instruction& a, int64_t lo, int64_t hi) {
  return a.imm && *a.imm >= lo && *a.imm <= hi;
}

// Matches one idiom against the pair (a, b), with `c` the instruction after
// the pair when the block still has one (only indexed-load-long looks at it).
std::optional<Shape> match_shape(const Instruction& a, const Instruction& b,
                                 const Instruction* c, IdiomKind kind) {
  switch (kind) {
    case IdiomKind::lea: {
      auto rd = fusion_dest(a);
      if (a.is(Mnemonic::slli) && shift_by(a, 1, 3) && rd &&
          b.is(Mnemonic::add) && b.rd == rd && (b.rs1 == rd || b.rs2 == rd))
        return Shape{2, 1};
      return std::nullopt;
    }
    case IdiomKind::indexed_load: {
      auto rd = fusion_dest(a);
      if (a.is(Mnemonic::add) && rd && b.is_load() && b.rd == rd &&
          b.rs1 == rd && b.imm == 0)
        return Shape{2, 1};
      return std::nullopt;
    }
    case IdiomKind::indexed_load_long: {
      if (!c) return std::nullopt;
      auto rd = fusion_dest(a);
      if (a.is(Mnemonic::slli) && shift_by(a, 1, 3) && rd &&
          b.is(Mnemonic::add) && b.rd == rd && (b.rs1 == rd || b.rs2 == rd) &&
          c->is_load() && c->rd == rd && c->rs1 == rd && c->imm == 0)
        return Shape{3, 1};
      return std::nullopt;
    }
    case IdiomKind::clear_upper_word:
    case IdiomKind::clear_upper_shift: {
      auto rd = fusion_dest(a);
      int64_t lo = kind == IdiomKind::clear_upper_word ? 32 : 29;
      if (a.is(Mnemonic::slli) && a.imm == 32 && rd && b.is(Mnemonic::srli) &&
          shift_by(b, lo, 32) && b.rd == rd && b.rs1 == rd)
        return Shape{2, 1};
      return std::nullopt;
    }
    case IdiomKind::lui_immop: {
      auto rd = fusion_dest(a);
      if (a.is(Mnemonic::lui) && rd && b.opclass() == OpClass::int_reg_imm &&
          b.rd == rd && b.rs1 == rd)
        return Shape{2, 1};
      return std::nullopt;
    }
    case IdiomKind::lui_load:
    case IdiomKind::auipc_load: {
      Mnemonic first =
          kind == IdiomKind::lui_load ? Mnemonic::lui : Mnemonic::auipc;
      auto rd = fusion_dest(a);
      if (a.is(first) && rd && b.is_load() && b.rd == rd && b.rs1 == rd)
        return Shape{2, 1};
      return std::nullopt;
    }
    case IdiomKind::auipc_jalr: {
      auto rd = fusion_dest(a);
      if (a.is(Mnemonic::auipc) && rd && b.is(Mnemonic::jalr) && b.rs1 == rd &&
          (b.rd == rd || b.rd == Reg(1)))
        return Shape{2, uint8_t(b.rd == rd ? 1 : 2)};
      return std::nullopt;
    }
    case IdiomKind::mulh_mul: {
      bool high = a.is(Mnemonic::mulh) || a.is(Mnemonic::mulhu) ||
                  a.is(Mnemonic::mulhsu);
      if (high && b.is(Mnemonic::mul) && a.rs1 == b.rs1 && a.rs2 == b.rs2 &&
          fusion_dest(a) && fusion_dest(b) && a.rd != b.rd)
        return Shape{2, 2};
      return std::nullopt;
    }
    case IdiomKind::div_rem: {
      bool paired = (a.is(Mnemonic::div) && b.is(Mnemonic::rem)) ||
                    (a.is(Mnemonic::divu) && b.is(Mnemonic::remu)) ||
                    (a.is(Mnemonic::divw) && b.is(Mnemonic::remw)) ||
                    (a.is(Mnemonic::divuw) && b.is(Mnemonic::remuw));
      if (paired && a.rs1 == b.rs1 && a.rs2 == b.rs2 && fusion_dest(a) &&
          fusion_dest(b) && a.rd != b.rd)
        return Shape{2, 2};
      return std::nullopt;
    }
    case IdiomKind::load_pair: {
      unsigned size = a.access_size();
      if (a.is_load() && b.is_load() && size == b.access_size() &&
          a.rs1 == b.rs1 && a.imm && b.imm &&
          std::llabs(*a.imm - *b.imm) == size && fusion_dest(a) &&
          fusion_dest(b) && a.rd != b.rd && a.rs1 != a.rd)
        return Shape{2, 2};
      return std::nullopt;
    }
    case IdiomKind::store_pair: {
      unsigned size = a.access_size();
      if (a.is_store() && b.is_store() && size == b.access_size() &&
          a.rs1 == b.rs1 && a.imm && b.imm &&
          std::llabs(*a.imm - *b.imm) == size)
        return Shape{2, 0};
      return std::nullopt;
    }
    case IdiomKind::post_indexed_load: {
      if (a.is_load() && a.rd && a.rs1 && *a.rs1 != 0 && a.rd != a.rs1 &&
          *a.rd != 0 && b.is(Mnemonic::addi) && b.rd == a.rs1 &&
          b.rs1 == a.rs1)
        return Shape{2, 2};
      return std::nullopt;
    }
    case IdiomKind::post_indexed_store: {
      if (a.is_store() && a.rs1 && *a.rs1 != 0 && b.is(Mnemonic::addi) &&
          b.rd == a.rs1 && b.rs1 == a.rs1)
        return Shape{2, 1};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

uint64_t member_weight(const Block& block, size_t i, uint8_t arity) {
  uint64_t w = block.items[i].count;
  for (size_t j = 1; j < arity; ++j)
    w = std::min(w, block.items[i + j].count);
  return w;
}

// Integer register bit, with the hardwired zero register excluded from all
// liveness sets.
constexpr uint32_t reg_bit(std::optional<Reg> r) {
  return (r && *r != 0) ? (1u << *r) : 0u;
}

struct GenKill {
  uint32_t gen = 0;
  uint32_t kill = 0;
};

GenKill gen_kill(const Instruction& ins) {
  switch (ins.opclass()) {
    case OpClass::int_reg_reg:
    case OpClass::mul_family:
    case OpClass::div_family:
      return {reg_bit(ins.rs1) | reg_bit(ins.rs2), reg_bit(ins.rd)};
    case OpClass::int_reg_imm:
    case OpClass::load:
    case OpClass::jalr:
      return {reg_bit(ins.rs1), reg_bit(ins.rd)};
    case OpClass::fp_load:
    case OpClass::fp_store:
      // Only the integer base participates; the FP file is not tracked,
      // and an FP destination must not shadow-kill an integer register.
      return {reg_bit(ins.rs1), 0};
    case OpClass::store:
    case OpClass::branch:
      return {reg_bit(ins.rs1) | reg_bit(ins.rs2), 0};
    case OpClass::jal:
    case OpClass::lui:
    case OpClass::auipc:
      return {0, reg_bit(ins.rd)};
    case OpClass::other:
      // Opaque: assume it reads everything and defines nothing, keeping
      // any deadness conclusion downstream of it conservative.
      return {kAllRegsLive, 0};
  }
  return {kAllRegsLive, 0};
}

}  // namespace

std::optional<FusionMatch> match_at(const Block& block, size_t i,
                                    const FusionConfig& config) {
  size_t n = block.items.size();
  if (i + 1 >= n) return std::nullopt;
  const Instruction* c = i + 2 < n ? &block.items[i + 2].ins : nullptr;
  for (IdiomKind k : config.priority) {
    if (idiom_is_multi_writeback(k) && !config.allow_multi_writeback) continue;
    if (auto s =
            match_shape(block.items[i].ins, block.items[i + 1].ins, c, k)) {
      return FusionMatch{k, i, s->arity, s->writebacks,
                         member_weight(block, i, s->arity)};
    }
  }
  return std::nullopt;
}

std::vector<FusionMatch> select_fusions(const Block& block,
                                        const FusionConfig& config) {
  std::vector<FusionMatch> out;
  size_t i = 0;
  while (i < block.items.size()) {
    if (auto m = match_at(block, i, config)) {
      out.push_back(*m);
      i += m->arity;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<uint32_t> liveness(const Block& block) {
  size_t n = block.items.size();
  std::vector<uint32_t> before(n);
  uint32_t live = kAllRegsLive;
  for (size_t i = n; i-- > 0;) {
    GenKill gk = gen_kill(block.items[i].ins);
    live = (live & ~gk.kill) | gk.gen;
    before[i] = live;
  }
  return before;
}

std::vector<NearMiss> near_misses(const Block& block,
                                  const FusionConfig& config) {
  size_t n = block.items.size();
  if (n < 2) return {};

  std::vector<FusionMatch> selected = select_fusions(block, config);
  std::vector<bool> covered(n, false);
  for (const FusionMatch& m : selected)
    for (size_t j = 0; j < m.arity; ++j) covered[m.start + j] = true;

  std::vector<uint32_t> live_before = liveness(block);
  std::vector<NearMiss> out;

  for (size_t i = 0; i + 1 < n; ++i) {
    if (covered[i] || covered[i + 1]) continue;
    const Instruction& a = block.items[i].ins;
    const Instruction& b = block.items[i + 1].ins;
    auto rd = fusion_dest(a);
    if (!rd || !b.rd || b.rd == rd) continue;
    // The pair must not reach the end of the block: with everything live at
    // block exit, a destination can only be proven dead by a later
    // redefinition inside the block.
    if (i + 2 >= n) continue;
    if (live_before[i + 2] & reg_bit(rd)) continue;

    Instruction renamed_b = b;
    renamed_b.rd = rd;
    for (IdiomKind k : config.priority) {
      // Multi-writeback shapes have no destination-clobber requirement to
      // miss on; only the single-write pairs are rename-recoverable.
      if (idiom_is_multi_writeback(k) || k == IdiomKind::indexed_load_long ||
          k == IdiomKind::store_pair || k == IdiomKind::post_indexed_store)
        continue;
      if (!match_shape(a, renamed_b, nullptr, k)) continue;

      // Verify the suggestion end to end: the rename must make selection
      // strictly better on a copy of the block.
      Block patched = block;
      patched.items[i + 1].ins.rd = rd;
      if (select_fusions(patched, config).size() < selected.size() + 1)
        continue;

      out.push_back(NearMiss{k, i, *rd, *b.rd, member_weight(block, i, 2)});
      break;
    }
  }
  return out;
}

FusionStats fusion_stats(const std::vector<Block>& blocks,
                         const FusionConfig& config) {
  FusionStats st;
  for (IdiomKind k : config.priority) st.per_idiom[k];  // zero row per kind
  for (const Block& block : blocks) {
    for (const WeightedInstruction& wi : block.items) st.total += wi.count;
    for (const FusionMatch& m : select_fusions(block, config)) {
      uint64_t removed = m.weight * (m.arity - 1);
      IdiomStats& row = st.per_idiom[m.kind];
      row.groups += m.weight;
      row.removed += removed;
      st.removed += removed;
    }
  }
  st.effective = st.total - st.removed;
  st.ratio = st.total ? double(st.effective) / double(st.total) : 1.0;
  for (auto& [k, row] : st.per_idiom)
    row.reduction_pct =
        st.total ? double(row.removed) / double(st.total) * 100.0 : 0.0;
  return st;
}

}  // namespace rvfusion
