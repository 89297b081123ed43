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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rvfusion/trace.hpp"

namespace rvfusion {

/// Fusible idiom catalog. Declaration order is the default matching
/// priority except that indexed_load_long outranks everything (a 3-wide
/// match must win over its own 2-wide prefixes).
enum class IdiomKind : uint8_t {
  lea,                 // slli rd,rs1,{1,2,3} ; add rd,rd,rs2
  indexed_load,        // add rd,rs1,rs2 ; load rd,0(rd)
  indexed_load_long,   // slli ; add ; load, all clobbering rd
  clear_upper_word,    // slli rd,rs1,32 ; srli rd,rd,32
  clear_upper_shift,   // slli rd,rs1,32 ; srli rd,rd,{29..32}
  lui_immop,           // lui rd ; int reg-imm op rd,rd,imm
  lui_load,            // lui rd ; load rd,imm(rd)
  auipc_load,          // auipc rd ; load rd,imm(rd)
  auipc_jalr,          // auipc rd ; jalr {rd|ra},imm(rd)
  mulh_mul,            // mulh* rdh,rs1,rs2 ; mul rdl,rs1,rs2
  div_rem,             // div[u][w] ; rem[u][w], same operands
  load_pair,           // adjacent same-width loads off one base
  store_pair,          // adjacent same-width stores off one base
  post_indexed_load,   // load rd,imm(rs1) ; addi rs1,rs1,k
  post_indexed_store,  // store rs2,imm(rs1) ; addi rs1,rs1,k
};

inline constexpr size_t kIdiomCount = 15;
inline constexpr std::array<IdiomKind, kIdiomCount> kAllIdioms = {
    IdiomKind::lea,               IdiomKind::indexed_load,
    IdiomKind::indexed_load_long, IdiomKind::clear_upper_word,
    IdiomKind::clear_upper_shift, IdiomKind::lui_immop,
    IdiomKind::lui_load,          IdiomKind::auipc_load,
    IdiomKind::auipc_jalr,        IdiomKind::mulh_mul,
    IdiomKind::div_rem,           IdiomKind::load_pair,
    IdiomKind::store_pair,        IdiomKind::post_indexed_load,
    IdiomKind::post_indexed_store,
};

std::string_view idiom_name(IdiomKind k);
std::optional<IdiomKind> idiom_from_name(std::string_view name);

/// True for kinds whose fused op retires more than one register writeback
/// and is therefore gated behind allow_multi_writeback.
bool idiom_is_multi_writeback(IdiomKind k);

struct FusionConfig {
  std::array<bool, kIdiomCount> enabled{};
  /// Matching priority at each scan position; contains exactly the enabled
  /// kinds, each once.
  std::vector<IdiomKind> priority;
  bool allow_multi_writeback = false;

  bool is_enabled(IdiomKind k) const {
    return enabled[static_cast<size_t>(k)];
  }

  /// lea + indexed-load(+long) + clear-upper-word, the studied trio.
  static FusionConfig defaults();
  /// Every catalog idiom.
  static FusionConfig all();
  /// Nothing enabled.
  static FusionConfig none();
  /// An arbitrary subset, priority in default order.
  static FusionConfig with(std::initializer_list<IdiomKind> kinds);
  static FusionConfig with(const std::vector<IdiomKind>& kinds);
};

struct FusionMatch {
  IdiomKind kind{};
  size_t start = 0;       // index of the first member within the block
  uint8_t arity = 2;      // instructions consumed (2 or 3)
  uint8_t writebacks = 1; // architectural writes the fused op retires
  uint64_t weight = 0;    // min execution count over the members
};

/// A pair blocked from fusing only because the second instruction writes a
/// different destination than the one it consumes; a register renamer (or
/// the compiler's allocator) could recover it.
struct NearMiss {
  IdiomKind kind{};
  size_t start = 0;            // index of the pair's first member
  Reg blocking_register = 0;   // first member's rd, read but not clobbered
  Reg suggested_rename = 0;    // second member's current rd
  uint64_t weight = 0;
};

/// Tries every enabled kind at `i` in priority order; first hit wins.
std::optional<FusionMatch> match_at(const Block& block, size_t i,
                                    const FusionConfig& config);

/// Greedy leftmost selection: scan the block left to right, consume each
/// match whole, never overlap. Deterministic for a fixed config.
std::vector<FusionMatch> select_fusions(const Block& block,
                                        const FusionConfig& config);

/// Bitmask of live integer registers (bit r = xr live) before each
/// instruction, from a backward pass with everything live at block exit.
/// Opaque (`other`) instructions read all registers and kill none; FP
/// destinations do not kill an integer register.
std::vector<uint32_t> liveness(const Block& block);

/// Mask with x1..x31 set: the conservative all-live block-exit state.
inline constexpr uint32_t kAllRegsLive = 0xFFFFFFFEu;

/// Reports adjacent pairs that an enabled single-write idiom would match if
/// the second instruction's destination were renamed to the first's rd,
/// where that rd is provably dead after the pair and the rename is verified
/// (re-running selection on a renamed copy gains at least one match).
/// Pairs overlapping a selected fusion are excluded.
std::vector<NearMiss> near_misses(const Block& block,
                                  const FusionConfig& config);

struct IdiomStats {
  uint64_t groups = 0;       // weighted count of fused groups
  uint64_t removed = 0;      // weighted instructions removed, Σ w·(arity-1)
  double reduction_pct = 0;  // removed / total dynamic count × 100
};

struct FusionStats {
  uint64_t total = 0;      // dynamic instruction count
  uint64_t removed = 0;    // summed over idioms
  uint64_t effective = 0;  // total - removed
  double ratio = 1.0;      // effective / total (macro-ops per instruction)
  std::map<IdiomKind, IdiomStats> per_idiom;  // one entry per enabled kind
};

/// Runs selection over every block and aggregates.
FusionStats fusion_stats(const std::vector<Block>& blocks,
                         const FusionConfig& config);

}  // namespace rvfusion
