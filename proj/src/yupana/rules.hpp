#pragma once

#include "yupana/board.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace yupana {

enum class RuleId : std::uint8_t {
  // reducing
  iskay,
  kimsa,
  pisqa,
  kikin_2on1,
  kikin_3on1,
  kikin_5on1,
  pichana_12,
  pichana_23,
  // expansion
  expand_5,
  expand_3,
  expand_2,
  inv_pisqa,
  inv_hatun_pichana,
  inv_sonqo,
  inv_huq_iskay_kimsa,
  // composite
  chunka,
  sonqo,
  hatun_pichana,
  pana_chaska,
  huq_iskay_kimsa,
  kusillu,
  chinkay,
};

inline constexpr std::size_t kRuleCount = 22;

enum class RuleKind : std::uint8_t { reducing, expansion, composite };

std::string_view to_string(RuleKind kind);

// One side of a movement: per_k tokens per unit of multiplicity on the square
// (weight, base_row + row_offset). weight 0 stands for "the anchor's weight"
// and per_k 0 for "10^shift" (both Chunka only).
struct Term {
  int weight = 0;
  int row_offset = 0;
  std::uint64_t per_k = 1;
};

struct Rule {
  RuleId id;
  std::string_view key;
  std::string_view name;
  std::string_view gloss;
  RuleKind kind;
  std::string_view pattern;
  std::string_view movement;
  std::vector<Term> consume;
  std::vector<Term> produce;
};

struct TokenDelta {
  SquareAddr addr;
  Sign sign = Sign::positive;
  std::uint64_t count = 0;

  friend bool operator==(const TokenDelta&, const TokenDelta&) = default;
};

// A rule bound to concrete squares. anchor is the rule's trigger square: the
// first consumed square (for inverse carries, the [1] square of the upper row).
struct Match {
  RuleId rule = RuleId::iskay;
  Sign sign = Sign::positive;  // color acted on; Chinkay takes both
  SquareAddr anchor;
  std::uint64_t k = 1;
  int shift = 0;  // Chunka only
  std::vector<TokenDelta> removals;
  std::vector<TokenDelta> deposits;
  std::vector<SquareAddr> touched;  // sorted, unique

  int anchor_row() const noexcept { return anchor.row; }
  friend bool operator==(const Match&, const Match&) = default;
};

const std::vector<Rule>& catalog();
const Rule& rule(RuleId id);
std::string_view rule_key(RuleId id);
// Throws NotFoundError for unknown keys.
RuleId parse_rule_id(std::string_view key);

std::vector<RuleId> all_rule_ids();
std::vector<RuleId> non_expansion_rule_ids();

// Builds the match of a rule with explicit multiplicity and shift. Throws
// DomainError for a malformed binding, OverflowError when a touched square is
// off the board. Does not look at token availability.
Match bind(RuleId id, Sign sign, SquareAddr anchor, std::uint64_t k, int shift, const BoardConfig& config);

// The same binding with a different multiplicity (k >= 1).
Match with_multiplicity(const Match& m, std::uint64_t k);

// All maximal matches of a rule: one per anchor and color (Chunka: one per
// feasible shift). Carries that would land above the top row are not matches.
std::vector<Match> match_rule(const Rule& r, const BoardState& state);
std::vector<Match> match_rules(std::span<const RuleId> ids, const BoardState& state);

// True when every removal is available and every touched square is on the board.
bool is_valid(const BoardState& state, const Match& m);

// Throws StaleMatchError when removals are unavailable, OverflowError when a
// deposit is off the board.
BoardState apply_match(const BoardState& state, const Match& m);

// Effective-value change of the match: deposits minus removals.
Integer rule_delta(const Match& m);

// Short human-readable form, e.g. "kikin-2on1(+) @(1,0) k=1".
std::string describe(const Match& m);

}  // namespace yupana
