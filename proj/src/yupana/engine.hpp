#pragma once

#include "yupana/board.hpp"
#include "yupana/rules.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace yupana {

// Chinkay, Chunka, Kikin 5/3/2, Pichana 23/12, the carry composites, then the
// Iskay/Kimsa openings. Expansions are not part of it.
const std::vector<RuleId>& canonical_priority();

struct Strategy {
  enum class Kind : std::uint8_t { canonical, random, interactive };

  // Picks one of the candidate matches (listing order) for the interactive kind.
  using Chooser = std::function<std::size_t(const BoardState&, std::span<const Match>)>;

  Kind kind = Kind::canonical;
  std::vector<RuleId> rule_priority = canonical_priority();
  bool allow_expansions = false;
  std::uint64_t seed = 0;
  Chooser chooser;

  static Strategy canonical();
  static Strategy random(std::uint64_t seed, bool allow_expansions = false);
  static Strategy interactive(Chooser chooser, bool allow_expansions = false);

  std::string name() const;
};

struct TraceStep {
  std::size_t index = 0;
  RuleId rule = RuleId::iskay;
  Sign sign = Sign::positive;
  SquareAddr anchor;
  std::uint64_t k = 1;
  int shift = 0;
  std::string summary;
  Integer value_before;
  Integer value_after;
};

struct MoveTrace {
  std::vector<TraceStep> steps;
  BoardState terminal;

  // Records m as the next step, taking values from the boards around it.
  void record(const Match& m, const BoardState& before, const BoardState& after);
  // Appends other's steps, renumbered, and takes its terminal.
  void extend(const MoveTrace& other);
};

// One line per step:
// step=<i> rule_id=<key> anchor_row=<r> k=<k> n=<n> value_before=<v> value_after=<v>
std::string export_trace(const MoveTrace& trace);

struct StepResult {
  BoardState state;
  MoveTrace trace;
};

// Listing order used by interactive clients: anchor row, anchor column
// (5,3,2,1), canonical rule priority, color, Chunka shift.
void sort_for_listing(std::vector<Match>& matches);

// Next move of the canonical strategy on a single-color board, following
// `priority`: lowest row, then leftmost weight; Chunka prefers larger shifts.
std::optional<Match> canonical_next(const BoardState& state, std::span<const RuleId> priority);

// Next move of the pairing planner on a mixed board: cancel pairs first;
// otherwise expand the nearest majority-color token above the lowest
// minority square toward it (or, when the whole majority lies lower, the
// minority token toward the majority). Empty once the board holds one color.
std::optional<Match> next_pairing_move(const BoardState& state);

// Next move a strategy would make, routing mixed boards through the pairing
// planner. Empty on terminal boards. `rng` is drawn from by random strategies.
std::optional<Match> next_move(const BoardState& state, const Strategy& strategy, std::mt19937_64& rng);

// Drives a single-color board to its simple state. Throws DomainError for
// mixed boards, OverflowError when the value exceeds capacity, CycleError when
// a state repeats.
StepResult simplify(const BoardState& state, const Strategy& strategy = Strategy::canonical());

// Cancels opposite colors until the board holds one color (or is empty).
StepResult pair_and_cancel(const BoardState& state);

// True iff the two matches touch a common square.
bool conflicts(const Match& a, const Match& b);

// Fires pairwise non-conflicting matches at once. Throws ConflictError or
// StaleMatchError.
BoardState parallel_step(const BoardState& state, std::span<const Match> matches);

struct ExploreLimits {
  std::size_t max_states = 1'000'000;
  std::size_t max_depth = 10'000;
};

struct ExploreReport {
  std::size_t states_visited = 0;
  std::vector<BoardState> terminals;  // sorted by snapshot text
  std::size_t max_depth = 0;
  bool cycle_detected = false;
  bool truncated = false;
};

// Exhaustive depth-first reachability over the given rules.
ExploreReport explore(const BoardState& state, std::span<const RuleId> rules, ExploreLimits limits = {});

}  // namespace yupana
