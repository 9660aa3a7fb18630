#include "yupana/engine.hpp"

#include "yupana/errors.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace yupana {

namespace {

std::size_t priority_index(RuleId id) {
  const auto& order = canonical_priority();
  auto it = std::find(order.begin(), order.end(), id);
  // Rules outside the canonical order (expansions) sort after it, in catalog order.
  return it != order.end() ? static_cast<std::size_t>(it - order.begin())
                           : order.size() + static_cast<std::size_t>(id);
}

auto listing_key(const Match& m) {
  return std::make_tuple(m.anchor.row, m.anchor.column(), priority_index(m.rule), static_cast<int>(m.sign), m.shift);
}

// Weights in ascending token value, for walking squares in address order.
constexpr std::array<int, 4> kAscendingWeights{1, 2, 3, 5};

RuleId same_row_expansion(int weight) {
  switch (weight) {
    case 5: return RuleId::expand_5;
    case 3: return RuleId::expand_3;
    default: return RuleId::expand_2;
  }
}

// Inverse carry whose deposits include the wanted weight.
RuleId inverse_carry_for(int weight) {
  switch (weight) {
    case 5: return RuleId::inv_pisqa;
    case 3:
    case 2: return RuleId::inv_hatun_pichana;
    default: return RuleId::inv_huq_iskay_kimsa;
  }
}

// Lowest square above `after` (in token-value order) holding `color`.
std::optional<SquareAddr> lowest_square(const BoardState& s, Sign color, SquareAddr after) {
  for (int r = after.row; r < s.rows(); ++r)
    for (int w : kAscendingWeights) {
      const SquareAddr a{w, r};
      if (a > after && s.count(a, color) > 0) return a;
    }
  return std::nullopt;
}

// One expansion moving a token on `source` toward the less valuable `target`.
Match expand_toward(SquareAddr source, Sign color, SquareAddr target, const BoardConfig& config) {
  if (source.row == target.row || source.weight != 1)
    return bind(same_row_expansion(source.weight), color, source, 1, 0, config);
  const RuleId inverse = source.row - 1 == target.row ? inverse_carry_for(target.weight) : RuleId::inv_huq_iskay_kimsa;
  return bind(inverse, color, source, 1, 0, config);
}

void check_capacity(const BoardState& state) {
  const Integer value = board_value(state);
  if (abs(value) > capacity(state.config()))
    throw OverflowError("board value " + to_string(value) + " exceeds the capacity of a " +
                        std::to_string(state.rows()) + "-row board");
}

}  // namespace

const std::vector<RuleId>& canonical_priority() {
  static const std::vector<RuleId> order{
      RuleId::chinkay,       RuleId::chunka,     RuleId::kikin_5on1, RuleId::kikin_3on1,    RuleId::kikin_2on1,
      RuleId::pichana_23,    RuleId::pichana_12, RuleId::pisqa,      RuleId::hatun_pichana, RuleId::sonqo,
      RuleId::pana_chaska,   RuleId::huq_iskay_kimsa, RuleId::kusillu, RuleId::iskay,     RuleId::kimsa,
  };
  return order;
}

Strategy Strategy::canonical() { return Strategy{}; }

Strategy Strategy::random(std::uint64_t seed, bool allow_expansions) {
  Strategy s;
  s.kind = Kind::random;
  s.seed = seed;
  s.allow_expansions = allow_expansions;
  return s;
}

Strategy Strategy::interactive(Chooser chooser, bool allow_expansions) {
  Strategy s;
  s.kind = Kind::interactive;
  s.chooser = std::move(chooser);
  s.allow_expansions = allow_expansions;
  return s;
}

std::string Strategy::name() const {
  switch (kind) {
    case Kind::canonical: return "canonical";
    case Kind::random: return "random(" + std::to_string(seed) + ")";
    case Kind::interactive: return "interactive";
  }
  return "?";
}

void MoveTrace::record(const Match& m, const BoardState& before, const BoardState& after) {
  TraceStep step;
  step.index = steps.size();
  step.rule = m.rule;
  step.sign = m.sign;
  step.anchor = m.anchor;
  step.k = m.k;
  step.shift = m.shift;
  step.summary = describe(m);
  step.value_before = board_value(before);
  step.value_after = board_value(after);
  steps.push_back(std::move(step));
  terminal = after;
}

void MoveTrace::extend(const MoveTrace& other) {
  for (auto step : other.steps) {
    step.index = steps.size();
    steps.push_back(std::move(step));
  }
  terminal = other.terminal;
}

std::string export_trace(const MoveTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    out += "step=" + std::to_string(s.index) + " rule_id=" + std::string(rule_key(s.rule)) +
           " anchor_row=" + std::to_string(s.anchor.row) + " k=" + std::to_string(s.k) +
           " n=" + std::to_string(s.shift) + " value_before=" + to_string(s.value_before) +
           " value_after=" + to_string(s.value_after) + "\n";
  }
  return out;
}

void sort_for_listing(std::vector<Match>& matches) {
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Match& a, const Match& b) { return listing_key(a) < listing_key(b); });
}

std::optional<Match> canonical_next(const BoardState& state, std::span<const RuleId> priority) {
  for (RuleId id : priority) {
    auto ms = match_rule(rule(id), state);
    if (ms.empty()) continue;
    auto best = std::min_element(ms.begin(), ms.end(), [](const Match& a, const Match& b) {
      return std::make_tuple(-a.shift, a.anchor.row, a.anchor.column(), static_cast<int>(a.sign)) <
             std::make_tuple(-b.shift, b.anchor.row, b.anchor.column(), static_cast<int>(b.sign));
    });
    return std::move(*best);
  }
  return std::nullopt;
}

std::optional<Match> next_pairing_move(const BoardState& state) {
  const BoardConfig& config = state.config();
  for (int r = 0; r < state.rows(); ++r)
    for (int w : kAscendingWeights) {
      const auto& c = state.at({w, r});
      if (c.pos > 0 && c.neg > 0) return bind(RuleId::chinkay, Sign::positive, {w, r}, std::min(c.pos, c.neg), 0, config);
    }
  if (!state.mixed()) return std::nullopt;

  // No square holds both colors from here on. Ties count as a positive majority.
  const Sign majority = board_value(state) >= 0 ? Sign::positive : Sign::negative;
  const Sign minority = opposite(majority);
  const auto lowest = lowest_square(state, minority, {0, 0});
  if (auto source = lowest_square(state, majority, *lowest)) return expand_toward(*source, majority, *lowest, config);

  // Every majority token lies below the minority: bring the minority down.
  const auto floor = lowest_square(state, majority, {0, 0});
  return expand_toward(*lowest_square(state, minority, *floor), minority, *floor, config);
}

std::optional<Match> next_move(const BoardState& state, const Strategy& strategy, std::mt19937_64& rng) {
  if (state.mixed() && strategy.kind != Strategy::Kind::interactive) return next_pairing_move(state);
  if (strategy.kind == Strategy::Kind::canonical) return canonical_next(state, strategy.rule_priority);

  const auto ids = strategy.allow_expansions ? all_rule_ids() : non_expansion_rule_ids();
  auto candidates = match_rules(ids, state);
  if (candidates.empty()) return std::nullopt;
  sort_for_listing(candidates);
  std::size_t pick = 0;
  if (strategy.kind == Strategy::Kind::random) {
    pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng);
  } else {
    if (!strategy.chooser) throw DomainError("interactive strategy without a chooser");
    pick = strategy.chooser(state, candidates);
    if (pick >= candidates.size()) throw DomainError("chooser picked match " + std::to_string(pick) + " of " +
                                                     std::to_string(candidates.size()));
  }
  return std::move(candidates[pick]);
}

StepResult simplify(const BoardState& state, const Strategy& strategy) {
  if (state.mixed()) throw DomainError("simplify needs a single-color board; cancel colors first");
  check_capacity(state);

  std::mt19937_64 rng(strategy.seed);
  StepResult result{state, MoveTrace{{}, state}};
  std::unordered_set<BoardState, BoardStateHash> visited{state};
  while (!is_simple(result.state)) {
    auto m = next_move(result.state, strategy, rng);
    if (!m) throw DomainError("strategy " + strategy.name() + " stopped on a non-simple board");
    BoardState next = apply_match(result.state, *m);
    result.trace.record(*m, result.state, next);
    result.state = std::move(next);
    if (!visited.insert(result.state).second)
      throw CycleError("strategy " + strategy.name() + " revisited a board after " +
                       std::to_string(result.trace.steps.size()) + " moves");
  }
  return result;
}

StepResult pair_and_cancel(const BoardState& state) {
  check_capacity(state);
  StepResult result{state, MoveTrace{{}, state}};
  while (auto m = next_pairing_move(result.state)) {
    BoardState next = apply_match(result.state, *m);
    result.trace.record(*m, result.state, next);
    result.state = std::move(next);
  }
  return result;
}

bool conflicts(const Match& a, const Match& b) {
  // touched lists are sorted
  auto i = a.touched.begin();
  auto j = b.touched.begin();
  while (i != a.touched.end() && j != b.touched.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

BoardState parallel_step(const BoardState& state, std::span<const Match> matches) {
  for (std::size_t i = 0; i < matches.size(); ++i)
    for (std::size_t j = i + 1; j < matches.size(); ++j)
      if (conflicts(matches[i], matches[j]))
        throw ConflictError(describe(matches[i]) + " and " + describe(matches[j]) + " touch a common square");
  for (const auto& m : matches)
    if (!is_valid(state, m)) throw StaleMatchError(describe(m) + " does not hold on this board");
  BoardState next = state;
  for (const auto& m : matches) next = apply_match(next, m);
  return next;
}

ExploreReport explore(const BoardState& start, std::span<const RuleId> rules, ExploreLimits limits) {
  enum : std::uint8_t { kOnPath = 1, kDone = 2 };
  struct Frame {
    BoardState state;
    std::vector<BoardState> successors;
    std::size_t next = 0;
  };

  auto successors_of = [&](const BoardState& s) {
    std::vector<BoardState> out;
    for (const auto& m : match_rules(rules, s)) out.push_back(apply_match(s, m));
    std::sort(out.begin(), out.end(), [](const BoardState& a, const BoardState& b) { return a.cells() < b.cells(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };

  ExploreReport report;
  std::unordered_map<BoardState, std::uint8_t, BoardStateHash> mark;
  std::vector<Frame> stack;

  auto enter = [&](const BoardState& s) {
    mark.emplace(s, kOnPath);
    ++report.states_visited;
    auto succ = successors_of(s);
    if (succ.empty()) report.terminals.push_back(s);
    stack.push_back(Frame{s, std::move(succ), 0});
    report.max_depth = std::max(report.max_depth, stack.size() - 1);
  };

  enter(start);
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.successors.size()) {
      mark[top.state] = kDone;
      stack.pop_back();
      continue;
    }
    const BoardState& child = top.successors[top.next++];
    auto it = mark.find(child);
    if (it != mark.end()) {
      if (it->second == kOnPath) report.cycle_detected = true;
      continue;
    }
    if (report.states_visited >= limits.max_states || stack.size() > limits.max_depth) {
      report.truncated = true;
      continue;
    }
    enter(child);
  }

  std::sort(report.terminals.begin(), report.terminals.end(),
            [](const BoardState& a, const BoardState& b) { return to_snapshot(a) < to_snapshot(b); });
  return report;
}

}  // namespace yupana
