#include "yupana/verification.hpp"

#include "yupana/engine.hpp"
#include "yupana/errors.hpp"

#include <algorithm>
#include <numeric>

namespace yupana::verify {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

SquareAddr random_square(std::mt19937_64& rng, int rows) {
  return {kWeights[static_cast<std::size_t>(uniform_int(rng, 0, kColumns - 1))], uniform_int(rng, 0, rows - 1)};
}

Integer random_below(std::mt19937_64& rng, const Integer& bound) {
  // Uniform enough for test inputs: 64 random bits at a time, reduced.
  Integer x = 0;
  for (Integer b = bound; b > 0; b >>= 64) x = (x << 64) | Integer(rng());
  return x % (bound + 1);
}

void fail(PropertyReport& report, std::uint64_t seed, const BoardState& state, std::string detail) {
  report.failures.push_back({seed, to_snapshot(state), std::move(detail)});
}

PropertyReport merge(std::vector<PropertyReport> parts) {
  PropertyReport out;
  for (auto& p : parts) {
    out.id += (out.id.empty() ? "" : "+") + p.id;
    out.trials += p.trials;
    for (auto& f : p.failures) out.failures.push_back(std::move(f));
  }
  return out;
}

// First violation of value invariance among the matches of one rule, if any.
std::optional<std::string> invariance_violation(const BoardState& state, RuleId id) {
  const Integer before = oracle_value(state);
  const std::uint64_t tokens_before = state.total_tokens();
  for (const auto& m : match_rule(rule(id), state)) {
    const BoardState after = apply_match(state, m);
    if (oracle_value(after) != before)
      return describe(m) + ": value " + to_string(before) + " -> " + to_string(oracle_value(after));
    if (board_value(after) != before) return describe(m) + ": board_value disagrees with the oracle";
    if (rule_delta(m) != 0) return describe(m) + ": rule_delta " + to_string(rule_delta(m));
    const std::uint64_t tokens_after = after.total_tokens();
    const RuleKind kind = rule(id).kind;
    if (kind == RuleKind::expansion && tokens_after <= tokens_before)
      return describe(m) + ": expansion did not add tokens";
    if (kind == RuleKind::reducing && tokens_after > tokens_before)
      return describe(m) + ": reducing rule added tokens";
    if (kind == RuleKind::reducing && after.count(m.anchor, m.sign) >= state.count(m.anchor, m.sign))
      return describe(m) + ": reducing rule left its trigger square as full";
    if (kind == RuleKind::composite && tokens_after >= tokens_before)
      return describe(m) + ": composite rule did not remove tokens";
  }
  return std::nullopt;
}

// Random board with one binding of `id` planted on it, so the rule has at
// least one match.
BoardState planted_board(std::mt19937_64& rng, RuleId id) {
  RandomBoardSpec spec;
  spec.rows = uniform_int(rng, 2, 6);
  spec.fill = 0.3;
  spec.max_tokens_per_square = 3;
  spec.mixed = uniform(rng, 0, 3) == 0;
  BoardState state = random_board(rng, spec);
  const Rule& r = rule(id);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Sign sign = uniform(rng, 0, 1) ? Sign::positive : Sign::negative;
    SquareAddr anchor = random_square(rng, spec.rows);
    if (id != RuleId::chunka && id != RuleId::chinkay) anchor.weight = r.consume.front().weight;
    const std::uint64_t k = uniform(rng, 1, 3);
    const int shift = id == RuleId::chunka ? uniform_int(rng, 1, 2) : 0;
    try {
      const Match m = bind(id, sign, anchor, k, shift, state.config());
      for (const auto& d : m.removals) state.add_tokens(d.addr, d.sign, d.count);
      return state;
    } catch (const Error&) {
      continue;  // binding leaves the board; try another anchor
    }
  }
  return state;
}

bool every_order_matches(const BoardState& state, std::vector<Match> ms, const BoardState& parallel) {
  std::sort(ms.begin(), ms.end(), [](const Match& a, const Match& b) { return a.touched < b.touched; });
  do {
    BoardState s = state;
    for (const auto& m : ms) s = apply_match(s, m);
    if (!(s == parallel)) return false;
  } while (std::next_permutation(ms.begin(), ms.end(),
                                 [](const Match& a, const Match& b) { return a.touched < b.touched; }));
  return true;
}

}  // namespace

Integer oracle_value(const BoardState& state) {
  Integer total = 0;
  Integer place = 1;
  for (int r = 0; r < state.rows(); ++r) {
    for (int c = 0; c < kColumns; ++c) {
      const int w = kWeights[static_cast<std::size_t>(c)];
      const SquareContent& cell = state.cells()[static_cast<std::size_t>(r * kColumns + c)];
      total += (Integer(cell.pos) - Integer(cell.neg)) * w * place;
    }
    place *= 10;
  }
  return total;
}

std::uint64_t trial_seed(std::uint64_t master, std::string_view property, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : property) h = (h ^ ch) * 0x100000001b3ull;
  return splitmix64(splitmix64(master ^ h) + index);
}

BoardState random_board(std::mt19937_64& rng, const RandomBoardSpec& spec) {
  BoardState state(BoardConfig{spec.rows});
  std::bernoulli_distribution filled(spec.fill);
  for (int r = 0; r < spec.rows; ++r)
    for (int w : kWeights) {
      if (filled(rng)) state.add_tokens({w, r}, Sign::positive, uniform(rng, 1, spec.max_tokens_per_square));
      if (spec.mixed && filled(rng)) state.add_tokens({w, r}, Sign::negative, uniform(rng, 1, spec.max_tokens_per_square));
    }
  return state;
}

BoardState shrink(BoardState state, const std::function<bool(const BoardState&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (int r = 0; r < state.rows(); ++r)
      for (int w : kWeights)
        for (Sign s : {Sign::positive, Sign::negative}) {
          while (state.count({w, r}, s) > 0) {
            BoardState candidate = state;
            candidate.remove_tokens({w, r}, s, 1);
            if (!fails(candidate)) break;
            state = std::move(candidate);
            progress = true;
          }
        }
  }
  while (state.rows() > 1) {
    const int top = state.rows() - 1;
    bool top_empty = true;
    for (int w : kWeights) top_empty = top_empty && state.at({w, top}).empty();
    if (!top_empty) break;
    BoardState smaller(BoardConfig{top});
    for (int r = 0; r < top; ++r)
      for (int w : kWeights)
        for (Sign s : {Sign::positive, Sign::negative})
          if (auto n = state.count({w, r}, s)) smaller.add_tokens({w, r}, s, n);
    if (!fails(smaller)) break;
    state = std::move(smaller);
  }
  return state;
}

PropertyReport check_transfer(std::uint64_t samples, std::uint64_t master_seed) {
  PropertyReport report{"thm1", 0, {}};
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t seed = trial_seed(master_seed, report.id, i);
    std::mt19937_64 rng(seed);
    RandomBoardSpec spec;
    spec.rows = uniform_int(rng, 1, 8);
    spec.mixed = true;
    const BoardState before = random_board(rng, spec);
    const SquareAddr addr = random_square(rng, spec.rows);
    const Sign sign = uniform(rng, 0, 1) ? Sign::positive : Sign::negative;
    BoardState after = before;
    Integer delta = 0;
    const bool removing = uniform(rng, 0, 1) && before.count(addr, sign) > 0;
    const std::uint64_t n = removing ? uniform(rng, 0, before.count(addr, sign)) : uniform(rng, 0, 9);
    Integer token = Integer(addr.weight);
    for (int r = 0; r < addr.row; ++r) token *= 10;
    if (removing) {
      after.remove_tokens(addr, sign, n);
      delta = -Integer(n) * token;
    } else {
      after.add_tokens(addr, sign, n);
      delta = Integer(n) * token;
    }
    if (sign == Sign::negative) delta = -delta;
    ++report.trials;
    if (board_value(after) - board_value(before) != delta || oracle_value(after) - oracle_value(before) != delta)
      fail(report, seed, before, "edit of " + to_string(delta) + " on " + to_string(addr));
  }
  return report;
}

PropertyReport check_invariance(std::uint64_t trials_per_rule, std::uint64_t master_seed) {
  PropertyReport report{"thm2", 0, {}};
  std::uint64_t index = 0;
  for (RuleId id : all_rule_ids()) {
    for (std::uint64_t t = 0; t < trials_per_rule; ++t, ++index) {
      const std::uint64_t seed = trial_seed(master_seed, report.id, index);
      std::mt19937_64 rng(seed);
      const BoardState state = planted_board(rng, id);
      ++report.trials;
      auto problem = invariance_violation(state, id);
      if (!problem) continue;
      const BoardState small = shrink(state, [id](const BoardState& s) { return invariance_violation(s, id).has_value(); });
      fail(report, seed, small, *invariance_violation(small, id));
    }
  }
  return report;
}

PropertyReport check_superposition(std::uint64_t samples, std::uint64_t master_seed) {
  PropertyReport report{"thm3", 0, {}};
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t seed = trial_seed(master_seed, report.id, i);
    std::mt19937_64 rng(seed);
    const BoardConfig config{uniform_int(rng, 1, 12)};
    const int j = uniform_int(rng, 2, 5);
    // Keep the sum on the board: each summand at most capacity / j.
    const Integer bound = capacity(config) / j;
    BoardState state(config);
    Integer sum = 0;
    for (int s = 0; s < j; ++s) {
      const Integer n = random_below(rng, bound);
      const Sign sign = uniform(rng, 0, 3) == 0 ? Sign::negative : Sign::positive;
      state = encode_number(n, sign, state);
      sum += sign == Sign::positive ? n : Integer(-n);
    }
    ++report.trials;
    if (oracle_value(state) != sum || board_value(state) != sum)
      fail(report, seed, state, "superposition value " + to_string(oracle_value(state)) + " != " + to_string(sum));
  }
  return report;
}

PropertyReport check_scaling(std::uint64_t samples, std::uint64_t master_seed) {
  PropertyReport report{"thm4", 0, {}};
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t seed = trial_seed(master_seed, report.id, i);
    std::mt19937_64 rng(seed);
    const BoardConfig config{uniform_int(rng, 1, 8)};
    const Integer n = random_below(rng, capacity(config));
    const int j = uniform_int(rng, 1, 9);
    const BoardState simple = encode_number(n, Sign::positive, config);
    BoardState scaled(config);
    for (int r = 0; r < config.rows; ++r)
      for (int w : kWeights)
        if (auto c = simple.count({w, r}, Sign::positive)) scaled.add_tokens({w, r}, Sign::positive, c * static_cast<std::uint64_t>(j));
    ++report.trials;
    if (oracle_value(scaled) != n * j)
      fail(report, seed, simple, "replicating " + to_string(n) + " x" + std::to_string(j) + " gave " + to_string(oracle_value(scaled)));
  }
  return report;
}

PropertyReport check_abbreviation(std::uint64_t samples, std::uint64_t master_seed) {
  PropertyReport report{"thm5", 0, {}};
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t seed = trial_seed(master_seed, report.id, i);
    std::mt19937_64 rng(seed);
    RandomBoardSpec spec;
    spec.rows = uniform_int(rng, 3, 8);
    BoardState state = random_board(rng, spec);
    const SquareAddr addr{kWeights[static_cast<std::size_t>(uniform_int(rng, 0, kColumns - 1))], uniform_int(rng, 0, spec.rows - 3)};
    state.add_tokens(addr, Sign::positive, 1);
    const int n = uniform_int(rng, 2, 99);

    BoardState full = state;
    full.add_tokens(addr, Sign::positive, static_cast<std::uint64_t>(n - 1));
    const BoardState abbreviated = abbreviated_replicate(state, addr, n);

    Integer token = Integer(addr.weight);
    for (int r = 0; r < addr.row; ++r) token *= 10;
    const Integer expected = Integer(n - 1) * token;
    const Integer before = oracle_value(state);
    ++report.trials;
    if (oracle_value(full) - before != expected || oracle_value(abbreviated) - before != expected)
      fail(report, seed, state,
           "replicating " + to_string(addr) + " x" + std::to_string(n) + ": full " + to_string(oracle_value(full) - before) +
               ", abbreviated " + to_string(oracle_value(abbreviated) - before) + ", expected " + to_string(expected));
  }
  return report;
}

PropertyReport check_replication(std::uint64_t samples, std::uint64_t master_seed) {
  return merge({check_scaling(samples, master_seed), check_abbreviation(samples, master_seed)});
}

PropertyReport check_operation(OperationKind kind, const OperationRanges& ranges) {
  static constexpr const char* kIds[] = {"thm6", "thm7", "thm8", "thm9"};
  PropertyReport report{kIds[static_cast<int>(kind)], 0, {}};
  const BoardConfig config{ranges.rows};
  const Integer cap = capacity(config);

  auto run = [&](std::uint64_t seed, const Integer& a, const Integer& b) {
    ++report.trials;
    const std::string label = to_string(a) + " " + std::string(to_string(kind)) + " " + to_string(b);
    try {
      switch (kind) {
        case OperationKind::add: {
          const Integer ops[] = {a, b};
          const auto r = yapay(ops, config);
          if (r.value != a + b || oracle_value(r.terminal) != a + b) fail(report, seed, r.terminal, label + " gave " + to_string(r.value));
          break;
        }
        case OperationKind::sub: {
          const Operand ops[] = {{a, Sign::positive}, {b, Sign::negative}};
          const auto r = taqay(ops, config);
          if (r.value != a - b || oracle_value(r.terminal) != a - b) fail(report, seed, r.terminal, label + " gave " + to_string(r.value));
          break;
        }
        case OperationKind::mul: {
          const auto r = miray(a, b, config);
          if (r.value != a * b || oracle_value(r.terminal) != a * b) fail(report, seed, r.terminal, label + " gave " + to_string(r.value));
          break;
        }
        case OperationKind::div: {
          const auto r = rakiy(a, b, config);
          if (r.division->quotient != a / b || r.division->remainder != a % b || oracle_value(r.terminal) != a % b)
            fail(report, seed, r.terminal,
                 label + " gave " + to_string(r.division->quotient) + " r " + to_string(r.division->remainder));
          break;
        }
      }
    } catch (const std::exception& e) {
      fail(report, seed, BoardState(config), label + " threw: " + e.what());
    }
  };

  // Worked examples and zero operands, skipped when they do not fit the board.
  std::vector<std::pair<int, int>> fixed;
  switch (kind) {
    case OperationKind::add: fixed = {{736, 532}, {0, 0}, {0, 7}, {7, 0}}; break;
    case OperationKind::sub: fixed = {{945, 532}, {0, 0}, {7, 0}, {0, 7}, {532, 945}}; break;
    case OperationKind::mul: fixed = {{513, 3}, {78, 46}, {0, 0}, {0, 9}, {9, 0}}; break;
    case OperationKind::div: fixed = {{1534, 322}, {98076, 43}, {0, 1}, {0, 7}, {7, 7}}; break;
  }
  std::uint64_t index = 0;
  for (auto [a, b] : fixed) {
    const Integer result = kind == OperationKind::mul ? Integer(a) * b : Integer(a) + b;
    if (Integer(a) <= cap && Integer(b) <= cap && result <= cap) run(index, a, b);
    ++index;
  }

  const int a_max = kind == OperationKind::mul ? ranges.mul_a_max : kind == OperationKind::div ? ranges.div_a_max : ranges.add_max;
  const int b_max = kind == OperationKind::mul ? ranges.mul_b_max : kind == OperationKind::div ? ranges.div_b_max : ranges.add_max;
  const int b_min = kind == OperationKind::div ? 1 : 0;
  for (int a = 0; a <= a_max; ++a)
    for (int b = b_min; b <= b_max; ++b) {
      // seed encodes the operand pair: index of the fixed cases, then a * (b_max + 1) + b
      const std::uint64_t seed = fixed.size() + static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b_max + 1) + static_cast<std::uint64_t>(b);
      const Integer result = kind == OperationKind::mul ? Integer(a) * b : Integer(a) + b;
      if (result > cap && kind != OperationKind::div && kind != OperationKind::sub) continue;
      if (Integer(a) > cap || Integer(b) > cap) continue;
      run(seed, a, b);
    }
  return report;
}

PropertyReport check_operations(const OperationRanges& ranges) {
  return merge({check_operation(OperationKind::add, ranges), check_operation(OperationKind::sub, ranges),
                check_operation(OperationKind::mul, ranges), check_operation(OperationKind::div, ranges)});
}

PropertyReport check_representation(int rows) {
  PropertyReport report{"representation", 0, {}};
  const BoardConfig config{rows};
  const Integer cap = capacity(config);
  for (Integer n = 0; n <= cap; ++n) {
    ++report.trials;
    const BoardState s = encode_number(n, Sign::positive, config);
    if (!is_simple(s) || decode_simple(s) != n || oracle_value(s) != n)
      fail(report, static_cast<std::uint64_t>(n), s, "round trip of " + to_string(n));
  }
  return report;
}

PropertyReport check_confluence(const ConfluenceOptions& options) {
  PropertyReport report{"confluence", 0, {}};
  const auto rules = non_expansion_rule_ids();
  const BoardConfig config{kDefaultRows};
  for (int n = 0; n <= options.n_max; ++n) {
    const BoardState expected = encode_number(n, Sign::positive, config);
    for (int d = 0; d < options.decompositions; ++d) {
      const std::uint64_t index = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(options.decompositions) + static_cast<std::uint64_t>(d);
      const std::uint64_t seed = trial_seed(options.master_seed, report.id, index);
      std::mt19937_64 rng(seed);
      const int parts = uniform_int(rng, 2, std::max(2, options.max_summands));
      std::vector<int> cuts{0, n};
      for (int p = 1; p < parts; ++p) cuts.push_back(uniform_int(rng, 0, n));
      std::sort(cuts.begin(), cuts.end());
      BoardState start(config);
      for (std::size_t c = 1; c < cuts.size(); ++c) start = encode_number(cuts[c] - cuts[c - 1], Sign::positive, start);

      ++report.trials;
      const ExploreReport r = explore(start, rules);
      if (r.truncated) fail(report, seed, start, "exploration truncated");
      if (r.cycle_detected) fail(report, seed, start, "cycle among non-expansion rules");
      if (r.terminals.size() != 1 || !(r.terminals.front() == expected))
        fail(report, seed, start, std::to_string(r.terminals.size()) + " terminal states, expected only the encoding of " + std::to_string(n));
      try {
        if (!(simplify(start).state == expected)) fail(report, seed, start, "canonical strategy missed the encoding of " + std::to_string(n));
      } catch (const Error& e) {
        fail(report, seed, start, std::string("canonical strategy: ") + e.what());
      }
    }
  }
  return report;
}

PropertyReport check_parallelism(std::uint64_t trials, std::uint64_t master_seed) {
  PropertyReport report{"parallelism", 0, {}};
  const auto rules = all_rule_ids();
  std::uint64_t index = 0;
  while (report.trials < trials) {
    const std::uint64_t seed = trial_seed(master_seed, report.id, index++);
    std::mt19937_64 rng(seed);
    RandomBoardSpec spec;
    spec.rows = uniform_int(rng, 2, 6);
    spec.fill = 0.6;
    spec.max_tokens_per_square = 6;
    spec.mixed = uniform(rng, 0, 2) == 0;
    const BoardState state = random_board(rng, spec);

    auto candidates = match_rules(rules, state);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    const std::size_t want = static_cast<std::size_t>(uniform_int(rng, 2, 4));
    std::vector<Match> chosen;
    for (auto& m : candidates) {
      if (chosen.size() == want) break;
      // Lower multiplicity now and then so partial firings are covered too.
      Match pick = m.k > 1 && uniform(rng, 0, 1) ? with_multiplicity(m, uniform(rng, 1, m.k)) : m;
      if (std::none_of(chosen.begin(), chosen.end(), [&](const Match& c) { return conflicts(c, pick); }))
        chosen.push_back(std::move(pick));
    }
    if (chosen.size() < 2) continue;  // not enough disjoint matches; draw another board

    ++report.trials;
    try {
      const BoardState parallel = parallel_step(state, chosen);
      if (oracle_value(parallel) != oracle_value(state)) fail(report, seed, state, "parallel step changed the value");
      if (!every_order_matches(state, chosen, parallel))
        fail(report, seed, state, "a sequential order differs from the parallel step");
    } catch (const Error& e) {
      fail(report, seed, state, std::string("parallel step threw: ") + e.what());
    }
  }
  return report;
}

std::vector<PropertyReport> run_suite(const SuiteOptions& options) {
  const auto seed = options.master_seed;
  ConfluenceOptions confluence = options.confluence;
  confluence.master_seed = seed;
  std::vector<PropertyReport> out;
  out.push_back(check_transfer(options.samples, seed));
  out.push_back(check_invariance(options.trials_per_rule, seed));
  out.push_back(check_superposition(options.samples, seed));
  out.push_back(check_scaling(options.samples, seed));
  out.push_back(check_abbreviation(options.samples, seed));
  for (auto kind : {OperationKind::add, OperationKind::sub, OperationKind::mul, OperationKind::div})
    out.push_back(check_operation(kind, options.ranges));
  out.push_back(check_confluence(confluence));
  out.push_back(check_parallelism(options.samples, seed));
  return out;
}

}  // namespace yupana::verify
