#include "yupana/arithmetic.hpp"

#include "yupana/errors.hpp"

#include <algorithm>

namespace yupana {

namespace {

void require_non_negative(const Integer& v, const char* what) {
  if (v < 0) throw DomainError(std::string(what) + " must be non-negative (got " + to_string(v) + ")");
}

void require_fits(const Integer& v, const BoardConfig& config, const char* what) {
  if (abs(v) > capacity(config))
    throw OverflowError(std::string(what) + " " + to_string(v) + " exceeds the capacity of a " +
                        std::to_string(config.rows) + "-row board");
}

// Superimposition invariant of loading: the board already holds the answer.
void check_loaded(const BoardState& state, const Integer& expected, const char* what) {
  if (board_value(state) != expected)
    throw std::logic_error(std::string(what) + ": loaded board value " + to_string(board_value(state)) +
                           " differs from " + to_string(expected));
}

BoardState only(const BoardState& state, Sign sign) {
  BoardState out(state.config());
  for (int r = 0; r < state.rows(); ++r)
    for (int w : kWeights)
      if (auto n = state.count({w, r}, sign)) out.add_tokens({w, r}, sign, n);
  return out;
}

BoardState superimpose(BoardState a, const BoardState& b) {
  for (int r = 0; r < b.rows(); ++r)
    for (int w : kWeights) {
      const auto& c = b.at({w, r});
      if (c.pos) a.add_tokens({w, r}, Sign::positive, c.pos);
      if (c.neg) a.add_tokens({w, r}, Sign::negative, c.neg);
    }
  return a;
}

OperationResult finish(OperationKind kind, const BoardState& loaded, MoveTrace trace, const StepResult& simplified) {
  OperationResult result;
  result.kind = kind;
  result.loaded_value = board_value(loaded);
  trace.extend(simplified.trace);
  trace.terminal = simplified.state;
  result.trace = std::move(trace);
  result.terminal = simplified.state;
  result.value = decode_simple(simplified.state);
  return result;
}

}  // namespace

std::string_view to_string(OperationKind kind) {
  switch (kind) {
    case OperationKind::add: return "add";
    case OperationKind::sub: return "sub";
    case OperationKind::mul: return "mul";
    case OperationKind::div: return "div";
  }
  return "?";
}

OperationResult yapay(std::span<const Integer> addends, BoardConfig config) {
  config.validate();
  Integer sum = 0;
  for (const auto& a : addends) {
    require_non_negative(a, "addend");
    sum += a;
  }
  require_fits(sum, config, "sum");

  BoardState state(config);
  for (const auto& a : addends) state = encode_number(a, Sign::positive, state);
  check_loaded(state, sum, "yapay");
  return finish(OperationKind::add, state, MoveTrace{{}, state}, simplify(state));
}

OperationResult taqay(std::span<const Operand> operands, BoardConfig config) {
  config.validate();
  Integer difference = 0;
  for (const auto& op : operands) {
    require_non_negative(op.value, "operand");
    require_fits(op.value, config, "operand");
    difference += op.sign == Sign::positive ? op.value : Integer(-op.value);
  }
  require_fits(difference, config, "difference");

  BoardState state(config);
  for (const auto& op : operands) state = encode_number(op.value, op.sign, state);
  check_loaded(state, difference, "taqay");

  const StepResult paired = pair_and_cancel(state);
  return finish(OperationKind::sub, state, paired.trace, simplify(paired.state));
}

OperationResult taqay(std::span<const Integer> minuends, std::span<const Integer> subtrahends, BoardConfig config) {
  std::vector<Operand> ops;
  for (const auto& m : minuends) ops.push_back({m, Sign::positive});
  for (const auto& s : subtrahends) ops.push_back({s, Sign::negative});
  return taqay(ops, config);
}

BoardState abbreviated_replicate(const BoardState& state, SquareAddr addr, const Integer& n) {
  if (n < 1) throw DomainError("replication factor must be at least 1 (got " + to_string(n) + ")");
  if (state.count(addr, Sign::positive) == 0)
    throw DomainError("no positive token on " + to_string(addr) + " to replicate");
  const std::string digits = n.str();
  const int len = static_cast<int>(digits.size());
  if (addr.row + len - 1 >= state.rows())
    throw OverflowError("replicating " + to_string(addr) + " by " + digits + " needs row " +
                        std::to_string(addr.row + len - 1) + " on a " + std::to_string(state.rows()) + "-row board");

  BoardState out = state;
  for (int i = 0; i < len; ++i) {
    const int d = digits[static_cast<std::size_t>(len - 1 - i)] - '0';
    if (d > 0) out.add_tokens({addr.weight, addr.row + i}, Sign::positive, static_cast<std::uint64_t>(d));
  }
  out.remove_tokens(addr, Sign::positive, 1);
  return out;
}

OperationResult miray(const Integer& multiplicand, const Integer& multiplier, BoardConfig config) {
  config.validate();
  require_non_negative(multiplicand, "multiplicand");
  require_non_negative(multiplier, "multiplier");
  const Integer product = multiplicand * multiplier;
  require_fits(product, config, "product");

  BoardState state(config);
  if (multiplier != 0) state = encode_number(multiplicand, Sign::positive, config);

  // Token list is fixed before replication starts: row ascending, weight descending.
  std::vector<SquareAddr> tokens;
  for (int r = 0; r < state.rows(); ++r)
    for (int w : kWeights)
      for (std::uint64_t i = 0; i < state.count({w, r}, Sign::positive); ++i) tokens.push_back({w, r});
  for (const auto& t : tokens) state = abbreviated_replicate(state, t, multiplier);
  check_loaded(state, product, "miray");

  return finish(OperationKind::mul, state, MoveTrace{{}, state}, simplify(state));
}

BoardState displace_divisor(const BoardState& divisor_tokens, int k) {
  if (k < 0) throw DomainError("displacement must be non-negative");
  BoardState out(divisor_tokens.config());
  for (int r = 0; r < divisor_tokens.rows(); ++r)
    for (int w : kWeights) {
      const auto n = divisor_tokens.count({w, r}, Sign::negative);
      if (n == 0) continue;
      if (r + k >= out.rows())
        throw OverflowError("displacing " + to_string(SquareAddr{w, r}) + " by " + std::to_string(k) +
                            " rows leaves a " + std::to_string(out.rows()) + "-row board");
      out.add_tokens({w, r + k}, Sign::negative, n);
    }
  return out;
}

OperationResult rakiy(const Integer& dividend, const Integer& divisor, BoardConfig config) {
  config.validate();
  require_non_negative(dividend, "dividend");
  if (divisor <= 0) throw DomainError("divisor must be positive (got " + to_string(divisor) + ")");
  require_fits(dividend, config, "dividend");
  require_fits(divisor, config, "divisor");

  const BoardState divisor_tokens = encode_number(divisor, Sign::negative, config);
  const int divisor_top = decimal_digits(divisor) - 1;
  BoardState remaining = encode_number(dividend, Sign::positive, config);
  Integer current = dividend;

  // Closest displacement not above the dividend that stays on the board.
  int k = 0;
  while (divisor_top + k + 1 < config.rows && divisor * pow10(k + 1) <= current) ++k;

  DivisionOutcome outcome;
  MoveTrace trace{{}, superimpose(remaining, displace_divisor(divisor_tokens, k))};
  const BoardState loaded = trace.terminal;

  while (true) {
    const BoardState displaced = displace_divisor(divisor_tokens, k);
    const Integer displaced_value = divisor * pow10(k);
    std::uint64_t count = 0;
    while (current > 0 && displaced_value <= current) {
      // Pair on a scratch board; only the dividend's side leaves the real board.
      const StepResult paired = pair_and_cancel(superimpose(remaining, displaced));
      trace.extend(paired.trace);
      remaining = only(paired.state, Sign::positive);
      current = board_value(remaining);
      outcome.quotient += pow10(k);
      ++count;
      outcome.steps.push_back({k, outcome.quotient, current});
      if (outcome.quotient * divisor + current != dividend)
        throw std::logic_error("rakiy: subtraction counter and remaining dividend drifted");
    }
    outcome.subtractions_per_k.emplace_back(k, count);
    if (k == 0 || current == 0) break;
    --k;
  }

  const StepResult simplified = simplify(remaining);
  OperationResult result;
  result.kind = OperationKind::div;
  result.loaded_value = board_value(loaded);
  trace.extend(simplified.trace);
  trace.terminal = simplified.state;
  result.trace = std::move(trace);
  result.terminal = simplified.state;
  result.value = decode_simple(simplified.state);
  outcome.remainder = result.value;
  result.division = std::move(outcome);
  return result;
}

}  // namespace yupana
