#pragma once

#include "yupana/board.hpp"
#include "yupana/engine.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace yupana {

enum class OperationKind : std::uint8_t { add, sub, mul, div };

std::string_view to_string(OperationKind kind);

struct Operand {
  Integer value;
  Sign sign = Sign::positive;
};

// One subtraction of the displaced divisor.
struct DivisionStep {
  int k = 0;                // rows the divisor was displaced
  Integer quotient;         // counter after this subtraction
  Integer dividend;         // value of the remaining positive tokens
};

struct DivisionOutcome {
  Integer quotient;
  Integer remainder;
  std::vector<DivisionStep> steps;
  // (k, subtractions made at that displacement), in the order they happened.
  std::vector<std::pair<int, std::uint64_t>> subtractions_per_k;
};

struct OperationResult {
  OperationKind kind = OperationKind::add;
  BoardState terminal;
  // decode_simple(terminal); the remainder for division.
  Integer value;
  std::optional<DivisionOutcome> division;
  MoveTrace trace;
  // Board value right after loading (and replication, for multiplication).
  Integer loaded_value;
};

// Addition: superimpose all addends, then simplify.
OperationResult yapay(std::span<const Integer> addends, BoardConfig config = {});

// Subtraction with operands loaded in the given order (minuends positive,
// subtrahends negative); cancels colors, then simplifies.
OperationResult taqay(std::span<const Operand> operands, BoardConfig config = {});
OperationResult taqay(std::span<const Integer> minuends, std::span<const Integer> subtrahends, BoardConfig config = {});

// Replaces one positive token on `addr` by the digits of n stacked up its
// column. Throws DomainError (no token, n < 1) or OverflowError.
BoardState abbreviated_replicate(const BoardState& state, SquareAddr addr, const Integer& n);

// Multiplication by abbreviated replication of every multiplicand token.
OperationResult miray(const Integer& multiplicand, const Integer& multiplier, BoardConfig config = {});

// Moves every negative token k rows up its column. Throws OverflowError when a
// token would leave the board.
BoardState displace_divisor(const BoardState& divisor_tokens, int k);

// Division by fast repeated subtraction. Throws DomainError for a zero divisor.
OperationResult rakiy(const Integer& dividend, const Integer& divisor, BoardConfig config = {});

}  // namespace yupana
