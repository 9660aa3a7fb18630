#pragma once

#include "yupana/arithmetic.hpp"
#include "yupana/board.hpp"
#include "yupana/rules.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace yupana::verify {

struct Counterexample {
  std::uint64_t seed = 0;
  std::string state;  // board snapshot, shrunk where the property allows it
  std::string detail;
};

// Property ids: thm1 .. thm9, confluence, parallelism (merged reports join
// their ids with '+').
struct PropertyReport {
  std::string id;
  std::uint64_t trials = 0;
  std::vector<Counterexample> failures;

  bool passed() const noexcept { return failures.empty(); }
  std::string status() const { return passed() ? "pass" : "fail"; }
};

// Board value straight from the definition: every square's (pos - neg) times
// weight times a power of ten built by repeated multiplication.
Integer oracle_value(const BoardState& state);

// Seed of trial `index` of a property, derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, std::string_view property, std::uint64_t index);

struct RandomBoardSpec {
  int rows = kDefaultRows;
  std::uint64_t max_tokens_per_square = 4;
  double fill = 0.5;  // chance that a square color receives tokens
  bool mixed = false; // allow negative tokens
};

BoardState random_board(std::mt19937_64& rng, const RandomBoardSpec& spec);

// Greedy shrink: drop tokens one at a time, then empty top rows, while
// `fails` stays true.
BoardState shrink(BoardState state, const std::function<bool(const BoardState&)>& fails);

// thm1: editing one square moves the board value by exactly the edit's value.
PropertyReport check_transfer(std::uint64_t samples, std::uint64_t master_seed);

// thm2: every match of every rule keeps the board value, rule_delta is zero
// and token counts move the way the rule's kind says.
PropertyReport check_invariance(std::uint64_t trials_per_rule, std::uint64_t master_seed);

// thm3: superimposed encodings add up.
PropertyReport check_superposition(std::uint64_t samples, std::uint64_t master_seed);

// thm4: replicating every token of a simple state j times scales its value by j.
PropertyReport check_scaling(std::uint64_t samples, std::uint64_t master_seed);

// thm5: abbreviated and full replication of a token change the value alike.
PropertyReport check_abbreviation(std::uint64_t samples, std::uint64_t master_seed);

// thm4 + thm5.
PropertyReport check_replication(std::uint64_t samples, std::uint64_t master_seed);

struct OperationRanges {
  int rows = kDefaultRows;
  int add_max = 99;    // yapay and taqay over [0, add_max]^2
  int mul_a_max = 99;  // miray over [0, mul_a_max] x [0, mul_b_max]
  int mul_b_max = 20;
  int div_a_max = 99;  // rakiy over [0, div_a_max] x [1, div_b_max]
  int div_b_max = 20;
};

// thm6 .. thm9: one procedure against host integer arithmetic over its range,
// plus the worked examples and zero operands.
PropertyReport check_operation(OperationKind kind, const OperationRanges& ranges);

// thm6 + thm7 + thm8 + thm9.
PropertyReport check_operations(const OperationRanges& ranges);

// Decoding an encoding gives the number back, for every n the board holds.
PropertyReport check_representation(int rows);

struct ConfluenceOptions {
  int n_max = 999;
  int decompositions = 3;
  int max_summands = 4;
  std::uint64_t master_seed = 0;
};

// Random superpositions of n explored with the non-expansion rules reach one
// terminal, the encoding of n; the canonical strategy never cycles.
PropertyReport check_confluence(const ConfluenceOptions& options);

// Firing disjoint matches together equals every sequential order.
PropertyReport check_parallelism(std::uint64_t trials, std::uint64_t master_seed);

struct SuiteOptions {
  std::uint64_t master_seed = 20220619;
  std::uint64_t samples = 1000;
  std::uint64_t trials_per_rule = 1000;
  OperationRanges ranges;
  ConfluenceOptions confluence;
};

// thm1 .. thm9, confluence, parallelism, in that order.
std::vector<PropertyReport> run_suite(const SuiteOptions& options);

}  // namespace yupana::verify
