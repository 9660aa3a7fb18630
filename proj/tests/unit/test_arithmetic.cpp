#include "yupana/arithmetic.hpp"
#include "yupana/errors.hpp"

#include "../support/oracle.hpp"

#include <doctest.h>

#include <algorithm>

using namespace yupana;
using yupana::testing::board_of;

namespace {

OperationResult add(std::vector<Integer> xs, int rows = kDefaultRows) { return yapay(xs, BoardConfig{rows}); }

OperationResult sub(std::vector<Integer> mins, std::vector<Integer> subs) { return taqay(mins, subs); }

}  // namespace

TEST_SUITE("arithmetic") {

TEST_CASE("yapay") {
  const auto r = add({736, 532});
  CHECK(r.value == 1268);
  CHECK(r.loaded_value == 1268);
  CHECK(r.terminal == encode_number(1268));
  CHECK(add({0, 4071}).value == 4071);
  CHECK(add({}).value == 0);
  CHECK(add({1, 2, 3, 4, 5, 6, 7, 8, 9}).value == 45);
  CHECK_THROWS_AS(add({99999, 1}), OverflowError);
  CHECK(add({99999, 1}, 6).value == 100000);
}

TEST_CASE("taqay") {
  const auto r = sub({945}, {532});
  CHECK(r.value == 413);
  CHECK(r.loaded_value == 413);
  CHECK(r.terminal == encode_number(413));
  const auto zero = sub({777}, {777});
  CHECK(zero.value == 0);
  CHECK(zero.terminal.empty());
  CHECK(sub({10, 20}, {5, 3}).value == 22);
  const auto neg = sub({532}, {945});
  CHECK(neg.value == -413);
  CHECK(neg.terminal == encode_number(413, Sign::negative));
}

TEST_CASE("taqay load order does not matter") {
  const std::vector<Operand> a{{10, Sign::positive}, {20, Sign::positive}, {5, Sign::negative}, {3, Sign::negative}};
  std::vector<Operand> b{{3, Sign::negative}, {20, Sign::positive}, {5, Sign::negative}, {10, Sign::positive}};
  CHECK(taqay(a).terminal == taqay(b).terminal);
  CHECK(taqay(a).value == 22);
  std::vector<Integer> xs{305, 47, 999};
  const auto first = yapay(xs).terminal;
  std::reverse(xs.begin(), xs.end());
  CHECK(yapay(xs).terminal == first);
}

TEST_CASE("abbreviated replication") {
  const BoardState s = board_of({{5, 0, 1}});
  const BoardState three = abbreviated_replicate(s, {5, 0}, 3);
  CHECK(three == board_of({{5, 0, 3}}));
  CHECK(board_value(three) - board_value(s) == 10);
  CHECK(abbreviated_replicate(s, {5, 0}, 1) == s);

  const BoardState t = board_of({{3, 1, 1}});
  const BoardState r46 = abbreviated_replicate(t, {3, 1}, 46);
  CHECK(r46 == board_of({{3, 2, 4}, {3, 1, 6}}));
  CHECK(board_value(r46) - board_value(t) == 1350);

  CHECK_THROWS_AS(abbreviated_replicate(s, {2, 0}, 3), DomainError);
  CHECK_THROWS_AS(abbreviated_replicate(s, {5, 0}, 0), DomainError);
  CHECK_THROWS_AS(abbreviated_replicate(board_of({{5, 4, 1}}), {5, 4}, 12), OverflowError);
}

TEST_CASE("miray") {
  const auto r = miray(513, 3);
  CHECK(r.value == 1539);
  CHECK(r.loaded_value == 1539);
  CHECK(r.terminal == encode_number(1539));
  CHECK(miray(78, 46).value == 3588);
  CHECK(miray(4321, 1).value == 4321);
  CHECK(miray(0, 77).terminal.empty());
  CHECK(miray(77, 0).terminal.empty());
  CHECK(miray(77, 0).value == 0);
  CHECK_THROWS_AS(miray(50000, 2), OverflowError);
}

TEST_CASE("displace divisor") {
  const BoardState d = encode_number(322, Sign::negative);
  CHECK(board_value(displace_divisor(d, 1)) == -3220);
  CHECK(displace_divisor(d, 0) == d);
  CHECK(board_value(displace_divisor(encode_number(43, Sign::negative, BoardConfig{6}), 3)) == -43000);
  CHECK_THROWS_AS(displace_divisor(d, 3), OverflowError);
}

TEST_CASE("rakiy: figure 7") {
  const auto r = rakiy(1534, 322);
  REQUIRE(r.division);
  CHECK(r.division->quotient == 4);
  CHECK(r.division->remainder == 246);
  CHECK(r.value == 246);
  CHECK(r.terminal == encode_number(246));
}

TEST_CASE("rakiy: multi-level displacement") {
  const auto r = rakiy(98076, 43);
  REQUIRE(r.division);
  CHECK(r.division->quotient == 2280);
  CHECK(r.division->remainder == 36);
  using P = std::pair<int, std::uint64_t>;
  CHECK(r.division->subtractions_per_k == std::vector<P>{{3, 2}, {2, 2}, {1, 8}, {0, 0}});
  for (const auto& step : r.division->steps) CHECK(step.quotient * 43 + step.dividend == 98076);
  for (std::size_t i = 1; i < r.division->steps.size(); ++i)
    CHECK(r.division->steps[i].k <= r.division->steps[i - 1].k);
}

TEST_CASE("rakiy edge cases") {
  CHECK(rakiy(4321, 1).division->quotient == 4321);
  CHECK(rakiy(4321, 1).division->remainder == 0);
  const auto small = rakiy(5, 7);
  CHECK(small.division->quotient == 0);
  CHECK(small.division->remainder == 5);
  CHECK(small.division->steps.empty());
  const auto zero = rakiy(0, 9);
  CHECK(zero.division->quotient == 0);
  CHECK(zero.division->remainder == 0);
  CHECK(zero.terminal.empty());
  const auto exact = rakiy(322, 322);
  CHECK(exact.division->quotient == 1);
  CHECK(exact.division->remainder == 0);
  CHECK_THROWS_AS(rakiy(10, 0), DomainError);
}

TEST_CASE("small ranges against host arithmetic") {
  for (int a = 0; a <= 60; a += 3)
    for (int b = 0; b <= 60; b += 7) {
      CHECK(add({a, b}).value == a + b);
      CHECK(sub({a}, {b}).value == a - b);
      CHECK(miray(a, b).value == a * b);
      if (b > 0) {
        const auto d = rakiy(a, b);
        CHECK(d.division->quotient == a / b);
        CHECK(d.division->remainder == a % b);
      }
    }
}

}  // TEST_SUITE
