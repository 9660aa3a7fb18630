#include "yupana/errors.hpp"
#include "yupana/rules.hpp"

#include "../support/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace yupana;
using yupana::testing::board_of;
using yupana::testing::small_value;

namespace {

std::vector<Match> matches_of(RuleId id, const BoardState& s) { return match_rule(rule(id), s); }

// Signed value of a token list, computed without the engine.
long long list_value(const std::vector<TokenDelta>& deltas) {
  long long v = 0;
  for (const auto& d : deltas) {
    long long place = 1;
    for (int i = 0; i < d.addr.row; ++i) place *= 10;
    v += static_cast<long long>(d.count) * d.addr.weight * place * (d.sign == Sign::positive ? 1 : -1);
  }
  return v;
}

}  // namespace

TEST_SUITE("rules") {

TEST_CASE("catalog has the 22 rules") {
  const auto& c = catalog();
  REQUIRE(c.size() == 22);
  std::set<std::string_view> keys;
  for (const auto& r : c) keys.insert(r.key);
  CHECK(keys.size() == 22);
  for (const char* key : {"iskay", "kimsa", "pisqa", "kikin-2on1", "kikin-3on1", "kikin-5on1", "pichana-12",
                          "pichana-23", "expand-5", "expand-3", "expand-2", "inv-pisqa", "inv-hatun-pichana",
                          "inv-sonqo", "inv-huq-iskay-kimsa", "chunka", "sonqo", "hatun-pichana", "pana-chaska",
                          "huq-iskay-kimsa", "kusillu", "chinkay"})
    CHECK(keys.count(key) == 1);
  CHECK(std::count_if(c.begin(), c.end(), [](const Rule& r) { return r.kind == RuleKind::reducing; }) == 8);
  CHECK(std::count_if(c.begin(), c.end(), [](const Rule& r) { return r.kind == RuleKind::expansion; }) == 7);
  CHECK(parse_rule_id("sonqo") == RuleId::sonqo);
  CHECK_THROWS_AS(parse_rule_id("nope"), NotFoundError);
}

TEST_CASE("iskay binds the largest k and leaves the odd token") {
  const BoardState s = board_of({{2, 0, 5}});
  const auto ms = matches_of(RuleId::iskay, s);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].k == 2);
  const BoardState after = apply_match(s, ms[0]);
  CHECK(after == board_of({{2, 0, 1}, {3, 0, 2}, {1, 0, 2}}));
}

TEST_CASE("no rule matches the empty board") {
  for (const auto& r : catalog()) CHECK(match_rule(r, BoardState{}).empty());
}

TEST_CASE("sonqo carries into the next row") {
  const BoardState s = board_of({{2, 0, 2}, {3, 0, 2}});
  const auto ms = matches_of(RuleId::sonqo, s);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].anchor_row() == 0);
  REQUIRE(ms[0].deposits.size() == 1);
  CHECK(ms[0].deposits[0].addr == SquareAddr{1, 1});
  CHECK(apply_match(s, ms[0]) == board_of({{1, 1, 1}}));
}

TEST_CASE("kikin 2 on 1") {
  const BoardState s = board_of({{1, 0, 2}});
  const auto ms = matches_of(RuleId::kikin_2on1, s);
  REQUIRE(ms.size() == 1);
  const BoardState after = apply_match(s, ms[0]);
  CHECK(after == board_of({{2, 0, 1}}));
  CHECK(board_value(after) == 2);
}

TEST_CASE("hatun pichana") {
  const BoardState s = board_of({{5, 0, 1}, {3, 0, 1}, {2, 0, 1}});
  const auto ms = matches_of(RuleId::hatun_pichana, s);
  REQUIRE(ms.size() == 1);
  const BoardState after = apply_match(s, ms[0]);
  CHECK(after == board_of({{1, 1, 1}}));
  CHECK(board_value(after) == 10);
}

TEST_CASE("chinkay cancels equal colors") {
  const BoardState s = board_of({{5, 2, 3, 3}});
  const auto ms = matches_of(RuleId::chinkay, s);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].k == 3);
  CHECK(apply_match(s, ms[0]).empty());
}

TEST_CASE("chunka offers every feasible shift") {
  const BoardState s = board_of({{3, 0, 100}});
  const auto ms = matches_of(RuleId::chunka, s);
  REQUIRE(ms.size() == 2);
  std::set<int> shifts;
  for (const auto& m : ms) shifts.insert(m.shift);
  CHECK(shifts == std::set<int>{1, 2});
  for (const auto& m : ms) CHECK(board_value(apply_match(s, m)) == 300);
  // Top row: nowhere to carry.
  CHECK(matches_of(RuleId::chunka, board_of({{1, 4, 10}})).empty());
}

TEST_CASE("rule deltas are zero") {
  const Match pisqa = bind(RuleId::pisqa, Sign::positive, {5, 0}, 1, 0, {});
  CHECK(list_value(pisqa.deposits) - list_value(pisqa.removals) == 0);
  CHECK(rule_delta(pisqa) == 0);
  CHECK(list_value(pisqa.removals) == 10);

  const Match kimsa = bind(RuleId::kimsa, Sign::positive, {3, 2}, 1, 0, {});
  CHECK(rule_delta(kimsa) == 0);
  CHECK(list_value(kimsa.removals) == 600);

  const Match inv_sonqo = bind(RuleId::inv_sonqo, Sign::positive, {1, 1}, 1, 0, {});
  CHECK(rule_delta(inv_sonqo) == 0);
  CHECK(list_value(inv_sonqo.deposits) == 10);

  for (const auto& r : catalog()) {
    const SquareAddr anchor = r.id == RuleId::chunka || r.id == RuleId::chinkay ? SquareAddr{2, 1}
                              : r.consume.front().row_offset == 1           ? SquareAddr{1, 1}
                                                                             : SquareAddr{r.consume.front().weight, 1};
    const Match m = bind(r.id, Sign::negative, anchor, 3, r.id == RuleId::chunka ? 2 : 0, BoardConfig{5});
    CHECK_MESSAGE(rule_delta(m) == 0, r.key);
    CHECK_MESSAGE(list_value(m.deposits) == list_value(m.removals), r.key);
  }
}

TEST_CASE("expand-5 splits five into three and two") {
  const BoardState s = board_of({{5, 1, 2}});
  const auto ms = matches_of(RuleId::expand_5, s);
  REQUIRE(ms.size() == 1);
  CHECK(apply_match(s, ms[0]) == board_of({{3, 1, 2}, {2, 1, 2}}));
}

TEST_CASE("inverse pairs restore the local configuration") {
  struct Pair {
    RuleId forward;
    RuleId back;
    BoardState start;
  };
  const std::vector<Pair> pairs{
      {RuleId::expand_2, RuleId::kikin_2on1, board_of({{2, 0, 1}})},
      {RuleId::inv_pisqa, RuleId::pisqa, board_of({{1, 1, 1}})},
      {RuleId::inv_sonqo, RuleId::sonqo, board_of({{1, 2, 1}})},
      {RuleId::inv_hatun_pichana, RuleId::hatun_pichana, board_of({{1, 3, 1}})},
      {RuleId::inv_huq_iskay_kimsa, RuleId::huq_iskay_kimsa, board_of({{1, 1, 1}})},
  };
  for (const auto& p : pairs) {
    const auto fwd = matches_of(p.forward, p.start);
    REQUIRE(fwd.size() == 1);
    const BoardState mid = apply_match(p.start, fwd[0]);
    const auto back = matches_of(p.back, mid);
    REQUIRE_MESSAGE(back.size() == 1, rule_key(p.back));
    CHECK_MESSAGE(apply_match(mid, back[0]) == p.start, rule_key(p.back));
  }
}

TEST_CASE("rules act on one color at a time") {
  const BoardState s = board_of({{1, 0, 2, 2}});
  const auto ms = matches_of(RuleId::kikin_2on1, s);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].sign != ms[1].sign);
  for (const auto& m : ms) {
    const BoardState after = apply_match(s, m);
    CHECK(after.count({2, 0}, m.sign) == 1);
    CHECK(after.count({2, 0}, opposite(m.sign)) == 0);
  }
  // A pattern split across colors is not a match.
  CHECK(matches_of(RuleId::pichana_12, board_of({{2, 0, 1, 0}, {1, 0, 0, 1}})).empty());
}

TEST_CASE("carries above the top row are not matches") {
  CHECK(matches_of(RuleId::pisqa, board_of({{5, 4, 2}})).empty());
  CHECK(matches_of(RuleId::sonqo, board_of({{3, 0, 2}, {2, 0, 2}}, 1)).empty());
  CHECK_THROWS_AS(bind(RuleId::pisqa, Sign::positive, {5, 4}, 1, 0, {}), OverflowError);
}

TEST_CASE("stale and malformed matches") {
  const Match m = bind(RuleId::kikin_3on1, Sign::positive, {1, 0}, 1, 0, {});
  CHECK_THROWS_AS(apply_match(board_of({{1, 0, 2}}), m), StaleMatchError);
  CHECK_FALSE(is_valid(board_of({{1, 0, 2}}), m));
  CHECK(is_valid(board_of({{1, 0, 3}}), m));
  CHECK_THROWS_AS(bind(RuleId::kikin_2on1, Sign::positive, {2, 0}, 1, 0, {}), DomainError);
  CHECK_THROWS_AS(bind(RuleId::iskay, Sign::positive, {2, 0}, 1, 1, {}), DomainError);
  CHECK_THROWS_AS(bind(RuleId::chunka, Sign::positive, {2, 0}, 1, 0, {}), DomainError);
}

TEST_CASE("with_multiplicity rebinds") {
  const auto ms = matches_of(RuleId::kikin_2on1, board_of({{1, 0, 9}}));
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].k == 4);
  const Match one = with_multiplicity(ms[0], 1);
  CHECK(one.k == 1);
  CHECK(apply_match(board_of({{1, 0, 9}}), one) == board_of({{1, 0, 7}, {2, 0, 1}}));
}

TEST_CASE("random boards: values kept, touched squares on board") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> count(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    BoardState s(BoardConfig{1 + trial % 4});
    for (int r = 0; r < s.rows(); ++r)
      for (int w : kWeights) s.add_tokens({w, r}, trial % 3 == 0 ? Sign::negative : Sign::positive, count(rng));
    const long long v = small_value(s);
    for (const auto& r : catalog()) {
      for (const auto& m : match_rule(r, s)) {
        for (const auto& a : m.touched) CHECK(a.within(s.config()));
        CHECK(small_value(apply_match(s, m)) == v);
      }
    }
  }
}

TEST_CASE("describe") { CHECK(describe(bind(RuleId::kikin_2on1, Sign::positive, {1, 0}, 1, 0, {})) == "kikin-2on1(+) @(1,0) k=1"); }

}  // TEST_SUITE
