#include "yupana/rules.hpp"

#include "yupana/errors.hpp"

#include <algorithm>
#include <limits>

namespace yupana {

namespace {

constexpr int kMaxChunkaShift = 19;  // 10^19 is the largest power of ten in a uint64_t

std::uint64_t chunka_size(int shift) {
  std::uint64_t p = 1;
  for (int i = 0; i < shift; ++i) p *= 10;
  return p;
}

std::vector<Rule> build_catalog() {
  using K = RuleKind;
  using R = RuleId;
  // clang-format off
  return {
    {R::iskay, "iskay", "Iskay", "short opening", K::reducing,
     "[2] holds two or more tokens",
     "2k tokens on [2] become k on [1] and k on [3]; an odd token stays on [2]",
     {{2, 0, 2}}, {{3, 0, 1}, {1, 0, 1}}},
    {R::kimsa, "kimsa", "Kimsa", "long opening", K::reducing,
     "[3] holds two or more tokens",
     "2k tokens on [3] become k on [5] and k on [1]; an odd token stays on [3]",
     {{3, 0, 2}}, {{5, 0, 1}, {1, 0, 1}}},
    {R::pisqa, "pisqa", "Pisqa", "big L", K::reducing,
     "[5] of row r holds two or more tokens",
     "2k tokens on [5] of row r become k tokens on [1] of row r+1; an odd token stays on [5]",
     {{5, 0, 2}}, {{1, 1, 1}}},
    {R::kikin_2on1, "kikin-2on1", "Kikin", "2 on [1] is 1 on [2]", K::reducing,
     "[1] holds two or more tokens",
     "2k tokens on [1] become k tokens on [2]",
     {{1, 0, 2}}, {{2, 0, 1}}},
    {R::kikin_3on1, "kikin-3on1", "Kikin", "3 on [1] is 1 on [3]", K::reducing,
     "[1] holds three or more tokens",
     "3k tokens on [1] become k tokens on [3]",
     {{1, 0, 3}}, {{3, 0, 1}}},
    {R::kikin_5on1, "kikin-5on1", "Kikin", "5 on [1] is 1 on [5]", K::reducing,
     "[1] holds five or more tokens",
     "5k tokens on [1] become k tokens on [5]",
     {{1, 0, 5}}, {{5, 0, 1}}},
    {R::pichana_12, "pichana-12", "Pichana [1][2]", "sweep [1][2]", K::reducing,
     "[2] and [1] both hold tokens",
     "k tokens from each of [2] and [1] become k tokens on [3]",
     {{2, 0, 1}, {1, 0, 1}}, {{3, 0, 1}}},
    {R::pichana_23, "pichana-23", "Pichana [2][3]", "sweep [2][3]", K::reducing,
     "[3] and [2] both hold tokens",
     "k tokens from each of [3] and [2] become k tokens on [5]",
     {{3, 0, 1}, {2, 0, 1}}, {{5, 0, 1}}},

    {R::expand_5, "expand-5", "Expansion of 5", "split [5]", K::expansion,
     "[5] holds a token",
     "k tokens on [5] become k on [3] and k on [2]",
     {{5, 0, 1}}, {{3, 0, 1}, {2, 0, 1}}},
    {R::expand_3, "expand-3", "Expansion of 3", "split [3]", K::expansion,
     "[3] holds a token",
     "k tokens on [3] become k on [2] and k on [1]",
     {{3, 0, 1}}, {{2, 0, 1}, {1, 0, 1}}},
    {R::expand_2, "expand-2", "Expansion of 2", "split [2]", K::expansion,
     "[2] holds a token",
     "k tokens on [2] become 2k tokens on [1]",
     {{2, 0, 1}}, {{1, 0, 2}}},
    {R::inv_pisqa, "inv-pisqa", "Inverse Pisqa", "inverse big L", K::expansion,
     "[1] of row r+1 holds a token",
     "k tokens on [1] of row r+1 become 2k tokens on [5] of row r",
     {{1, 1, 1}}, {{5, 0, 2}}},
    {R::inv_hatun_pichana, "inv-hatun-pichana", "Inverse Hatun Pichana", "inverse big sweep", K::expansion,
     "[1] of row r+1 holds a token",
     "k tokens on [1] of row r+1 become k each on [5], [3] and [2] of row r",
     {{1, 1, 1}}, {{5, 0, 1}, {3, 0, 1}, {2, 0, 1}}},
    {R::inv_sonqo, "inv-sonqo", "Inverse Sonqo", "inverse heart", K::expansion,
     "[1] of row r+1 holds a token",
     "k tokens on [1] of row r+1 become 2k on [3] and 2k on [2] of row r",
     {{1, 1, 1}}, {{3, 0, 2}, {2, 0, 2}}},
    {R::inv_huq_iskay_kimsa, "inv-huq-iskay-kimsa", "Inverse Huq Iskay Kimsa", "inverse 1-2-3", K::expansion,
     "[1] of row r+1 holds a token",
     "k tokens on [1] of row r+1 become k on [3], 2k on [2] and 3k on [1] of row r",
     {{1, 1, 1}}, {{3, 0, 1}, {2, 0, 2}, {1, 0, 3}}},

    {R::chunka, "chunka", "Chunka", "ten (Pachaq 100, Waranqa 1000, ...)", K::composite,
     "any square [s] of row r holds 10^n tokens, n >= 1",
     "10^n tokens on [s] of row r become 1 token on [s] of row r+n",
     {{0, 0, 0}}, {{0, 0, 1}}},
    {R::sonqo, "sonqo", "Sonqo", "heart", K::composite,
     "[3] and [2] of row r hold two tokens each",
     "2k on [3] and 2k on [2] of row r become k tokens on [1] of row r+1",
     {{3, 0, 2}, {2, 0, 2}}, {{1, 1, 1}}},
    {R::hatun_pichana, "hatun-pichana", "Hatun Pichana", "big sweep", K::composite,
     "[5], [3] and [2] of row r hold a token each",
     "k each from [5], [3] and [2] of row r become k tokens on [1] of row r+1",
     {{5, 0, 1}, {3, 0, 1}, {2, 0, 1}}, {{1, 1, 1}}},
    {R::pana_chaska, "pana-chaska", "Pa\xC3\xB1" "a Chaska", "star at right side", K::composite,
     "row r holds two on [3], one on [2] and two on [1]",
     "2k on [3], k on [2] and 2k on [1] of row r become k tokens on [1] of row r+1",
     {{3, 0, 2}, {2, 0, 1}, {1, 0, 2}}, {{1, 1, 1}}},
    {R::huq_iskay_kimsa, "huq-iskay-kimsa", "Huq Iskay Kimsa", "1-2-3", K::composite,
     "row r holds one on [3], two on [2] and three on [1]",
     "k on [3], 2k on [2] and 3k on [1] of row r become k tokens on [1] of row r+1",
     {{3, 0, 1}, {2, 0, 2}, {1, 0, 3}}, {{1, 1, 1}}},
    {R::kusillu, "kusillu", "K'usillu", "monkey", K::composite,
     "row r holds three on [3] and one on [1]",
     "3k on [3] and k on [1] of row r become k tokens on [1] of row r+1",
     {{3, 0, 3}, {1, 0, 1}}, {{1, 1, 1}}},
    {R::chinkay, "chinkay", "Chinkay", "disappear", K::composite,
     "a square holds both positive and negative tokens",
     "k positive and k negative tokens on the same square are taken away",
     {{0, 0, 1}}, {}},
  };
  // clang-format on
}

void add_touched(std::vector<SquareAddr>& touched, SquareAddr a) {
  if (std::find(touched.begin(), touched.end(), a) == touched.end()) touched.push_back(a);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) throw OverflowError("token count overflow");
  return a * b;
}

// Largest k the recipe supports at base_row in the given color, 0 if none.
std::uint64_t recipe_multiplicity(const Rule& r, const BoardState& state, int base_row, Sign sign) {
  std::uint64_t k = std::numeric_limits<std::uint64_t>::max();
  for (const auto& t : r.consume) {
    k = std::min(k, state.count({t.weight, base_row + t.row_offset}, sign) / t.per_k);
    if (k == 0) return 0;
  }
  return k;
}

int max_row_offset(const Rule& r) {
  int off = 0;
  for (const auto& t : r.consume) off = std::max(off, t.row_offset);
  for (const auto& t : r.produce) off = std::max(off, t.row_offset);
  return off;
}

}  // namespace

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::reducing: return "reducing";
    case RuleKind::expansion: return "expansion";
    case RuleKind::composite: return "composite";
  }
  return "?";
}

const std::vector<Rule>& catalog() {
  static const std::vector<Rule> rules = build_catalog();
  return rules;
}

const Rule& rule(RuleId id) { return catalog().at(static_cast<std::size_t>(id)); }

std::string_view rule_key(RuleId id) { return rule(id).key; }

RuleId parse_rule_id(std::string_view key) {
  for (const auto& r : catalog())
    if (r.key == key) return r.id;
  throw NotFoundError("unknown rule '" + std::string(key) + "'");
}

std::vector<RuleId> all_rule_ids() {
  std::vector<RuleId> ids;
  for (const auto& r : catalog()) ids.push_back(r.id);
  return ids;
}

std::vector<RuleId> non_expansion_rule_ids() {
  std::vector<RuleId> ids;
  for (const auto& r : catalog())
    if (r.kind != RuleKind::expansion) ids.push_back(r.id);
  return ids;
}

Match bind(RuleId id, Sign sign, SquareAddr anchor, std::uint64_t k, int shift, const BoardConfig& config) {
  const Rule& r = rule(id);
  if (k == 0) throw DomainError("multiplicity must be at least 1");
  if (!is_weight(anchor.weight)) throw DomainError("invalid anchor weight " + std::to_string(anchor.weight));
  if (!anchor.within(config)) throw OverflowError("anchor " + to_string(anchor) + " is off the board");

  Match m;
  m.rule = id;
  m.sign = id == RuleId::chinkay ? Sign::positive : sign;
  m.anchor = anchor;
  m.k = k;

  auto place = [&](std::vector<TokenDelta>& out, SquareAddr addr, Sign s, std::uint64_t n) {
    if (!addr.within(config))
      throw OverflowError(std::string(r.key) + " at " + to_string(anchor) + " would touch " + to_string(addr) +
                          ", outside a board of " + std::to_string(config.rows) + " rows");
    out.push_back({addr, s, n});
    add_touched(m.touched, addr);
  };

  if (id == RuleId::chunka) {
    if (shift < 1 || shift > kMaxChunkaShift) throw DomainError("chunka shift must be in [1, 19]");
    m.shift = shift;
    place(m.removals, anchor, sign, checked_mul(chunka_size(shift), k));
    place(m.deposits, {anchor.weight, anchor.row + shift}, sign, k);
  } else if (id == RuleId::chinkay) {
    if (shift != 0) throw DomainError("only chunka takes a shift");
    place(m.removals, anchor, Sign::positive, k);
    place(m.removals, anchor, Sign::negative, k);
  } else {
    if (shift != 0) throw DomainError("only chunka takes a shift");
    const Term& first = r.consume.front();
    if (anchor.weight != first.weight)
      throw DomainError(std::string(r.key) + " is anchored on [" + std::to_string(first.weight) + "]");
    const int base = anchor.row - first.row_offset;
    if (base < 0) throw DomainError(std::string(r.key) + " cannot be anchored on row " + std::to_string(anchor.row));
    for (const auto& t : r.consume) place(m.removals, {t.weight, base + t.row_offset}, sign, checked_mul(t.per_k, k));
    for (const auto& t : r.produce) place(m.deposits, {t.weight, base + t.row_offset}, sign, checked_mul(t.per_k, k));
  }
  std::sort(m.touched.begin(), m.touched.end());
  return m;
}

Match with_multiplicity(const Match& m, std::uint64_t k) {
  BoardConfig config{kMaxRows};
  return bind(m.rule, m.sign, m.anchor, k, m.shift, config);
}

std::vector<Match> match_rule(const Rule& r, const BoardState& state) {
  std::vector<Match> out;
  const BoardConfig& config = state.config();
  constexpr Sign kSigns[] = {Sign::positive, Sign::negative};

  if (r.id == RuleId::chunka) {
    for (int row = 0; row < config.rows; ++row)
      for (int w : kWeights)
        for (Sign s : kSigns) {
          const std::uint64_t c = state.count({w, row}, s);
          for (int n = 1; n <= kMaxChunkaShift && row + n < config.rows && chunka_size(n) <= c; ++n)
            out.push_back(bind(r.id, s, {w, row}, 1, n, config));
        }
    return out;
  }

  if (r.id == RuleId::chinkay) {
    for (int row = 0; row < config.rows; ++row)
      for (int w : kWeights) {
        const auto& cell = state.at({w, row});
        const std::uint64_t k = std::min(cell.pos, cell.neg);
        if (k > 0) out.push_back(bind(r.id, Sign::positive, {w, row}, k, 0, config));
      }
    return out;
  }

  const Term& first = r.consume.front();
  const int span = max_row_offset(r);
  for (int base = 0; base + span < config.rows; ++base)
    for (Sign s : kSigns)
      if (const std::uint64_t k = recipe_multiplicity(r, state, base, s); k > 0)
        out.push_back(bind(r.id, s, {first.weight, base + first.row_offset}, k, 0, config));
  return out;
}

std::vector<Match> match_rules(std::span<const RuleId> ids, const BoardState& state) {
  std::vector<Match> out;
  for (RuleId id : ids) {
    auto ms = match_rule(rule(id), state);
    out.insert(out.end(), std::make_move_iterator(ms.begin()), std::make_move_iterator(ms.end()));
  }
  return out;
}

bool is_valid(const BoardState& state, const Match& m) {
  for (const auto& a : m.touched)
    if (!a.within(state.config())) return false;
  for (const auto& d : m.removals)
    if (state.count(d.addr, d.sign) < d.count) return false;
  return true;
}

BoardState apply_match(const BoardState& state, const Match& m) {
  for (const auto& d : m.deposits)
    if (!d.addr.within(state.config()))
      throw OverflowError("deposit on " + to_string(d.addr) + " is outside a board of " +
                          std::to_string(state.rows()) + " rows");
  BoardState next = state;
  try {
    for (const auto& d : m.removals) next.remove_tokens(d.addr, d.sign, d.count);
  } catch (const StaleMatchError& e) {
    throw StaleMatchError(describe(m) + " is stale: " + e.what());
  }
  for (const auto& d : m.deposits) next.add_tokens(d.addr, d.sign, d.count);
  return next;
}

Integer rule_delta(const Match& m) {
  auto value = [](const TokenDelta& d) {
    Integer v = Integer(d.count) * d.addr.weight * pow10(d.addr.row);
    return d.sign == Sign::positive ? v : Integer(-v);
  };
  Integer delta = 0;
  for (const auto& d : m.deposits) delta += value(d);
  for (const auto& d : m.removals) delta -= value(d);
  return delta;
}

std::string describe(const Match& m) {
  std::string s(rule_key(m.rule));
  if (m.rule != RuleId::chinkay) s += std::string("(") + sign_char(m.sign) + ")";
  s += " @" + to_string(m.anchor) + " k=" + std::to_string(m.k);
  if (m.rule == RuleId::chunka) s += " n=" + std::to_string(m.shift);
  return s;
}

}  // namespace yupana
