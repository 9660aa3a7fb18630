#include "yupana/board.hpp"

#include "yupana/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace yupana {

namespace {

constexpr std::array<std::array<int, 3>, 10> kDigitSquares{{
    {0, 0, 0},  // 0
    {1, 0, 0},  // 1
    {2, 0, 0},  // 2
    {3, 0, 0},  // 3
    {3, 1, 0},  // 4
    {5, 0, 0},  // 5
    {5, 1, 0},  // 6
    {5, 2, 0},  // 7
    {5, 3, 0},  // 8
    {5, 3, 1},  // 9
}};

// Row patterns of a simple state, indexed by the occupancy bits of columns
// 5,3,2,1 (bit 3 = weight 5 ... bit 0 = weight 1); -1 marks non-canonical rows.
constexpr std::array<int, 16> kDigitOfMask = [] {
  std::array<int, 16> table{};
  table.fill(-1);
  for (int d = 0; d < 10; ++d) {
    int mask = 0;
    for (int w : kDigitSquares[static_cast<std::size_t>(d)]) {
      if (w == 0) continue;
      for (int c = 0; c < kColumns; ++c)
        if (kWeights[static_cast<std::size_t>(c)] == w) mask |= 1 << (kColumns - 1 - c);
    }
    table[static_cast<std::size_t>(mask)] = d;
  }
  return table;
}();

constexpr std::uint64_t kFastCountLimit = std::uint64_t{1} << 60;
constexpr int kFastRowLimit = 18;

Integer from_int128(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer result = static_cast<std::uint64_t>(mag >> 64);
  result <<= 64;
  result += static_cast<std::uint64_t>(mag);
  return negative ? Integer(-result) : result;
}

}  // namespace

void throw_bad_weight(int weight) {
  throw DomainError("square weight must be one of 5, 3, 2, 1 (got " + std::to_string(weight) + ")");
}

char sign_char(Sign s) noexcept { return s == Sign::positive ? '+' : '-'; }

Sign parse_sign(std::string_view text) {
  if (text == "+" || text == "positive" || text == "pos") return Sign::positive;
  if (text == "-" || text == "negative" || text == "neg") return Sign::negative;
  throw ParseError("unknown sign '" + std::string(text) + "'");
}

void BoardConfig::validate() const {
  if (rows < 1 || rows > kMaxRows)
    throw DomainError("board rows must be in [1, " + std::to_string(kMaxRows) + "] (got " + std::to_string(rows) + ")");
}

std::string to_string(const SquareAddr& addr) {
  return "(" + std::to_string(addr.weight) + "," + std::to_string(addr.row) + ")";
}

BoardState::BoardState(BoardConfig config) : config_(config) {
  config_.validate();
  cells_.resize(static_cast<std::size_t>(config_.rows) * kColumns);
}

void BoardState::throw_off_board(SquareAddr addr) const {
  if (!is_weight(addr.weight)) throw_bad_weight(addr.weight);
  throw OverflowError("square " + to_string(addr) + " is outside a board of " + std::to_string(config_.rows) + " rows");
}

void BoardState::add_tokens(SquareAddr addr, Sign s, std::uint64_t n) {
  auto& cell = cells_[index(addr)];
  auto& slot = s == Sign::positive ? cell.pos : cell.neg;
  if (slot > std::numeric_limits<std::uint64_t>::max() - n) throw OverflowError("token count overflow on " + to_string(addr));
  slot += n;
}

void BoardState::remove_tokens(SquareAddr addr, Sign s, std::uint64_t n) {
  auto& cell = cells_[index(addr)];
  auto& slot = s == Sign::positive ? cell.pos : cell.neg;
  if (slot < n)
    throw StaleMatchError("square " + to_string(addr) + " holds " + std::to_string(slot) + " " +
                          sign_char(s) + " tokens, cannot remove " + std::to_string(n));
  slot -= n;
}

std::uint64_t BoardState::total_tokens() const noexcept {
  std::uint64_t n = 0;
  for (const auto& c : cells_) n += c.total();
  return n;
}

std::uint64_t BoardState::total_tokens(Sign s) const noexcept {
  std::uint64_t n = 0;
  for (const auto& c : cells_) n += c.count(s);
  return n;
}

std::size_t BoardState::hash() const noexcept {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  };
  std::uint64_t h = static_cast<std::uint64_t>(config_.rows);
  for (const auto& c : cells_) h = mix(h, c.pos * 0xff51afd7ed558ccdull ^ (c.neg << 32 | c.neg >> 32));
  return static_cast<std::size_t>(h);
}

Integer effective_value(const SquareContent& content, SquareAddr addr) {
  if (!is_weight(addr.weight) || addr.row < 0) throw DomainError("invalid square " + to_string(addr));
  Integer net = Integer(content.pos) - Integer(content.neg);
  return net * addr.weight * pow10(addr.row);
}

Integer board_value(const BoardState& state) {
  const auto& cells = state.cells();
  const bool fast = state.rows() <= kFastRowLimit &&
                    std::all_of(cells.begin(), cells.end(), [](const SquareContent& c) {
                      return c.pos < kFastCountLimit && c.neg < kFastCountLimit;
                    });
  if (fast) {
    __int128 total = 0;
    __int128 scale = 1;
    for (int r = 0; r < state.rows(); ++r, scale *= 10) {
      for (int c = 0; c < kColumns; ++c) {
        const auto& cell = cells[static_cast<std::size_t>(r * kColumns + c)];
        const __int128 net = static_cast<__int128>(cell.pos) - static_cast<__int128>(cell.neg);
        total += net * kWeights[static_cast<std::size_t>(c)] * scale;
      }
    }
    return from_int128(total);
  }
  Integer total = 0;
  for (int r = 0; r < state.rows(); ++r)
    for (int w : kWeights) total += effective_value(state.at({w, r}), {w, r});
  return total;
}

Integer board_value_by_tokens(const BoardState& state) {
  Integer total = 0;
  for (int r = 0; r < state.rows(); ++r) {
    for (int w : kWeights) {
      const SquareAddr addr{w, r};
      const Integer token_value = Integer(w) * pow10(r);
      const auto& cell = state.at(addr);
      for (std::uint64_t i = 0; i < cell.pos; ++i) total += token_value;
      for (std::uint64_t i = 0; i < cell.neg; ++i) total -= token_value;
    }
  }
  return total;
}

DigitPattern encode_digit(int digit) {
  if (digit < 0 || digit > 9) throw DomainError("digit must be in [0, 9] (got " + std::to_string(digit) + ")");
  DigitPattern p{digit, {}};
  for (int w : kDigitSquares[static_cast<std::size_t>(digit)])
    if (w != 0) p.squares.push_back(w);
  return p;
}

Integer capacity(const BoardConfig& config) {
  config.validate();
  return pow10(config.rows) - 1;
}

BoardState encode_number(const Integer& n, Sign sign, const BoardState& base) {
  if (n < 0) throw DomainError("encode_number takes a non-negative value (got " + to_string(n) + ")");
  if (n > capacity(base.config()))
    throw OverflowError(to_string(n) + " exceeds the capacity of a " + std::to_string(base.rows()) + "-row board");
  BoardState out = base;
  const std::string digits = n.str();
  const int len = static_cast<int>(digits.size());
  for (int i = 0; i < len; ++i) {
    const int row = len - 1 - i;
    for (int w : encode_digit(digits[static_cast<std::size_t>(i)] - '0').squares) out.add_tokens({w, row}, sign, 1);
  }
  return out;
}

BoardState encode_number(const Integer& n, Sign sign, BoardConfig config) {
  return encode_number(n, sign, BoardState(config));
}

namespace {

// Digit of a row if its tokens (all of one sign) form a canonical pattern.
int row_digit(const BoardState& state, int row, Sign sign) {
  int mask = 0;
  for (int c = 0; c < kColumns; ++c) {
    const auto& cell = state.cells()[static_cast<std::size_t>(row * kColumns + c)];
    const std::uint64_t n = cell.count(sign);
    if (n > 1) return -1;
    if (n == 1) mask |= 1 << (kColumns - 1 - c);
  }
  return kDigitOfMask[static_cast<std::size_t>(mask)];
}

}  // namespace

bool is_simple(const BoardState& state) {
  if (state.mixed()) return false;
  const Sign sign = state.has_sign(Sign::negative) ? Sign::negative : Sign::positive;
  for (int r = 0; r < state.rows(); ++r)
    if (row_digit(state, r, sign) < 0) return false;
  return true;
}

Integer decode_simple(const BoardState& state) {
  if (!is_simple(state)) throw NotSimpleError("board is not in a simple state");
  const Sign sign = state.has_sign(Sign::negative) ? Sign::negative : Sign::positive;
  Integer value = 0;
  for (int r = state.rows() - 1; r >= 0; --r) value = value * 10 + row_digit(state, r, sign);
  return sign == Sign::negative ? Integer(-value) : value;
}

std::string to_snapshot(const BoardState& state) {
  std::string out = "yupana-board rows=" + std::to_string(state.rows()) + "\n";
  for (int r = 0; r < state.rows(); ++r) {
    for (int w : kWeights) {
      const auto& cell = state.at({w, r});
      if (cell.empty()) continue;
      out += "row=" + std::to_string(r) + " weight=" + std::to_string(w) + " pos=" + std::to_string(cell.pos) +
             " neg=" + std::to_string(cell.neg) + "\n";
    }
  }
  return out;
}

namespace {

std::uint64_t parse_field(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() == key.size() || token[key.size()] != '=')
    throw ParseError("snapshot: expected '" + std::string(key) + "=' in '" + std::string(token) + "'");
  const auto digits = token.substr(key.size() + 1);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw ParseError("snapshot: bad number in '" + std::string(token) + "'");
  return v;
}

}  // namespace

BoardState parse_snapshot(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("snapshot: empty input");
  std::istringstream header(line);
  std::string magic, rows_field;
  header >> magic >> rows_field;
  if (magic != "yupana-board") throw ParseError("snapshot: missing 'yupana-board' header");
  BoardConfig config{static_cast<int>(parse_field(rows_field, "rows"))};
  try {
    config.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("snapshot: ") + e.what());
  }
  BoardState state(config);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string f_row, f_weight, f_pos, f_neg;
    fields >> f_row >> f_weight >> f_pos >> f_neg;
    const SquareAddr addr{static_cast<int>(parse_field(f_weight, "weight")), static_cast<int>(parse_field(f_row, "row"))};
    if (!addr.within(config)) throw ParseError("snapshot: square " + to_string(addr) + " is off the board");
    state.add_tokens(addr, Sign::positive, parse_field(f_pos, "pos"));
    state.add_tokens(addr, Sign::negative, parse_field(f_neg, "neg"));
  }
  return state;
}

}  // namespace yupana
