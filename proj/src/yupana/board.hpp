#pragma once

#include "yupana/integer.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace yupana {

// Square weights of one row, left to right.
inline constexpr std::array<int, 4> kWeights{5, 3, 2, 1};
inline constexpr int kColumns = 4;
inline constexpr int kDefaultRows = 5;
inline constexpr int kMaxRows = 64;

// Column index of a weight (5 -> 0 ... 1 -> 3). Throws DomainError for
// anything outside {5,3,2,1}.
[[noreturn]] void throw_bad_weight(int weight);

constexpr bool is_weight(int weight) noexcept { return weight == 5 || weight == 3 || weight == 2 || weight == 1; }

constexpr int column_of(int weight) {
  switch (weight) {
    case 5: return 0;
    case 3: return 1;
    case 2: return 2;
    case 1: return 3;
    default: throw_bad_weight(weight);
  }
}

enum class Sign : std::uint8_t { positive, negative };

constexpr Sign opposite(Sign s) noexcept { return s == Sign::positive ? Sign::negative : Sign::positive; }
char sign_char(Sign s) noexcept;
Sign parse_sign(std::string_view text);

struct BoardConfig {
  int rows = kDefaultRows;

  // Throws DomainError unless 1 <= rows <= kMaxRows.
  void validate() const;
  friend bool operator==(const BoardConfig&, const BoardConfig&) = default;
};

struct SquareAddr {
  int weight = 1;
  int row = 0;

  int column() const { return column_of(weight); }
  bool within(const BoardConfig& config) const noexcept { return is_weight(weight) && row >= 0 && row < config.rows; }

  // Orders squares by the value of one token on them: (row, weight) ascending.
  friend constexpr auto operator<=>(const SquareAddr& a, const SquareAddr& b) noexcept {
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.weight <=> b.weight;
  }
  friend constexpr bool operator==(const SquareAddr&, const SquareAddr&) noexcept = default;
};

std::string to_string(const SquareAddr& addr);

struct SquareContent {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;

  std::uint64_t count(Sign s) const noexcept { return s == Sign::positive ? pos : neg; }
  std::uint64_t total() const noexcept { return pos + neg; }
  bool empty() const noexcept { return pos == 0 && neg == 0; }
  friend auto operator<=>(const SquareContent&, const SquareContent&) = default;
};

// Signed token counts on a dense rows x 4 grid. A plain value: copies are
// independent and every free function below returns a new state.
class BoardState {
 public:
  explicit BoardState(BoardConfig config = {});

  const BoardConfig& config() const noexcept { return config_; }
  int rows() const noexcept { return config_.rows; }

  const SquareContent& at(SquareAddr addr) const { return cells_[index(addr)]; }
  std::uint64_t count(SquareAddr addr, Sign s) const { return at(addr).count(s); }

  // In-place edits, used while building a state. remove_tokens throws
  // StaleMatchError when fewer tokens are present than requested.
  void add_tokens(SquareAddr addr, Sign s, std::uint64_t n);
  void remove_tokens(SquareAddr addr, Sign s, std::uint64_t n);

  std::uint64_t total_tokens() const noexcept;
  std::uint64_t total_tokens(Sign s) const noexcept;
  bool empty() const noexcept { return total_tokens() == 0; }
  bool has_sign(Sign s) const noexcept { return total_tokens(s) != 0; }
  bool mixed() const noexcept { return has_sign(Sign::positive) && has_sign(Sign::negative); }

  // Row-major cells, row 0 first, columns 5,3,2,1.
  const std::vector<SquareContent>& cells() const noexcept { return cells_; }

  std::size_t hash() const noexcept;
  friend bool operator==(const BoardState&, const BoardState&) = default;

 private:
  std::size_t index(SquareAddr addr) const {
    if (!addr.within(config_)) throw_off_board(addr);
    return static_cast<std::size_t>(addr.row) * kColumns + static_cast<std::size_t>(column_of(addr.weight));
  }
  [[noreturn]] void throw_off_board(SquareAddr addr) const;

  BoardConfig config_;
  std::vector<SquareContent> cells_;
};

struct BoardStateHash {
  std::size_t operator()(const BoardState& s) const noexcept { return s.hash(); }
};

// Squares receiving one token for a digit, as weights in column order.
struct DigitPattern {
  int digit = 0;
  std::vector<int> squares;
};

// (pos - neg) * weight * 10^row.
Integer effective_value(const SquareContent& content, SquareAddr addr);

// Sum of effective values over all squares.
Integer board_value(const BoardState& state);

// Same value read token by token.
Integer board_value_by_tokens(const BoardState& state);

DigitPattern encode_digit(int digit);

// Capacity of a board: 10^rows - 1.
Integer capacity(const BoardConfig& config);

// Superimposes n on top of base using tokens of the given sign.
// Throws DomainError for negative n, OverflowError when n > capacity.
BoardState encode_number(const Integer& n, Sign sign, const BoardState& base);
BoardState encode_number(const Integer& n, Sign sign = Sign::positive, BoardConfig config = {});

bool is_simple(const BoardState& state);

// Reads a simple state. Throws NotSimpleError otherwise.
Integer decode_simple(const BoardState& state);

// Canonical text form: header line, then one line per non-empty square,
// row ascending, weight descending. Byte-stable.
std::string to_snapshot(const BoardState& state);
BoardState parse_snapshot(std::string_view text);

}  // namespace yupana
