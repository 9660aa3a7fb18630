#pragma once

#include "yupana/board.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>

namespace yupana::testing {

struct Cell {
  int weight;
  int row;
  std::uint64_t pos;
  std::uint64_t neg = 0;
};

inline BoardState board_of(std::initializer_list<Cell> cells, int rows = kDefaultRows) {
  BoardState s(BoardConfig{rows});
  for (const auto& c : cells) {
    s.add_tokens({c.weight, c.row}, Sign::positive, c.pos);
    s.add_tokens({c.weight, c.row}, Sign::negative, c.neg);
  }
  return s;
}

// Token-by-token reading in machine integers; only for boards that fit.
inline long long small_value(const BoardState& s) {
  long long total = 0;
  long long place = 1;
  for (int r = 0; r < s.rows(); ++r) {
    for (int w : {5, 3, 2, 1}) {
      const auto& c = s.at({w, r});
      for (std::uint64_t i = 0; i < c.pos; ++i) total += w * place;
      for (std::uint64_t i = 0; i < c.neg; ++i) total -= w * place;
    }
    place *= 10;
  }
  return total;
}

inline long long as_ll(const Integer& v) { return v.convert_to<long long>(); }

inline Integer big(long long v) { return Integer(v); }

}  // namespace yupana::testing
