#include "yupana/integer.hpp"

#include "yupana/errors.hpp"

#include <array>
#include <mutex>
#include <vector>

namespace yupana {

namespace {

constexpr int kTableSize = 128;

const std::array<Integer, kTableSize>& pow10_table() {
  static const auto table = [] {
    std::array<Integer, kTableSize> t;
    Integer p = 1;
    for (auto& entry : t) {
      entry = p;
      p *= 10;
    }
    return t;
  }();
  return table;
}

}  // namespace

const Integer& pow10(int exponent) {
  if (exponent < 0) throw DomainError("negative power of ten");
  if (exponent < kTableSize) return pow10_table()[static_cast<std::size_t>(exponent)];

  static std::mutex mu;
  static std::vector<Integer> extra;  // extra[i] = 10^(kTableSize + i)
  std::lock_guard lock(mu);
  while (static_cast<int>(extra.size()) <= exponent - kTableSize) {
    const Integer& prev = extra.empty() ? pow10_table().back() : extra.back();
    extra.push_back(prev * 10);
  }
  return extra[static_cast<std::size_t>(exponent - kTableSize)];
}

Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ParseError("expected a decimal integer, got '" + std::string(text) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw ParseError("expected a decimal integer, got '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

std::string to_string(const Integer& value) { return value.str(); }

int decimal_digits(const Integer& value) {
  if (value < 0) throw DomainError("decimal_digits of a negative value");
  int digits = 1;
  while (value >= pow10(digits)) ++digits;
  return digits;
}

}  // namespace yupana
