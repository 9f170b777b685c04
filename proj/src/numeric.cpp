#include "kfa/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kfa/error.hpp"

namespace kfa {

std::optional<u128> checked_mul(u128 a, u128 b) noexcept {
  if (a == 0 || b == 0) return u128{0};
  const u128 max = ~u128{0};
  if (a > max / b) return std::nullopt;
  return a * b;
}

std::optional<u128> checked_pow(u128 base, unsigned exp) noexcept {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    auto next = checked_mul(result, base);
    if (!next) return std::nullopt;
    result = *next;
  }
  return result;
}

namespace {

// r^k <= x, without overflowing.
bool pow_at_most(u128 r, unsigned k, u128 x) {
  auto p = checked_pow(r, k);
  return p && *p <= x;
}

}  // namespace

u128 integer_kth_root(u128 x, unsigned k) {
  if (k == 0) throw DomainError("integer_kth_root: k must be >= 1");
  if (k == 1 || x < 2) return x;

  // Float estimate, then exact correction in both directions.
  const long double est = std::pow(static_cast<long double>(x), 1.0L / k);
  u128 r = est <= 0 ? 0 : static_cast<u128>(std::floor(est));
  while (!pow_at_most(r, k, x)) --r;
  while (pow_at_most(r + 1, k, x)) ++r;
  return r;
}

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace kfa
