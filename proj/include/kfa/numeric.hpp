#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace kfa {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Largest N accepted by the k-full machinery.
inline constexpr u64 kMaxN = 1'000'000'000'000'000'000ULL;

/// a * b, or nullopt if the product exceeds 128 bits.
std::optional<u128> checked_mul(u128 a, u128 b) noexcept;

/// base^exp, or nullopt on 128-bit overflow.
std::optional<u128> checked_pow(u128 base, unsigned exp) noexcept;

/// Largest r with r^k <= x. k >= 1.
u128 integer_kth_root(u128 x, unsigned k);

/// Exact decimal rendering of a 128-bit value.
std::string to_string(u128 value);

/// Neumaier-compensated accumulator. Order of add() calls fixes the result.
template <class T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.carry_);
  }
  T value() const noexcept { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

/// Component-wise compensated sum of complex values.
class ComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void add(const ComplexSum& other) noexcept {
    re_.add(other.re_);
    im_.add(other.im_);
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

}  // namespace kfa
