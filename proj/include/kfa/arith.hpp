#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kfa/numeric.hpp"

namespace kfa {

struct PrimePower {
  u64 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Smallest-prime-factor table built by a linear (Euler) sieve, with the
/// Omega and squarefree tables derived in the same pass.
///
/// Memory is kBytesPerEntry per integer up to limit plus the prime list.
/// Immutable after construction; safe to share across threads.
class FactorSieve {
 public:
  /// spf (4) + Omega (1) + squarefree flag (1).
  static constexpr std::size_t kBytesPerEntry = 6;
  /// spf entries are 32-bit.
  static constexpr u64 kMaxLimit = 0xFFFF'FFFEULL;

  explicit FactorSieve(u64 limit);

  u64 limit() const noexcept { return limit_; }

  /// Smallest prime factor; n in [2, limit].
  std::uint32_t smallest_factor(u64 n) const;
  bool is_prime(u64 n) const;

  /// Number of prime factors counted with multiplicity.
  unsigned omega(u64 n) const;
  /// 1 if n is squarefree, else 0.
  int mu_squared(u64 n) const;
  /// (-1)^Omega(n).
  int liouville(u64 n) const;
  /// Sorted by prime; empty for n = 1.
  std::vector<PrimePower> factorize(u64 n) const;

  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  /// Omega table indexed by n, entries 0..limit (entry 0 is unused and 0).
  std::span<const std::uint8_t> omega_table() const noexcept { return omega_; }
  std::span<const std::uint8_t> squarefree_table() const noexcept { return squarefree_; }

  std::size_t memory_bytes() const noexcept;

 private:
  void check_range(u64 n, const char* op) const;

  u64 limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::uint8_t> squarefree_;
  std::vector<std::uint32_t> primes_;
};

/// Throws DomainError for limit < 2 or limit > kMaxLimit, ResourceError if the
/// tables cannot be allocated.
FactorSieve build_sieve(u64 limit);

/// Omega by trial division. Independent of any sieve; works for any n >= 1.
unsigned omega_trial(u64 n);

/// counts[w] = #{1 <= n <= N : Omega(n) = w}.
struct OmegaHistogram {
  std::vector<u64> counts;
  u64 total = 0;

  void add(unsigned omega, u64 count = 1);
  void merge(const OmegaHistogram& other);
  bool operator==(const OmegaHistogram&) const = default;
};

/// Histogram of Omega(n) over 1 <= n <= N. OpenMP-parallel over fixed blocks.
OmegaHistogram omega_histogram(const FactorSieve& sieve, u64 N);

/// Histogram of Omega(n) over squarefree n <= N.
OmegaHistogram squarefree_omega_histogram(const FactorSieve& sieve, u64 N);

struct PrimeSum {
  double sum = 0.0;
  /// pi(limit)
  u64 count = 0;
};

/// sum of f(p) over primes p <= limit, via a segmented sieve of Eratosthenes.
/// Segments are fixed-size and reduced in ascending order, so the result does
/// not depend on the thread count. limit may exceed FactorSieve::kMaxLimit.
PrimeSum prime_sum(u64 limit, const std::function<double(u64)>& f);

/// (1/N) sum_{n<=N} lambda(n).
double liouville_mean(const FactorSieve& sieve, u64 N);

/// (1/N) #{n <= N squarefree}.
double squarefree_density(const FactorSieve& sieve, u64 N);

}  // namespace kfa
