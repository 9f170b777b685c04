#include "kfa/arith.hpp"

#include <algorithm>
#include <array>
#include <new>
#include <string>

#include "kfa/error.hpp"
#include "kfa/parallel.hpp"

namespace kfa {

FactorSieve::FactorSieve(u64 limit) : limit_(limit) {
  if (limit < 2) throw DomainError("build_sieve: limit must be >= 2");
  if (limit > kMaxLimit) {
    throw DomainError("build_sieve: limit " + std::to_string(limit) +
                      " exceeds 32-bit table bound");
  }
  const std::size_t entries = static_cast<std::size_t>(limit) + 1;
  try {
    spf_.assign(entries, 0);
    omega_.assign(entries, 0);
    squarefree_.assign(entries, 0);
  } catch (const std::bad_alloc&) {
    throw ResourceError("build_sieve: cannot allocate tables for limit " +
                            std::to_string(limit),
                        entries * kBytesPerEntry);
  }

  squarefree_[1] = 1;
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      omega_[i] = 1;
      squarefree_[i] = 1;
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t lp = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > lp) break;
      const u64 ip = i * p;
      if (ip > limit) break;
      spf_[ip] = p;
      omega_[ip] = static_cast<std::uint8_t>(omega_[i] + 1);
      squarefree_[ip] = (p != lp) ? squarefree_[i] : 0;
    }
  }
}

void FactorSieve::check_range(u64 n, const char* op) const {
  if (n < 1 || n > limit_) {
    throw DomainError(std::string(op) + ": n=" + std::to_string(n) +
                      " outside [1, " + std::to_string(limit_) + "]");
  }
}

std::uint32_t FactorSieve::smallest_factor(u64 n) const {
  check_range(n, "smallest_factor");
  if (n < 2) throw DomainError("smallest_factor: n must be >= 2");
  return spf_[n];
}

bool FactorSieve::is_prime(u64 n) const {
  check_range(n, "is_prime");
  return n >= 2 && spf_[n] == n;
}

unsigned FactorSieve::omega(u64 n) const {
  check_range(n, "omega");
  return omega_[n];
}

int FactorSieve::mu_squared(u64 n) const {
  check_range(n, "mu_squared");
  return squarefree_[n];
}

int FactorSieve::liouville(u64 n) const {
  check_range(n, "liouville");
  return (omega_[n] & 1U) ? -1 : 1;
}

std::vector<PrimePower> FactorSieve::factorize(u64 n) const {
  check_range(n, "factorize");
  std::vector<PrimePower> out;
  while (n > 1) {
    const u64 p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

std::size_t FactorSieve::memory_bytes() const noexcept {
  return spf_.size() * sizeof(std::uint32_t) + omega_.size() + squarefree_.size() +
         primes_.size() * sizeof(std::uint32_t);
}

FactorSieve build_sieve(u64 limit) { return FactorSieve(limit); }

unsigned omega_trial(u64 n) {
  if (n == 0) throw DomainError("omega_trial: n must be >= 1");
  unsigned count = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++count;
  }
  for (u64 d = 3; d <= n / d; d += 2) {
    while (n % d == 0) {
      n /= d;
      ++count;
    }
  }
  if (n > 1) ++count;
  return count;
}

void OmegaHistogram::add(unsigned omega, u64 count) {
  if (omega >= counts.size()) counts.resize(omega + 1, 0);
  counts[omega] += count;
  total += count;
}

void OmegaHistogram::merge(const OmegaHistogram& other) {
  if (other.counts.size() > counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t w = 0; w < other.counts.size(); ++w) counts[w] += other.counts[w];
  total += other.total;
}

namespace {

void require_table(const FactorSieve& sieve, u64 N, const char* op) {
  if (N < 1) throw DomainError(std::string(op) + ": N must be >= 1");
  if (N > sieve.limit()) {
    throw DomainError(std::string(op) + ": N=" + std::to_string(N) +
                      " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
}

// Integer counts merge exactly, so the thread count never changes the result.
template <class Keep>
OmegaHistogram histogram_where(const FactorSieve& sieve, u64 N, Keep keep) {
  const auto omega = sieve.omega_table();
  const auto blocks = fixed_blocks(N, kDefaultBlock);
  std::vector<OmegaHistogram> partial(blocks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::array<u64, 64> local{};
    for (u64 n = blocks[b].begin + 1; n <= blocks[b].end; ++n) {
      if (keep(n)) ++local[omega[n]];
    }
    for (unsigned w = 0; w < local.size(); ++w) {
      if (local[w]) partial[b].add(w, local[w]);
    }
  }
  OmegaHistogram out;
  for (const auto& h : partial) out.merge(h);
  return out;
}

}  // namespace

OmegaHistogram omega_histogram(const FactorSieve& sieve, u64 N) {
  require_table(sieve, N, "omega_histogram");
  return histogram_where(sieve, N, [](u64) { return true; });
}

OmegaHistogram squarefree_omega_histogram(const FactorSieve& sieve, u64 N) {
  require_table(sieve, N, "squarefree_omega_histogram");
  const auto sq = sieve.squarefree_table();
  return histogram_where(sieve, N, [sq](u64 n) { return sq[n] != 0; });
}

double liouville_mean(const FactorSieve& sieve, u64 N) {
  const auto h = omega_histogram(sieve, N);
  i64 sum = 0;
  for (std::size_t w = 0; w < h.counts.size(); ++w) {
    sum += (w & 1U) ? -static_cast<i64>(h.counts[w]) : static_cast<i64>(h.counts[w]);
  }
  return static_cast<double>(sum) / static_cast<double>(N);
}

double squarefree_density(const FactorSieve& sieve, u64 N) {
  const auto h = squarefree_omega_histogram(sieve, N);
  return static_cast<double>(h.total) / static_cast<double>(N);
}

}  // namespace kfa

namespace kfa {

namespace {

constexpr u64 kSegment = u64{1} << 18;

std::vector<u64> small_primes(u64 limit) {
  std::vector<std::uint8_t> composite(limit + 1, 0);
  std::vector<u64> out;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

}  // namespace

PrimeSum prime_sum(u64 limit, const std::function<double(u64)>& f) {
  if (limit < 2) return {};
  const u64 root = static_cast<u64>(integer_kth_root(limit, 2));
  const std::vector<u64> base = small_primes(root);
  // Segment s holds integers begin .. end-1; together they cover 0 .. limit.
  const auto segments = fixed_blocks(limit + 1, kSegment);

  std::vector<CompensatedSum<double>> sums(segments.size());
  std::vector<u64> counts(segments.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const u64 lo = std::max<u64>(2, segments[s].begin);
    const u64 hi = std::min(limit, segments[s].end - 1);
    if (lo > hi) continue;
    std::vector<std::uint8_t> composite(hi - lo + 1, 0);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j <= hi; j += p) composite[j - lo] = 1;
    }
    for (u64 n = lo; n <= hi; ++n) {
      if (composite[n - lo]) continue;
      sums[s].add(f(n));
      ++counts[s];
    }
  }
  CompensatedSum<double> total;
  PrimeSum out;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    total.add(sums[s]);
    out.count += counts[s];
  }
  out.sum = total.value();
  return out;
}

}  // namespace kfa
