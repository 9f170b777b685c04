#pragma once

#include <cstdint>
#include <algorithm>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfa/arith.hpp"
#include "kfa/error.hpp"
#include "kfa/numeric.hpp"

namespace kfa {

/// n = m^k * n_1^(k+1) * ... * n_{k-1}^(2k-1), with the n_i squarefree and
/// pairwise coprime. parts[i-1] holds n_i.
struct KFullRep {
  unsigned k = 2;
  u64 m = 1;
  std::vector<u64> parts;

  /// Throws OverflowError if the value exceeds 128 bits.
  u128 value() const;
  bool operator==(const KFullRep&) const = default;
};

struct KFullEntry {
  u64 value = 1;
  KFullRep rep;
  unsigned omega = 0;
};

/// True iff every prime exponent of n is >= k. True for n = 1.
bool is_kfull(u64 n, unsigned k, const FactorSieve& sieve);

/// Unique representation of a k-full n. DomainError names the first prime
/// whose exponent is below k.
KFullRep rep_of(u64 n, unsigned k, const FactorSieve& sieve);

/// Restricts the outermost part n_{k-1} to lo..hi (inclusive).
struct OuterRange {
  u64 lo = 1;
  u64 hi = ~u64{0};
};

/// Visits every tuple (n_1, ..., n_{k-1}) of squarefree, pairwise coprime
/// integers with prod n_i^(k+i) <= product_limit and n_i <= caps[i-1] (caps may
/// be empty). Order is lexicographic in (n_{k-1}, ..., n_1).
///
/// visit(parts, product, omega) receives the parts, prod n_i^(k+i), and
/// sum (k+i) Omega(n_i).
template <class Visit>
void for_each_tuple(unsigned k, u128 product_limit, std::span<const u64> caps,
                    const FactorSieve& sieve, Visit&& visit, OuterRange outer = {});

/// Materialised tuple list, used where the tuple count is small (~N^(1/(k+1))).
class TupleSet {
 public:
  TupleSet() = default;
  explicit TupleSet(unsigned k) : k_(k) {}

  unsigned k() const noexcept { return k_; }
  std::size_t size() const noexcept { return products_.size(); }
  std::span<const u64> parts(std::size_t t) const {
    return {parts_.data() + t * (k_ - 1), k_ - 1};
  }
  u128 product(std::size_t t) const { return products_[t]; }
  unsigned omega(std::size_t t) const { return omegas_[t]; }

  void push(std::span<const u64> parts, u128 product, unsigned omega);

 private:
  unsigned k_ = 2;
  std::vector<u64> parts_;
  std::vector<u128> products_;
  std::vector<std::uint16_t> omegas_;
};

/// All admissible tuples for k-full numbers up to N (prod n_i^(k+i) <= N),
/// optionally truncated by caps. Requires sieve.limit() >= N^(1/(k+1)).
TupleSet admissible_tuples(u64 N, unsigned k, const FactorSieve& sieve,
                           std::span<const u64> caps = {});

/// Sieve bound needed to enumerate k-full numbers up to N: max(2, floor(N^(1/k))).
u64 kfull_sieve_limit(u64 N, unsigned k);

enum class Order { generator, by_value };

/// Streams every k-full n <= N exactly once, with its representation and
/// Omega computed from the parts. Generator order is lexicographic in
/// (n_{k-1}, ..., n_1, m). Requires sieve.limit() >= floor(N^(1/k)).
void enumerate_kfull(u64 N, unsigned k, const FactorSieve& sieve,
                     const std::function<void(const KFullEntry&)>& sink);

/// Collects the stream; by_value sorts ascending.
std::vector<KFullEntry> collect_kfull(u64 N, unsigned k, const FactorSieve& sieve,
                                      Order order = Order::generator);

/// Q_k(N) = sum over admissible tuples of floor((N / prod n_i^(k+i))^(1/k)).
u64 count_kfull(u64 N, unsigned k);
u64 count_kfull(u64 N, unsigned k, const FactorSieve& sieve);

/// Histogram of Omega over k-full n <= N. OpenMP-parallel over fixed
/// (tuple, m-block) work items; integer counts make it thread-count invariant.
OmegaHistogram kfull_omega_histogram(u64 N, unsigned k, const FactorSieve& sieve);

/// Number of admissible tuples with prod n_i^(k+i) <= N.
u64 tuple_count(u64 N, unsigned k, const FactorSieve& sieve);

// Binary dump: little-endian, fixed width.
//   header: magic "KFULDUMP" | u32 version | u32 k | u64 N | u64 count
//   record: u64 value | u64 m | u64 n_1 .. n_{k-1} | u32 omega
struct DumpHeader {
  static constexpr char kMagic[9] = "KFULDUMP";
  static constexpr std::uint32_t kVersion = 1;
  std::uint32_t version = kVersion;
  std::uint32_t k = 2;
  u64 N = 0;
  u64 count = 0;
};

void write_dump_header(std::ostream& out, const DumpHeader& header);
void write_dump_record(std::ostream& out, const KFullEntry& entry);
/// Throws DomainError on a malformed stream.
std::vector<KFullEntry> read_kfull_dump(std::istream& in, DumpHeader* header = nullptr);

// ---------------------------------------------------------------------------

namespace detail {

void validate_kfull_args(u64 N, unsigned k);

template <class Visit>
void walk_level(unsigned k, unsigned level, u128 product_limit,
                std::span<const u64> caps, const FactorSieve& sieve, u64* parts,
                u128 product, u64 radical, unsigned omega, Visit& visit,
                OuterRange outer) {
  if (level == 0) {
    visit(std::span<const u64>(parts, k - 1), product, omega);
    return;
  }
  const unsigned exponent = k + level;
  constexpr u128 kUnbounded = ~u128{0};
  u64 hi = ~u64{0};
  if (product_limit != kUnbounded) {
    hi = static_cast<u64>(
        std::min<u128>(integer_kth_root(product_limit / product, exponent), ~u64{0}));
  }
  if (!caps.empty()) hi = std::min(hi, caps[level - 1]);
  u64 lo = 1;
  if (level == k - 1) {
    lo = std::max(lo, outer.lo);
    hi = std::min(hi, outer.hi);
  }
  if (hi > sieve.limit() && hi > 1) {
    throw DomainError("for_each_tuple: part bound " + std::to_string(hi) +
                      " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
  const auto sq = sieve.squarefree_table();
  const auto om = sieve.omega_table();
  for (u64 n = lo; n <= hi; ++n) {
    if (n > 1 && (!sq[n] || std::gcd(n, radical) != 1)) continue;
    // Saturates at kUnbounded, which only the unbounded walk can reach.
    const u128 next =
        checked_mul(product, checked_pow(n, exponent).value_or(kUnbounded))
            .value_or(kUnbounded);
    if (next > product_limit) break;
    parts[level - 1] = n;
    walk_level(k, level - 1, product_limit, caps, sieve, parts, next, radical * n,
               omega + exponent * (n > 1 ? om[n] : 0U), visit, outer);
  }
}

}  // namespace detail

template <class Visit>
void for_each_tuple(unsigned k, u128 product_limit, std::span<const u64> caps,
                    const FactorSieve& sieve, Visit&& visit, OuterRange outer) {
  if (k < 2) throw DomainError("for_each_tuple: k must be >= 2");
  if (!caps.empty() && caps.size() != k - 1) {
    throw DomainError("for_each_tuple: expected " + std::to_string(k - 1) + " caps");
  }
  if (product_limit == ~u128{0} && caps.empty()) {
    throw DomainError("for_each_tuple: an unbounded product needs caps");
  }
  std::vector<u64> parts(k - 1, 1);
  detail::walk_level(k, k - 1, product_limit, caps, sieve, parts.data(), u128{1},
                     u64{1}, 0U, visit, outer);
}

}  // namespace kfa
