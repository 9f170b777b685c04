#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "kfa/arith.hpp"
#include "kfa/averages.hpp"
#include "kfa/numeric.hpp"

namespace kfa {

/// Rewriting of the k-full sum over tuples (n_1, ..., n_{k-1}):
///
///   lhs = N^(-1/k) sum_{k-full n <= N} a(n)
///   s1  = sum_t w_t E_t,   w_t = prod n_i^(-(1+i/k)),
///         E_t = (1/M_t) sum_{m <= M_t} a(m^k prod n_i^(k+i)),
///         M_t = floor((N / prod n_i^(k+i))^(1/k))
///   s2  = lhs - s1
///
/// E_t divides by the integer count M_t. With the real cutoff N^(1/k) w_t in
/// its place the rewriting is an identity, which exact_decomposition checks.
struct DecompositionLedger {
  u64 N = 0;
  unsigned k = 2;
  std::vector<u64> D;  // empty: no truncation
  std::complex<double> lhs;
  std::complex<double> s1;            // all admissible tuples
  std::complex<double> s2;            // lhs - s1
  std::complex<double> s1_truncated;  // tuples with n_i <= D_i; exact mode: the nested sum
  double measured_error = 0.0;        // |lhs - s1_truncated|
  double stated_bound = 0.0;          // sum_i D_i^(-i/k) + N^(-1/(k(k+1)))
  double ratio = 0.0;                 // measured_error / stated_bound
  u64 tuple_count = 0;
  u64 term_count = 0;  // Q_k(N)
};

/// lhs together with the nested sum over tuples and m, each term evaluated at
/// omega = k Omega(m) + sum (k+i) Omega(n_i). Throws ConsistencyError unless
/// the two agree to 1e-9 relative to Q_k(N) N^(-1/k) (the size of the sum when
/// |a| <= 1).
DecompositionLedger exact_decomposition(const Observable& obs, u64 N, unsigned k);

/// Largest D_i allowed: floor(N^(1/((k-1)(k+i)))), i = 1..k-1.
std::vector<u64> max_admissible_D(u64 N, unsigned k);

/// Truncated s1 with n_i <= D_i. DomainError unless 1 <= D_i and
/// D_i^((k-1)(k+i)) <= N for every i.
DecompositionLedger truncated_decomposition(const Observable& obs, u64 N, unsigned k,
                                            std::span<const u64> D);

enum class DRule {
  max,            // max_admissible_D
  sqrt_max,       // floor(sqrt(D_i max)), at least 1
  powers_of_two,  // D_i = min(2^j, max_i) for j = 1, 2, ..., then max
  fixed,          // the caller's D, one row per N
};
DRule parse_d_rule(const std::string& text);
std::string to_string(DRule rule);

/// One row per (N, D) in N_list order. For DRule::fixed, fixed_D supplies the
/// bounds; it is ignored otherwise.
std::vector<DecompositionLedger> error_exponent_scan(const Observable& obs, unsigned k,
                                                     std::span<const u64> N_list, DRule rule,
                                                     std::span<const u64> fixed_D = {});

}  // namespace kfa
