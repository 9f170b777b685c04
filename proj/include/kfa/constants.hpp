#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kfa/numeric.hpp"

namespace kfa {

/// A truncated series or product for a constant.
///
/// `value` is the best estimate and the constant lies in value +- truncation_bound.
/// `partial` is the raw partial sum/product and `partial_bound` its crude tail
/// bound (integral comparison only). When no tail estimate applies, value ==
/// partial and truncation_bound == partial_bound.
struct ConstantEstimate {
  double value = 0.0;
  double truncation_bound = 0.0;
  u64 terms_used = 0;
  double partial = 0.0;
  double partial_bound = 0.0;
  bool tail_corrected = false;
};

/// Riemann zeta for real s > 0, s != 1, via the alternating eta series with
/// Borwein's acceleration. Accurate to ~1e-18 relative.
double zeta(double s);

/// Erdos-Szekeres constant c_k = prod_p (1 + sum_{m=k+1}^{2k-1} p^(-m/k)) over
/// primes p <= prime_limit.
///
/// The crude bound uses log(1+x) <= x and sum_{p>P} p^(-s) <= int_P^inf t^(-s).
/// For prime_limit >= 355991 the tail sum over primes is additionally
/// bracketed with explicit pi(x) bounds
///   x/ln x (1 + 1/ln x + 2/ln^2 x) <= pi(x) <= x/ln x (1 + 1/ln x + 2.53816/ln^2 x),
/// giving a corrected value and a much tighter bound.
ConstantEstimate euler_product_ck(unsigned k, u64 prime_limit);

/// c_k as the sum over squarefree pairwise-coprime tuples with n_i <= D[i-1] of
/// prod n_i^(-(1+i/k)).
///
/// Crude bound: sum_i (sum_{n>D_i} n^(-s_i)) * prod_{j!=i} s_j/(s_j-1). For
/// k = 2 and D_1 >= 1664 the squarefree tail is estimated from
/// |Q(x) - 6x/pi^2| <= 0.1333 sqrt(x).
ConstantEstimate multisum_ck(unsigned k, std::span<const u64> D);

struct BatemanGrosswald {
  double A = 0.0;  // zeta(3/2)/zeta(3)
  double B = 0.0;  // zeta(2/3)/zeta(2)
};
BatemanGrosswald bateman_grosswald_constants();

/// c_k from euler_product_ck at kDefaultPrimeLimit, computed once per k.
double erdos_szekeres_constant(unsigned k);
inline constexpr u64 kDefaultPrimeLimit = 10'000'000;

struct AsymptoticReport {
  u64 N = 0;
  unsigned k = 2;
  u64 Q = 0;
  double ck = 0.0;
  double main_term = 0.0;      // c_k N^(1/k)
  double residual = 0.0;       // Q - main_term
  double normalized = 0.0;     // residual / N^(1/(k+1))
  // k = 2 only: A sqrt(N) + B N^(1/3), normalised by N^(1/6).
  std::optional<double> two_term_main;
  std::optional<double> two_term_residual;
  std::optional<double> two_term_normalized;
};

AsymptoticReport count_vs_asymptotic(u64 N, unsigned k);

}  // namespace kfa
