#include "kfa/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "kfa/arith.hpp"
#include "kfa/error.hpp"
#include "kfa/kfull.hpp"
#include "kfa/parallel.hpp"

namespace kfa {

double zeta(double s) {
  if (!(s > 0.0) || s == 1.0) {
    throw DomainError("zeta: requires real s > 0, s != 1");
  }
  // Borwein, "An efficient algorithm for the Riemann zeta function", alg. 2.
  // Error <= 3 / (3 + sqrt 8)^n, below 1e-38 at n = 50.
  constexpr int n = 50;
  std::vector<long double> d(n + 1);
  long double term = 1.0L / n;  // i = 0 term of n * sum (n+i-1)! 4^i / ((n-i)! (2i)!)
  long double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0L * (n + i - 1) * (n - i + 1) / ((2.0L * i) * (2.0L * i - 1));
    acc += term;
    d[i] = n * acc;
  }
  long double eta = 0.0L;
  const long double ls = s;
  for (int j = 0; j < n; ++j) {
    const long double t = (d[j] - d[n]) / std::pow(static_cast<long double>(j + 1), ls);
    eta += (j % 2 == 0) ? t : -t;
  }
  eta = -eta / d[n];
  return static_cast<double>(eta / (1.0L - std::pow(2.0L, 1.0L - ls)));
}

namespace {

void require_k(unsigned k, const char* op) {
  if (k < 2) throw DomainError(std::string(op) + ": k must be >= 2");
}

// int_P^inf t^(-s) dt
double integral_tail(double P, double s) { return std::pow(P, 1.0 - s) / (s - 1.0); }

// Lower and upper bounds on sum_{p > P} p^(-s), s > 1, from explicit pi(x) bounds.
// Integration by parts: -P^(-s) pi(P) + s int_P^inf pi(t) t^(-s-1) dt.
struct Bracket {
  double lo;
  double hi;
};

constexpr double kPiLowerC = 2.0;      // valid for x >= 88789
constexpr double kPiUpperC = 2.53816;  // valid for x > 1
constexpr u64 kRefinedTailMin = 355991;

Bracket prime_tail_bracket(u64 P, u64 pi_P, double s) {
  const double a = std::log(static_cast<double>(P));
  const double b = s - 1.0;
  // int_P^inf t^(-s) (1/ln t)(1 + 1/ln t + c/ln^2 t) dt
  //   = e^(-ab)/b * int_0^inf e^(-v) h(a + v/b) dv,  h(u) = 1/u + 1/u^2 + c/u^3.
  // Composite Simpson on v in [0, 60]; the discarded tail is below e^-60.
  auto moment = [&](int power) {
    constexpr int steps = 12000;
    constexpr double top = 60.0;
    const double h = top / steps;
    CompensatedSum<double> acc;
    for (int i = 0; i <= steps; ++i) {
      const double v = i * h;
      const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      acc.add(w * std::exp(-v) * std::pow(a + v / b, -power));
    }
    return acc.value() * h / 3.0;
  };
  const double scale = std::exp(-a * b) / b;
  const double j1 = moment(1), j2 = moment(2), j3 = moment(3);
  const double i_lo = scale * (j1 + j2 + kPiLowerC * j3);
  const double i_hi = scale * (j1 + j2 + kPiUpperC * j3);
  const double boundary = std::pow(static_cast<double>(P), -s) * static_cast<double>(pi_P);
  return {-boundary + s * i_lo, -boundary + s * i_hi};
}

}  // namespace

ConstantEstimate euler_product_ck(unsigned k, u64 prime_limit) {
  require_k(k, "euler_product_ck");
  if (prime_limit < 2) throw DomainError("euler_product_ck: prime_limit must be >= 2");

  const double inv_k = 1.0 / k;
  // log(1 + sum_{m=k+1}^{2k-1} p^(-m/k)) summed over p <= P.
  const PrimeSum logs = prime_sum(prime_limit, [k, inv_k](u64 p) {
    const double pd = static_cast<double>(p);
    const double t = std::pow(pd, -inv_k);
    double x = 0.0, tm = t;
    for (unsigned m = 1; m < k; ++m, tm *= t) x += tm;
    return std::log1p(x / pd);
  });

  ConstantEstimate est;
  est.terms_used = logs.count;
  est.partial = std::exp(logs.sum);
  const double P = static_cast<double>(prime_limit);

  double crude = 0.0;
  for (unsigned m = k + 1; m <= 2 * k - 1; ++m) crude += integral_tail(P, double(m) / k);
  est.partial_bound = est.partial * std::expm1(crude);
  est.value = est.partial;
  est.truncation_bound = est.partial_bound;

  if (prime_limit >= kRefinedTailMin) {
    double lo = 0.0, hi = 0.0;
    for (unsigned m = k + 1; m <= 2 * k - 1; ++m) {
      const Bracket br = prime_tail_bracket(prime_limit, logs.count, double(m) / k);
      lo += br.lo;
      hi += br.hi;
    }
    // log(1+x) >= x - x^2/2 with x_p <= (k-1) p^(-(k+1)/k).
    const double km1 = static_cast<double>(k - 1);
    lo -= 0.5 * km1 * km1 * integral_tail(P, 2.0 * (k + 1) / k);
    const double mid = 0.5 * (lo + hi);
    est.value = est.partial * std::exp(mid);
    est.truncation_bound = est.partial * 0.5 * (std::exp(hi) - std::exp(lo)) +
                           1e-13 * est.value;
    est.tail_corrected = true;
  }
  return est;
}

namespace {

constexpr double kSquarefreeErrC = 0.1333;  // |Q(x) - 6x/pi^2| <= C sqrt(x), x >= 1664
constexpr u64 kSquarefreeErrMin = 1664;

}  // namespace

ConstantEstimate multisum_ck(unsigned k, std::span<const u64> D) {
  require_k(k, "multisum_ck");
  if (D.size() != k - 1) {
    throw DomainError("multisum_ck: expected " + std::to_string(k - 1) + " bounds");
  }
  u64 max_cap = 2;
  for (u64 d : D) {
    if (d < 1) throw DomainError("multisum_ck: every D_i must be >= 1");
    max_cap = std::max(max_cap, d);
  }
  const FactorSieve sieve = build_sieve(max_cap);

  std::vector<double> exponents(k - 1);
  for (unsigned i = 1; i < k; ++i) exponents[i - 1] = 1.0 + double(i) / k;

  // Fixed blocks over the outermost index; reduced in block order.
  const auto blocks = fixed_blocks(D[k - 2], u64{1} << 12);
  std::vector<CompensatedSum<double>> sums(blocks.size());
  std::vector<u64> terms(blocks.size(), 0);
  constexpr u128 kUnbounded = ~u128{0};
#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for_each_tuple(
        k, kUnbounded, D, sieve,
        [&](std::span<const u64> parts, u128, unsigned) {
          double w = 1.0;
          for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] > 1) w *= std::pow(static_cast<double>(parts[i]), -exponents[i]);
          }
          sums[b].add(w);
          ++terms[b];
        },
        OuterRange{blocks[b].begin + 1, blocks[b].end});
  }

  ConstantEstimate est;
  CompensatedSum<double> total;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    total.add(sums[b]);
    est.terms_used += terms[b];
  }
  est.partial = total.value();

  double crude = 0.0;
  for (unsigned i = 0; i + 1 < k; ++i) {
    double others = 1.0;
    for (unsigned j = 0; j + 1 < k; ++j) {
      if (j != i) others *= exponents[j] / (exponents[j] - 1.0);
    }
    crude += integral_tail(static_cast<double>(D[i]), exponents[i]) * others;
  }
  est.partial_bound = crude;
  est.value = est.partial;
  est.truncation_bound = crude;

  if (k == 2 && D[0] >= kSquarefreeErrMin) {
    // sum_{n>D} mu^2(n) n^(-s)
    //   = -Q(D) D^(-s) + (6/pi^2) s D^(1-s)/(s-1) + s int_D^inf E(t) t^(-s-1) dt
    const double s = exponents[0];
    const double Dd = static_cast<double>(D[0]);
    const double qD = static_cast<double>(est.terms_used);  // squarefree n <= D
    const double density = 6.0 / (std::numbers::pi * std::numbers::pi);
    const double tail = -qD * std::pow(Dd, -s) + density * s * std::pow(Dd, 1.0 - s) / (s - 1.0);
    est.value = est.partial + tail;
    est.truncation_bound =
        kSquarefreeErrC * s / (s - 0.5) * std::pow(Dd, 0.5 - s) + 1e-13 * est.value;
    est.tail_corrected = true;
  }
  return est;
}

BatemanGrosswald bateman_grosswald_constants() {
  return {zeta(1.5) / zeta(3.0), zeta(2.0 / 3.0) / zeta(2.0)};
}

double erdos_szekeres_constant(unsigned k) {
  require_k(k, "erdos_szekeres_constant");
  static std::mutex mutex;
  static std::map<unsigned, double> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) {
    it = cache.emplace(k, euler_product_ck(k, kDefaultPrimeLimit).value).first;
  }
  return it->second;
}

AsymptoticReport count_vs_asymptotic(u64 N, unsigned k) {
  AsymptoticReport r;
  r.N = N;
  r.k = k;
  r.Q = count_kfull(N, k);
  r.ck = erdos_szekeres_constant(k);
  const long double n = static_cast<long double>(N);
  r.main_term = static_cast<double>(r.ck * std::pow(n, 1.0L / k));
  r.residual = static_cast<double>(static_cast<long double>(r.Q) - r.main_term);
  r.normalized = r.residual / static_cast<double>(std::pow(n, 1.0L / (k + 1)));
  if (k == 2) {
    const auto bg = bateman_grosswald_constants();
    const double two = static_cast<double>(bg.A * std::sqrt(n) + bg.B * std::cbrt(n));
    r.two_term_main = two;
    r.two_term_residual = static_cast<double>(static_cast<long double>(r.Q) - two);
    r.two_term_normalized = *r.two_term_residual / static_cast<double>(std::pow(n, 1.0L / 6));
  }
  return r;
}

}  // namespace kfa
