#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kfa/constants.hpp"
#include "kfa/error.hpp"
#include "kfa/kfull.hpp"
#include "oracles.hpp"

using namespace kfa;

namespace {

// c_2 = zeta(3/2)/zeta(3) from the Euler-Maclaurin oracle.
double c2_oracle() { return oracle::zeta(1.5) / oracle::zeta(3.0); }

}  // namespace

TEST_SUITE("constants") {

TEST_CASE("zeta oracle against closed forms") {
  const double pi = std::numbers::pi;
  CHECK(oracle::zeta(2.0) == doctest::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK(oracle::zeta(4.0) == doctest::Approx(std::pow(pi, 4) / 90).epsilon(1e-15));
  CHECK(oracle::zeta(0.5) == doctest::Approx(-1.4603545088095868).epsilon(1e-14));
}

TEST_CASE("zeta against the oracle") {
  for (double s : {0.1, 0.5, 2.0 / 3.0, 0.9, 1.1, 1.5, 2.0, 3.0, 4.0, 10.0}) {
    CAPTURE(s);
    CHECK(zeta(s) == doctest::Approx(oracle::zeta(s)).epsilon(1e-13));
  }
  CHECK(zeta(2.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-15));
  CHECK_THROWS_AS(zeta(1.0), DomainError);
  CHECK_THROWS_AS(zeta(0.0), DomainError);
  CHECK_THROWS_AS(zeta(-1.0), DomainError);
}

TEST_CASE("Euler product with a single prime") {
  const ConstantEstimate e = euler_product_ck(2, 2);
  CHECK(e.value == doctest::Approx(1.0 + std::pow(2.0, -1.5)).epsilon(1e-15));
  CHECK(e.value == doctest::Approx(1.353553).epsilon(1e-6));
  CHECK(e.truncation_bound > 0.0);
  CHECK(e.terms_used == 1);
  CHECK_FALSE(e.tail_corrected);
}

TEST_CASE("c_2 by both methods") {
  const double c2 = c2_oracle();
  const ConstantEstimate euler = euler_product_ck(2, 10'000'000);
  CHECK(std::abs(euler.value - c2) < 1e-6);
  CHECK(std::abs(euler.value - c2) <= euler.truncation_bound);
  CHECK(std::abs(euler.partial - c2) <= euler.partial_bound);

  const std::vector<u64> D{10'000'000};
  const ConstantEstimate multi = multisum_ck(2, D);
  CHECK(std::abs(multi.value - c2) < 1e-6);
  CHECK(std::abs(multi.value - c2) <= multi.truncation_bound);
  CHECK(std::abs(multi.partial - c2) <= multi.partial_bound);

  const std::vector<u64> one{1};
  CHECK(multisum_ck(2, one).value == 1.0);
}

TEST_CASE("crude bounds hold at small truncations") {
  const double c2 = c2_oracle();
  for (u64 P : {2ULL, 10ULL, 1000ULL, 100'000ULL}) {
    const ConstantEstimate e = euler_product_ck(2, P);
    CHECK(e.partial <= c2);
    CHECK(c2 - e.partial <= e.partial_bound);
  }
  for (u64 D : {1ULL, 10ULL, 1000ULL, 100'000ULL}) {
    const std::vector<u64> d{D};
    const ConstantEstimate e = multisum_ck(2, d);
    CHECK(e.partial <= c2);
    CHECK(c2 - e.partial <= e.partial_bound);
  }
}

TEST_CASE("methods agree for k = 3, 4") {
  for (unsigned k : {3U, 4U}) {
    const ConstantEstimate euler = euler_product_ck(k, 10'000'000);
    const std::vector<u64> D =
        k == 3 ? std::vector<u64>{2000, 2000} : std::vector<u64>{200, 200, 200};
    const ConstantEstimate multi = multisum_ck(k, D);
    CAPTURE(k);
    CHECK(std::abs(euler.value - multi.value) <= euler.truncation_bound + multi.truncation_bound);
    CHECK(multi.partial <= euler.value + euler.truncation_bound);
  }
}

TEST_CASE("Bateman-Grosswald constants") {
  const BatemanGrosswald bg = bateman_grosswald_constants();
  CHECK(bg.A == doctest::Approx(2.1732543).epsilon(1e-7));
  CHECK(bg.A == doctest::Approx(c2_oracle()).epsilon(1e-13));
  CHECK(bg.B < 0.0);
  CHECK(bg.B == doctest::Approx(oracle::zeta(2.0 / 3.0) / oracle::zeta(2.0)).epsilon(1e-13));
  CHECK(std::abs(bg.A - erdos_szekeres_constant(2)) < 1e-6);
}

TEST_CASE("count against the asymptotic formulas") {
  const AsymptoticReport r = count_vs_asymptotic(100, 2);
  CHECK(r.Q == 14);
  CHECK(r.main_term == doctest::Approx(21.7325).epsilon(1e-5));
  CHECK(r.residual == doctest::Approx(-7.7325).epsilon(1e-4));
  const BatemanGrosswald bg = bateman_grosswald_constants();
  REQUIRE(r.two_term_residual);
  CHECK(*r.two_term_residual ==
        doctest::Approx(14.0 - (bg.A * 10.0 + bg.B * std::cbrt(100.0))).epsilon(1e-12));
  CHECK(count_vs_asymptotic(1, 2).Q == 1);
  CHECK_FALSE(count_vs_asymptotic(1000, 3).two_term_main);
  for (u64 N : {10'000ULL, 1'000'000ULL, 100'000'000ULL}) {
    CHECK(std::abs(*count_vs_asymptotic(N, 2).two_term_normalized) <= 5.0);
  }
}

// The refined Euler-product tail relies on explicit bounds for pi(x), and the
// refined multi-sum tail on one for the squarefree count. Check both constants
// empirically across the range we can sieve.
TEST_CASE("explicit pi(x) bounds hold on [88789, 10^7]") {
  const auto prime = oracle::eratosthenes(10'000'000);
  u64 pi = 0;
  bool lower_ok = true, upper_ok = true;
  for (u64 x = 2; x <= 10'000'000; ++x) {
    const bool jump = prime[x];
    if (jump && x > 88789) {
      // Infimum over [previous prime, x): approach x from the left.
      const double l = std::log(double(x));
      const double base = x / l * (1 + 1 / l);
      lower_ok = lower_ok && double(pi) >= base + 2.0 * x / (l * l * l);
    }
    pi += jump;
    if (jump && x >= 88789) {
      const double l = std::log(double(x));
      const double base = x / l * (1 + 1 / l);
      upper_ok = upper_ok && double(pi) <= base + 2.53816 * x / (l * l * l);
    }
  }
  CHECK(lower_ok);
  CHECK(upper_ok);
}

TEST_CASE("squarefree count error bound holds on [1664, 10^7]") {
  const u64 limit = 10'000'000;
  std::vector<bool> square_free(limit + 1, true);
  for (u64 d = 2; d * d <= limit; ++d) {
    for (u64 j = d * d; j <= limit; j += d * d) square_free[j] = false;
  }
  const double density = 6.0 / (std::numbers::pi * std::numbers::pi);
  u64 q = 0;
  double worst = 0.0;
  for (u64 x = 1; x <= limit; ++x) {
    // |Q(t) - density t| peaks at integers (from above or below); check both sides.
    const u64 before = q;
    q += square_free[x];
    if (x >= 1665) {
      worst = std::max(worst, std::abs(double(before) - density * x) / std::sqrt(double(x)));
    }
    if (x >= 1664) {
      worst = std::max(worst, std::abs(double(q) - density * x) / std::sqrt(double(x)));
    }
  }
  CHECK(worst <= 0.1333);
}

}  // TEST_SUITE
