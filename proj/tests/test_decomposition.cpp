#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "kfa/decomposition.hpp"
#include "kfa/error.hpp"
#include "kfa/kfull.hpp"
#include "kfa/report.hpp"
#include "oracles.hpp"

using namespace kfa;

namespace {

// Nested tuple sum with the real cutoff, done by brute force for small N:
// every k-full n <= N factors uniquely as m^k prod n_i^(k+i) with the n_i
// squarefree and pairwise coprime.
double brute_lhs(u64 N, unsigned k, auto&& a) {
  double s = 0;
  for (u64 n = 1; n <= N; ++n)
    if (oracle::is_kfull(n, k)) s += a(oracle::big_omega(n));
  return s / std::pow(double(N), 1.0 / k);
}

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("exact decomposition of small sums") {
  const auto lam = liouville_observable();
  const auto L = exact_decomposition(lam, 100, 2);
  CHECK(L.term_count == 14);
  CHECK(L.lhs.real() == doctest::Approx(brute_lhs(100, 2, [](unsigned w) { return w % 2 ? -1.0 : 1.0; })));
  CHECK(std::abs(L.s1 + L.s2 - L.lhs) < 1e-15);
  CHECK(L.measured_error < 1e-12);

  const auto one = exact_decomposition(constant_observable(), 1, 2);
  CHECK(one.term_count == 1);
  CHECK(one.lhs == std::complex<double>(1.0, 0.0));
  CHECK(one.tuple_count == 1);
}

TEST_CASE("exact identity over a grid") {
  const auto golden = br_observable(circle_rotation(Alpha::golden()), Trig{{1}}, 0.0);
  const std::vector<Observable> obs{constant_observable(), liouville_observable(), golden};
  for (unsigned k : {2U, 3U}) {
    for (u64 N : {1000ULL, 10'000ULL, 100'000ULL, 1'000'000ULL}) {
      for (const auto& o : obs) {
        // Throws ConsistencyError on mismatch.
        const auto L = exact_decomposition(o, N, k);
        CHECK(L.term_count == count_kfull(N, k));
      }
    }
  }
}

TEST_CASE("admissible truncation bounds") {
  CHECK(max_admissible_D(1'000'000, 2) == std::vector<u64>{100});
  CHECK(max_admissible_D(1'000'000'000, 3) == std::vector<u64>{13, 7});
  const auto lam = liouville_observable();
  const std::vector<u64> bad{10, 10};
  CHECK_THROWS_AS(truncated_decomposition(lam, 1'000'000'000, 3, bad), DomainError);
  const std::vector<u64> ok{10, 7};
  CHECK_NOTHROW(truncated_decomposition(lam, 1'000'000'000, 3, ok));
  const std::vector<u64> zero{0};
  CHECK_THROWS_AS(truncated_decomposition(lam, 10'000, 2, zero), DomainError);
  const std::vector<u64> wrong_size{2, 2};
  CHECK_THROWS_AS(truncated_decomposition(lam, 10'000, 2, wrong_size), DomainError);
}

TEST_CASE("truncation keeps only the tuples below D") {
  const auto lam = liouville_observable();
  const std::vector<u64> d1{1};
  const auto L = truncated_decomposition(lam, 10'000, 2, d1);
  // Only the empty tuple: s1_truncated is the mean of lambda(m^2) = 1 over m <= 100.
  CHECK(L.s1_truncated == std::complex<double>(1.0, 0.0));
  CHECK(L.stated_bound == doctest::Approx(1.0 + std::pow(1e4, -1.0 / 6)));

  const auto mx = max_admissible_D(1'000'000, 2);
  const auto M = truncated_decomposition(lam, 1'000'000, 2, mx);
  CHECK(M.measured_error <= std::abs(M.s2) + M.stated_bound);
  CHECK(M.ratio == doctest::Approx(M.measured_error / M.stated_bound));
}

TEST_CASE("error exponent scan") {
  const auto lam = liouville_observable();
  const std::vector<u64> Ns{10'000, 1'000'000, 100'000'000};
  const auto rows = error_exponent_scan(lam, 2, Ns, DRule::powers_of_two);
  REQUIRE(!rows.empty());
  for (const auto& r : rows) CHECK(r.ratio <= 20.0);
  for (u64 N : Ns) {
    double at2 = -1, atmax = -1;
    const u64 dmax = max_admissible_D(N, 2)[0];
    for (const auto& r : rows) {
      if (r.N != N) continue;
      if (r.D[0] == 2) at2 = r.measured_error;
      if (r.D[0] == dmax) atmax = r.measured_error;
    }
    CHECK(at2 >= 0);
    CHECK(atmax >= 0);
    CHECK(atmax < at2);
  }
  CHECK(parse_d_rule("sqrt_max") == DRule::sqrt_max);
  CHECK(to_string(DRule::max) == "max");
  CHECK_THROWS_AS(parse_d_rule("all"), DomainError);
}

TEST_CASE("ledger CSV") {
  const auto lam = liouville_observable();
  const std::vector<u64> Ns{10'000};
  const auto rows = error_exponent_scan(lam, 3, Ns, DRule::max);
  std::ostringstream out;
  write_ledger_csv(out, rows);
  const std::string s = out.str();
  CHECK(s.rfind("N,k,D1,D2,lhs,s1,err,bound,ratio\n", 0) == 0);
}

}  // TEST_SUITE
