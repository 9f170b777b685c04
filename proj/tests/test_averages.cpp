#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kfa/averages.hpp"
#include "kfa/error.hpp"
#include "kfa/kfull.hpp"
#include "kfa/parallel.hpp"
#include "oracles.hpp"

using namespace kfa;

namespace {

const FactorSieve& sieve_1e7() {
  static const FactorSieve s = build_sieve(10'000'000);
  return s;
}

std::complex<double> e(double t) { return std::polar(1.0, 2 * std::numbers::pi * t); }

}  // namespace

TEST_SUITE("averages") {

TEST_CASE("constant observable averages to exactly 1") {
  const auto one = constant_observable();
  for (unsigned k : {2U, 3U, 5U}) {
    for (u64 N : {1ULL, 100ULL, 1'000'000ULL, 1'000'000'000'000ULL}) {
      const FactorSieve s = build_sieve(kfull_sieve_limit(N, k));
      const AverageReport r = kfull_average(one, N, k, s);
      CHECK(r.value == std::complex<double>(1.0, 0.0));
      CHECK(r.term_count == count_kfull(N, k, s));
    }
  }
  const FactorSieve s6 = build_sieve(1000);
  CHECK(kfull_average(constant_observable(0.0), 1'000'000, 2, s6).value == 0.0);
  const AverageReport p = power_average(one, 1000, 2, sieve_1e7());
  CHECK(p.value == std::complex<double>(1.0, 0.0));
  CHECK(p.term_count == 1000);
}

TEST_CASE("Liouville mean over squarefull n <= 100") {
  long sum = 0, count = 0;
  for (u64 n = 1; n <= 100; ++n) {
    if (!oracle::is_kfull(n, 2)) continue;
    sum += oracle::big_omega(n) % 2 ? -1 : 1;
    ++count;
  }
  const AverageReport r = kfull_average(liouville_observable(), 100, 2, build_sieve(10));
  CHECK(count == 14);
  CHECK(r.value.real() == doctest::Approx(double(sum) / count).epsilon(1e-15));
}

TEST_CASE("Liouville along powers") {
  const auto& s = sieve_1e7();
  const auto lam = liouville_observable();
  CHECK(power_average(lam, 1'000'000, 2, s).value == std::complex<double>(1.0, 0.0));
  CHECK(power_average(lam, 1'000'000, 4, s).value == std::complex<double>(1.0, 0.0));
  CHECK(power_average(lam, 1'000'000, 3, s).value.real() ==
        doctest::Approx(liouville_mean(s, 1'000'000)).epsilon(1e-14));
  CHECK(shifted_power_average(lam, 1'000'000, 2, 2, s).value == std::complex<double>(-1.0, 0.0));
  CHECK(shifted_power_average(lam, 1'000'000, 2, 1, s).value ==
        power_average(lam, 1'000'000, 2, s).value);
}

TEST_CASE("two-point system along squares") {
  const auto& s = sieve_1e7();
  const auto sys = cyclic_rotation(2);
  const TestFunction f = PointValues{{1.0, -1.0}};
  const auto obs = br_observable(sys, f, u64{0});
  // T^(2 Omega(n)) 0 = 0, so every term is f(0) = 1.
  CHECK(power_average(obs, 100'000, 2, s).value == std::complex<double>(1.0, 0.0));
  const auto direct = reference::shifted_power_average(obs, 100'000, 2, 1, s);
  CHECK(direct == std::complex<double>(1.0, 0.0));
}

TEST_CASE("shifted and unshifted averages agree with direct summation") {
  const auto& s = sieve_1e7();
  const auto obs = br_observable(circle_rotation(Alpha::golden()), Trig{{1}}, 0.0);
  for (u64 m : {1ULL, 6ULL, 30ULL}) {
    const auto fast = shifted_power_average(obs, 1'000'000, 2, m, s).value;
    const auto slow = reference::shifted_power_average(obs, 1'000'000, 2, m, s);
    CHECK(std::abs(fast - slow) < 1e-12);
  }
}

TEST_CASE("k-invariance check") {
  const auto& s = sieve_1e7();
  const std::vector<u64> ms{2, 3, 5, 6};
  const auto c = k_invariance_check(constant_observable(), 100'000, 2, ms, s);
  for (const auto& row : c.rows) CHECK(row.deviation == 0.0);
  CHECK(c.all_within());

  const std::vector<u64> two{2};
  const auto lam = k_invariance_check(liouville_observable(), 100'000, 2, two, s);
  CHECK(lam.rows[0].deviation == 2.0);
  CHECK_FALSE(lam.all_within());

  // For f = e(x) on a rotation the shift by m multiplies every term by
  // e(alpha Omega(m)), so the deviation is |e(alpha Omega(m)) - 1| |unshifted|.
  const Alpha g = Alpha::golden();
  const auto obs = br_observable(circle_rotation(g), Trig{{1}}, 0.0);
  const std::vector<u64> primes{2, 3, 5};
  const auto br = k_invariance_check(obs, 10'000'000, 2, primes, s);
  for (const auto& row : br.rows) {
    const double predicted = std::abs(e(g.frac_multiple(row.omega_m)) - 1.0) * std::abs(br.unshifted);
    CHECK(row.deviation == doctest::Approx(predicted).epsilon(1e-12));
  }
}

TEST_CASE("Bergelson-Richter averages") {
  const u64 N = 1'000'000;
  const FactorSieve s = build_sieve(kfull_sieve_limit(N, 2));
  const auto circle = circle_rotation(Alpha::golden());
  const AverageReport one = br_average(circle, Trig{{0}}, 0.0, N, 2, s);
  CHECK(one.value == std::complex<double>(1.0, 0.0));
  CHECK(*one.abs_deviation == 0.0);
  const AverageReport r = br_average(circle, Trig{{1}}, 0.0, N, 2, s);
  CHECK(r.target == std::complex<double>(0.0, 0.0));
  CHECK(*r.abs_deviation == doctest::Approx(std::abs(r.value)));
  const auto slow = reference::kfull_average(br_observable(circle, Trig{{1}}, 0.0), N, 2, s);
  CHECK(std::abs(r.value - slow) < 1e-12);
}

TEST_CASE("Gaussian masses against quadrature") {
  const double inv = 1.0 / std::sqrt(2 * std::numbers::pi);
  for (Window w : {Window::tent, Window::bump}) {
    const double q = oracle::simpson(
        [&](double t) { return window_value(w, t) * inv * std::exp(-t * t / 2); }, -1.0, 1.0);
    CHECK(gaussian_mass(w) == doctest::Approx(q).epsilon(1e-12));
  }
  CHECK(window_value(Window::tent, 1.5) == 0.0);
  CHECK(window_value(Window::bump, -1.0) == 0.0);
  CHECK(parse_window("bump") == Window::bump);
  CHECK_THROWS_AS(parse_window("box"), DomainError);
}

TEST_CASE("Erdos-Kac statistics") {
  const auto& s = sieve_1e7();
  CHECK_THROWS_AS(ek_statistics(15, 2, Domain::kfull, s), DomainError);

  const EKReport r = ek_statistics(1'000'000, 2, Domain::all_n, s);
  double mass = 0.0;
  for (const auto& b : r.bins) mass += b.mass;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.ks_distance >= 0.0);
  CHECK(r.ks_distance <= 1.0);
  CHECK(r.sample_count == 1'000'000);

  // Mean of Omega(n) over n <= N equals (1/N) sum_{p^a <= N} floor(N / p^a).
  const auto prime = oracle::eratosthenes(1'000'000);
  long double total = 0;
  for (u64 p = 2; p <= 1'000'000; ++p) {
    if (!prime[p]) continue;
    for (u64 q = p; q <= 1'000'000; q *= p) total += 1'000'000 / q;
  }
  const double ll = std::log(std::log(1e6));
  const double mean = (static_cast<double>(total / 1e6L) - ll) / std::sqrt(ll);
  CHECK(r.mean == doctest::Approx(mean).epsilon(1e-12));

  const EKReport k = ek_statistics(1'000'000'000'000ULL, 2, Domain::kfull,
                                   build_sieve(kfull_sieve_limit(1'000'000'000'000ULL, 2)));
  CHECK(k.sample_count == count_kfull(1'000'000'000'000ULL, 2));
}

TEST_CASE("KS distance of simple empirical laws") {
  const std::vector<EKBin> atom{{0, 0.0, 1, 1.0}};
  CHECK(ks_distance(atom) == doctest::Approx(0.5));
  const std::vector<EKBin> far{{0, -10.0, 1, 1.0}};
  CHECK(ks_distance(far) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(normal_cdf(0.0) == 0.5);
}

TEST_CASE("Loyd averages") {
  const u64 N = 100'000'000;
  const FactorSieve s = build_sieve(kfull_sieve_limit(N, 2));
  const auto circle = circle_rotation(Alpha::golden());
  const AverageReport r = loyd_average(circle, Trig{{0}}, 0.0, Window::tent, N, 2, Domain::kfull, s);
  const AverageReport w = kfull_average(ek_observable(Window::tent, 2), N, 2, s);
  CHECK(r.value == w.value);
  CHECK(*r.target == std::complex<double>(gaussian_mass(Window::tent), 0.0));
  const AverageReport t = loyd_average(circle, Trig{{1}}, 0.0, Window::bump, N, 2, Domain::kfull, s);
  CHECK(*t.target == std::complex<double>(0.0, 0.0));
  const auto slow = reference::kfull_average(
      loyd_observable(Window::bump, 2, circle, Trig{{1}}, 0.0), N, 2, s);
  CHECK(std::abs(t.value - slow) < 1e-12);
}

TEST_CASE("Weyl sums") {
  const u64 N = 1'000'000;
  const FactorSieve s = build_sieve(kfull_sieve_limit(N, 2));
  CHECK(weyl_sum(Alpha::rational(1, 2), 2, N, 2, s).value == std::complex<double>(1.0, 0.0));
  CHECK(weyl_sum(Alpha::rational(0, 1), 1, N, 2, s).value == std::complex<double>(1.0, 0.0));
  CHECK(weyl_sum(Alpha::decimal(0.0), 5, N, 2, s).value == std::complex<double>(1.0, 0.0));
  CHECK_THROWS_AS(weyl_sum(Alpha::golden(), 0, N, 2, s), DomainError);
  // W_{-h} is the conjugate of W_h.
  const auto a = weyl_sum(Alpha::golden(), 3, N, 2, s).value;
  const auto b = weyl_sum(Alpha::golden(), -3, N, 2, s).value;
  CHECK(std::abs(a - std::conj(b)) < 1e-14);
  // Same value as the Bergelson-Richter average of e(h x) on the golden rotation.
  const auto br = br_average(circle_rotation(Alpha::golden()), Trig{{3}}, 0.0, N, 2, s).value;
  CHECK(std::abs(a - br) < 1e-12);
}

TEST_CASE("star discrepancy") {
  const std::vector<double> zero{0.0};
  CHECK(star_discrepancy(zero) == 1.0);
  const std::vector<double> two{0.0, 0.5};
  CHECK(star_discrepancy(two) == 0.5);
  std::vector<double> grid;
  for (int i = 0; i < 64; ++i) grid.push_back(i / 64.0);
  CHECK(star_discrepancy(grid) == doctest::Approx(1.0 / 64));
  CHECK_THROWS_AS(star_discrepancy(std::vector<double>{}), DomainError);

  const std::vector<WeightedPoint> w{{0.3, 2}, {0.7, 1}, {0.1, 3}};
  const std::vector<double> flat{0.3, 0.3, 0.7, 0.1, 0.1, 0.1};
  CHECK(star_discrepancy(w) == doctest::Approx(star_discrepancy(flat)).epsilon(1e-15));
}

TEST_CASE("discrepancy is within the Erdos-Turan bound") {
  const u64 N = 100'000'000;
  const FactorSieve s = build_sieve(kfull_sieve_limit(N, 2));
  const Alpha g = Alpha::golden();
  for (unsigned H : {1U, 4U, 16U}) {
    std::vector<double> moduli;
    for (unsigned h = 1; h <= H; ++h) moduli.push_back(std::abs(weyl_sum(g, h, N, 2, s).value));
    CHECK(star_discrepancy(omega_alpha_points(g, N, 2, s)) <= erdos_turan_bound(moduli));
  }
}

TEST_CASE("squarefree baseline") {
  const auto& s = sieve_1e7();
  const SquarefreeReport one = squarefree_average(constant_observable(), 10'000'000, s);
  CHECK(one.normalized.value == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(one.unnormalized.real() - 6.0 / (std::numbers::pi * std::numbers::pi)) < 0.001);
  const SquarefreeReport f0 =
      squarefree_average(circle_rotation(Alpha::golden()), Trig{{0}}, 0.0, 100'000, s);
  CHECK(f0.normalized.value == std::complex<double>(1.0, 0.0));
  // lambda = mu on squarefree n: this is the Mertens function over N.
  const SquarefreeReport lm = squarefree_average(liouville_observable(), 10'000'000, s);
  CHECK(std::abs(lm.unnormalized) < 0.001);
  long mertens = 0;
  for (u64 n = 1; n <= 10'000; ++n) {
    bool sf = true;
    for (const auto& pe : oracle::factor(n)) sf = sf && pe.second == 1;
    if (sf) mertens += oracle::factor(n).size() % 2 ? -1 : 1;
  }
  CHECK(squarefree_average(liouville_observable(), 10'000, s).unnormalized.real() ==
        doctest::Approx(mertens / 1e4).epsilon(1e-14));
}

TEST_CASE("results do not depend on the thread count") {
  const u64 N = 1'000'000'000'000ULL;
  const FactorSieve s = build_sieve(kfull_sieve_limit(N, 2));
  const auto obs = br_observable(circle_rotation(Alpha::golden()), Trig{{1}}, 0.0);
  std::vector<std::complex<double>> values;
  std::vector<OmegaHistogram> hists;
  for (int t : {1, 2, 4, 7}) {
    set_threads(t);
    values.push_back(kfull_average(obs, N, 2, s).value);
    hists.push_back(kfull_omega_histogram(N, 2, s));
  }
  set_threads(0);
  for (std::size_t i = 1; i < values.size(); ++i) {
    CHECK(values[i] == values[0]);
    CHECK(hists[i] == hists[0]);
  }
  CHECK(std::abs(values[0] - reference::kfull_average(obs, N, 2, s)) < 1e-12);
}

}  // TEST_SUITE
