#include "kfa/averages.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kfa/error.hpp"
#include "kfa/kfull.hpp"

namespace kfa {

Observable constant_observable(std::complex<double> c) {
  return {[c](unsigned, u64) { return c; }, "constant"};
}

Observable liouville_observable() {
  return {[](unsigned w, u64) { return std::complex<double>((w & 1U) ? -1.0 : 1.0, 0.0); },
          "liouville"};
}

Observable br_observable(const DynSystem& system, const TestFunction& f, const Point& x) {
  check_compatible(system, f);
  check_point(system, x);
  return {[system, f, x](unsigned w, u64) { return evaluate(f, iterate(system, w, x)); },
          "f(T^Omega x) on " + describe(system)};
}

double window_value(Window w, double t) {
  if (t <= -1.0 || t >= 1.0) return 0.0;
  switch (w) {
    case Window::tent:
      return 1.0 - std::abs(t);
    case Window::bump: {
      const double u = 1.0 - t * t;
      return u * u * u;
    }
  }
  return 0.0;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double gaussian_mass(Window w) {
  const double phi1 = std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi);
  const double phi0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  // M_{2j} = int_{-1}^{1} t^{2j} phi(t) dt = (2j-1) M_{2j-2} - 2 phi(1).
  const double m0 = 2.0 * normal_cdf(1.0) - 1.0;
  switch (w) {
    case Window::tent:
      return 2.0 * ((normal_cdf(1.0) - 0.5) - (phi0 - phi1));
    case Window::bump: {
      const double m2 = m0 - 2.0 * phi1;
      const double m4 = 3.0 * m2 - 2.0 * phi1;
      const double m6 = 5.0 * m4 - 2.0 * phi1;
      return m0 - 3.0 * m2 + 3.0 * m4 - m6;
    }
  }
  return 0.0;
}

std::string to_string(Window w) { return w == Window::tent ? "tent" : "bump"; }

Window parse_window(const std::string& text) {
  if (text == "tent") return Window::tent;
  if (text == "bump") return Window::bump;
  throw DomainError("unknown window '" + text + "' (expected tent or bump)");
}

double loglog(u64 N) { return std::log(std::log(static_cast<double>(N))); }

double ek_normalize(unsigned omega, double c, u64 N) {
  const double ll = loglog(N);
  return (static_cast<double>(omega) - c * ll) / (c * std::sqrt(ll));
}

namespace {

void require_ek_scale(u64 N, const char* op) {
  // log log N must be positive with room to spare: N > e^e.
  if (N < 16) throw DomainError(std::string(op) + ": N must be >= 16 (N > e^e)");
}

}  // namespace

Observable ek_observable(Window F, unsigned k) {
  return {[F, k](unsigned w, u64 N) {
            return std::complex<double>(window_value(F, ek_normalize(w, k, N)), 0.0);
          },
          "EK window " + to_string(F)};
}

Observable loyd_observable(Window F, unsigned k, const DynSystem& system,
                           const TestFunction& f, const Point& x) {
  check_compatible(system, f);
  check_point(system, x);
  return {[F, k, system, f, x](unsigned w, u64 N) {
            const double weight = window_value(F, ek_normalize(w, k, N));
            if (weight == 0.0) return std::complex<double>{};
            return weight * evaluate(f, iterate(system, w, x));
          },
          "Loyd " + to_string(F) + " x f(T^Omega x) on " + describe(system)};
}

std::complex<double> histogram_mean(const OmegaHistogram& h,
                                    const std::function<std::complex<double>(unsigned)>& g) {
  if (h.total == 0) throw DomainError("histogram_mean: empty histogram");
  ComplexSum sum;
  for (unsigned w = 0; w < h.counts.size(); ++w) {
    if (h.counts[w]) sum.add(static_cast<double>(h.counts[w]) * g(w));
  }
  return sum.value() / static_cast<double>(h.total);
}

AverageReport kfull_average(const Observable& obs, u64 N, unsigned k, const FactorSieve& sieve) {
  const OmegaHistogram h = kfull_omega_histogram(N, k, sieve);
  AverageReport r;
  r.N = N;
  r.k = k;
  r.term_count = h.total;
  r.description = obs.description;
  r.value = histogram_mean(h, [&](unsigned w) { return obs(w, N); });
  return r;
}

namespace {

void require_full_table(const FactorSieve& sieve, u64 N, const char* op) {
  if (N < 1 || N > sieve.limit()) {
    throw DomainError(std::string(op) + ": need 1 <= N <= sieve limit " +
                      std::to_string(sieve.limit()));
  }
}

unsigned omega_of(u64 m, const FactorSieve& sieve) {
  if (m == 0) throw DomainError("omega: m must be >= 1");
  return m <= sieve.limit() ? sieve.omega(m) : omega_trial(m);
}

}  // namespace

AverageReport shifted_power_average(const Observable& obs, u64 N, unsigned k, u64 m,
                                    const FactorSieve& sieve) {
  require_full_table(sieve, N, "power_average");
  if (k < 1) throw DomainError("power_average: k must be >= 1");
  const unsigned wm = omega_of(m, sieve);
  const OmegaHistogram h = omega_histogram(sieve, N);
  AverageReport r;
  r.N = N;
  r.k = k;
  r.term_count = N;
  r.description = obs.description;
  r.value = histogram_mean(h, [&](unsigned w) { return obs(k * w + wm, N); });
  return r;
}

AverageReport power_average(const Observable& obs, u64 N, unsigned k, const FactorSieve& sieve) {
  return shifted_power_average(obs, N, k, 1, sieve);
}

bool InvarianceReport::all_within() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const InvarianceRow& r) { return r.within_tolerance; });
}

InvarianceReport k_invariance_check(const Observable& obs, u64 N, unsigned k,
                                    std::span<const u64> m_set, const FactorSieve& sieve,
                                    double tolerance) {
  require_full_table(sieve, N, "k_invariance_check");
  const OmegaHistogram h = omega_histogram(sieve, N);
  InvarianceReport rep;
  rep.N = N;
  rep.k = k;
  rep.tolerance = tolerance;
  rep.unshifted = histogram_mean(h, [&](unsigned w) { return obs(k * w, N); });
  for (u64 m : m_set) {
    InvarianceRow row;
    row.m = m;
    row.omega_m = omega_of(m, sieve);
    row.shifted = histogram_mean(h, [&](unsigned w) { return obs(k * w + row.omega_m, N); });
    row.deviation = std::abs(row.shifted - rep.unshifted);
    row.within_tolerance = row.deviation < tolerance;
    rep.rows.push_back(row);
  }
  return rep;
}

AverageReport br_average(const DynSystem& system, const TestFunction& f, const Point& x,
                         u64 N, unsigned k, const FactorSieve& sieve) {
  AverageReport r = kfull_average(br_observable(system, f, x), N, k, sieve);
  r.set_target(invariant_integral(system, f));
  return r;
}

std::string to_string(Domain d) { return d == Domain::kfull ? "kfull" : "all_n"; }

namespace {

OmegaHistogram domain_histogram(u64 N, unsigned k, Domain domain, const FactorSieve& sieve) {
  if (domain == Domain::kfull) return kfull_omega_histogram(N, k, sieve);
  require_full_table(sieve, N, "all_n statistics");
  return omega_histogram(sieve, N);
}

}  // namespace

double ks_distance(std::span<const EKBin> bins) {
  double cum = 0.0;
  double d = 0.0;
  for (const EKBin& b : bins) {
    const double F = normal_cdf(b.x);
    d = std::max(d, std::abs(cum - F));
    cum += b.mass;
    d = std::max(d, std::abs(cum - F));
  }
  return std::min(d, 1.0);
}

EKReport ek_statistics(u64 N, unsigned k, Domain domain, const FactorSieve& sieve) {
  require_ek_scale(N, "ek_statistics");
  const OmegaHistogram h = domain_histogram(N, k, domain, sieve);
  const double c = domain == Domain::kfull ? static_cast<double>(k) : 1.0;

  EKReport rep;
  rep.N = N;
  rep.k = k;
  rep.domain = domain;
  rep.sample_count = h.total;
  rep.loglog = loglog(N);
  CompensatedSum<double> s1, s2;
  for (unsigned w = 0; w < h.counts.size(); ++w) {
    if (!h.counts[w]) continue;
    EKBin b;
    b.omega = w;
    b.x = ek_normalize(w, c, N);
    b.count = h.counts[w];
    b.mass = static_cast<double>(b.count) / static_cast<double>(h.total);
    s1.add(b.mass * b.x);
    s2.add(b.mass * b.x * b.x);
    rep.bins.push_back(b);
  }
  rep.mean = s1.value();
  rep.variance = s2.value() - rep.mean * rep.mean;
  rep.ks_distance = ks_distance(rep.bins);
  return rep;
}

AverageReport loyd_average(const DynSystem& system, const TestFunction& f, const Point& x,
                           Window F, u64 N, unsigned k, Domain domain, const FactorSieve& sieve) {
  require_ek_scale(N, "loyd_average");
  const unsigned c = domain == Domain::kfull ? k : 1;
  const Observable obs = loyd_observable(F, c, system, f, x);
  const OmegaHistogram h = domain_histogram(N, k, domain, sieve);
  AverageReport r;
  r.N = N;
  r.k = domain == Domain::kfull ? k : 1;
  r.term_count = h.total;
  r.description = obs.description + " over " + to_string(domain);
  r.value = histogram_mean(h, [&](unsigned w) { return obs(w, N); });
  r.set_target(gaussian_mass(F) * invariant_integral(system, f));
  return r;
}

AverageReport weyl_sum(const Alpha& alpha, i64 h, u64 N, unsigned k, const FactorSieve& sieve) {
  if (h == 0) throw DomainError("weyl_sum: h must be nonzero");
  const OmegaHistogram hist = kfull_omega_histogram(N, k, sieve);
  const u128 abs_h = static_cast<u128>(h < 0 ? -h : h);
  const double sign = h < 0 ? -1.0 : 1.0;
  AverageReport r;
  r.N = N;
  r.k = k;
  r.term_count = hist.total;
  r.description = "e(h Omega alpha), h=" + std::to_string(h) + ", alpha=" + alpha.tag();
  r.value = histogram_mean(hist, [&](unsigned w) {
    const double t = alpha.frac_multiple(abs_h * w);
    if (t == 0.0) return std::complex<double>(1.0, 0.0);
    const double a = 2.0 * std::numbers::pi * t;
    return std::complex<double>(std::cos(a), sign * std::sin(a));
  });
  if (alpha.frac_multiple(abs_h) == 0.0) {
    r.set_target({1.0, 0.0});
  } else if (alpha.is_irrational()) {
    r.set_target({0.0, 0.0});
  }
  return r;
}

double star_discrepancy(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("star_discrepancy: empty sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double rank = static_cast<double>(i + 1);
    d = std::max({d, rank / n - x[i], x[i] - (rank - 1.0) / n});
  }
  return d;
}

double star_discrepancy(std::vector<WeightedPoint> points) {
  std::erase_if(points, [](const WeightedPoint& p) { return p.count == 0; });
  if (points.empty()) throw DomainError("star_discrepancy: empty sample");
  std::sort(points.begin(), points.end(),
            [](const WeightedPoint& a, const WeightedPoint& b) { return a.x < b.x; });
  u64 total = 0;
  for (const auto& p : points) total += p.count;
  const double n = static_cast<double>(total);
  double d = 0.0;
  u64 below = 0;  // samples strictly before the current group
  for (std::size_t i = 0; i < points.size();) {
    // Merge equal coordinates into one atom.
    std::size_t j = i;
    u64 here = 0;
    while (j < points.size() && points[j].x == points[i].x) here += points[j++].count;
    const double x = points[i].x;
    d = std::max({d, static_cast<double>(below + here) / n - x, x - static_cast<double>(below) / n});
    below += here;
    i = j;
  }
  return d;
}

std::vector<WeightedPoint> omega_alpha_points(const Alpha& alpha, u64 N, unsigned k,
                                              const FactorSieve& sieve) {
  const OmegaHistogram h = kfull_omega_histogram(N, k, sieve);
  std::vector<WeightedPoint> out;
  for (unsigned w = 0; w < h.counts.size(); ++w) {
    if (h.counts[w]) out.push_back({alpha.frac_multiple(w), h.counts[w]});
  }
  return out;
}

double erdos_turan_bound(std::span<const double> weyl_moduli) {
  const double H = static_cast<double>(weyl_moduli.size());
  if (weyl_moduli.empty()) return 1.0;
  CompensatedSum<double> sum;
  for (std::size_t i = 0; i < weyl_moduli.size(); ++i) {
    const double h = static_cast<double>(i + 1);
    sum.add((1.0 / h - 1.0 / (H + 1.0)) * weyl_moduli[i]);
  }
  return 6.0 / (H + 1.0) + 4.0 / std::numbers::pi * sum.value();
}

SquarefreeReport squarefree_average(const Observable& obs, u64 N, const FactorSieve& sieve) {
  require_full_table(sieve, N, "squarefree_average");
  const OmegaHistogram h = squarefree_omega_histogram(sieve, N);
  SquarefreeReport rep;
  rep.normalized.N = N;
  rep.normalized.k = 1;
  rep.normalized.term_count = h.total;
  rep.normalized.description = obs.description + " over squarefree n";
  rep.normalized.value = histogram_mean(h, [&](unsigned w) { return obs(w, N); });
  rep.density = static_cast<double>(h.total) / static_cast<double>(N);
  rep.unnormalized = rep.normalized.value * rep.density;
  return rep;
}

SquarefreeReport squarefree_average(const DynSystem& system, const TestFunction& f,
                                    const Point& x, u64 N, const FactorSieve& sieve) {
  SquarefreeReport rep = squarefree_average(br_observable(system, f, x), N, sieve);
  rep.normalized.set_target(invariant_integral(system, f));
  return rep;
}

// --- serial reference kernels -----------------------------------------------

namespace reference {

OmegaHistogram omega_histogram(const FactorSieve& sieve, u64 N) {
  require_full_table(sieve, N, "reference::omega_histogram");
  OmegaHistogram h;
  for (u64 n = 1; n <= N; ++n) h.add(sieve.omega(n));
  return h;
}

OmegaHistogram kfull_omega_histogram(u64 N, unsigned k, const FactorSieve& sieve) {
  OmegaHistogram h;
  enumerate_kfull(N, k, sieve, [&](const KFullEntry& e) { h.add(e.omega); });
  return h;
}

std::complex<double> kfull_average(const Observable& obs, u64 N, unsigned k,
                                   const FactorSieve& sieve) {
  ComplexSum sum;
  u64 count = 0;
  enumerate_kfull(N, k, sieve, [&](const KFullEntry& e) {
    sum.add(obs(e.omega, N));
    ++count;
  });
  return sum.value() / static_cast<double>(count);
}

std::complex<double> shifted_power_average(const Observable& obs, u64 N, unsigned k, u64 m,
                                           const FactorSieve& sieve) {
  require_full_table(sieve, N, "reference::shifted_power_average");
  const unsigned wm = omega_of(m, sieve);
  ComplexSum sum;
  for (u64 n = 1; n <= N; ++n) sum.add(obs(k * sieve.omega(n) + wm, N));
  return sum.value() / static_cast<double>(N);
}

double prime_sum(u64 limit, const std::function<double(u64)>& f) {
  std::vector<std::uint8_t> composite(limit + 1, 0);
  CompensatedSum<double> sum;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    sum.add(f(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return sum.value();
}

}  // namespace reference

}  // namespace kfa
