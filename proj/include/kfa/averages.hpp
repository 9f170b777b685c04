#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfa/arith.hpp"
#include "kfa/dynamics.hpp"
#include "kfa/numeric.hpp"

namespace kfa {

/// An arithmetic function a(n) = g(Omega(n), N). Evaluating at omega instead of
/// n lets a(n^k m) be computed as g(k Omega(n) + Omega(m), N) without forming
/// n^k m. N is the outer scale of the experiment, fixed for a whole average.
struct Observable {
  std::function<std::complex<double>(unsigned omega, u64 N)> eval_at_omega;
  std::string description;

  std::complex<double> operator()(unsigned omega, u64 N) const { return eval_at_omega(omega, N); }
};

Observable constant_observable(std::complex<double> c = {1.0, 0.0});
/// (-1)^omega
Observable liouville_observable();
/// omega -> f(T^omega x)
Observable br_observable(const DynSystem& system, const TestFunction& f, const Point& x);

/// Compactly supported windows on [-1, 1] with closed-form Gaussian mass.
enum class Window {
  tent,  // 1 - |t|
  bump,  // (1 - t^2)^3, C^2
};
double window_value(Window w, double t);
/// (1/sqrt(2 pi)) int F(t) e^(-t^2/2) dt
double gaussian_mass(Window w);
std::string to_string(Window w);
Window parse_window(const std::string& text);

/// log log N, the centring scale for Omega.
double loglog(u64 N);
/// (omega - c loglog N) / (c sqrt(loglog N))
double ek_normalize(unsigned omega, double c, u64 N);

/// omega -> F((omega - k loglog N) / (k sqrt(loglog N)))
Observable ek_observable(Window F, unsigned k);
/// omega -> F(normalised omega) * f(T^omega x)
Observable loyd_observable(Window F, unsigned k, const DynSystem& system,
                           const TestFunction& f, const Point& x);

struct AverageReport {
  std::complex<double> value;
  u64 N = 0;
  unsigned k = 1;
  u64 term_count = 0;
  std::optional<std::complex<double>> target;
  std::optional<double> abs_deviation;
  std::string description;

  void set_target(std::complex<double> t) {
    target = t;
    abs_deviation = std::abs(value - t);
  }
};

/// (1/total) sum_w counts[w] g(shift(w)), reduced in ascending w.
std::complex<double> histogram_mean(const OmegaHistogram& h,
                                    const std::function<std::complex<double>(unsigned)>& g);

/// Mean of obs over k-full n <= N. sieve.limit() >= N^(1/k).
AverageReport kfull_average(const Observable& obs, u64 N, unsigned k, const FactorSieve& sieve);

/// (1/N) sum_{n<=N} a(n^k). sieve.limit() >= N.
AverageReport power_average(const Observable& obs, u64 N, unsigned k, const FactorSieve& sieve);

/// (1/N) sum_{n<=N} a(n^k m).
AverageReport shifted_power_average(const Observable& obs, u64 N, unsigned k, u64 m,
                                    const FactorSieve& sieve);

struct InvarianceRow {
  u64 m = 1;
  unsigned omega_m = 0;
  std::complex<double> shifted;
  double deviation = 0.0;
  bool within_tolerance = true;
};
struct InvarianceReport {
  u64 N = 0;
  unsigned k = 2;
  double tolerance = 0.0;
  std::complex<double> unshifted;
  std::vector<InvarianceRow> rows;
  bool all_within() const;
};
InvarianceReport k_invariance_check(const Observable& obs, u64 N, unsigned k,
                                    std::span<const u64> m_set, const FactorSieve& sieve,
                                    double tolerance = 1e-2);

/// kfull_average of omega -> f(T^omega x), with target = integral of f.
AverageReport br_average(const DynSystem& system, const TestFunction& f, const Point& x,
                         u64 N, unsigned k, const FactorSieve& sieve);

enum class Domain { kfull, all_n };
std::string to_string(Domain d);

struct EKBin {
  unsigned omega = 0;
  double x = 0.0;  // normalised value
  u64 count = 0;
  double mass = 0.0;
};

struct EKReport {
  u64 N = 0;
  unsigned k = 2;
  Domain domain = Domain::kfull;
  u64 sample_count = 0;
  double loglog = 0.0;
  std::vector<EKBin> bins;  // ascending x; masses sum to 1
  double ks_distance = 0.0;  // sup |F_emp - Phi|
  double mean = 0.0;
  double variance = 0.0;
};

/// Standard normal CDF.
double normal_cdf(double x);

/// Sup-distance from Phi of the empirical CDF carried by the bins.
double ks_distance(std::span<const EKBin> bins);

/// N >= 16 so that loglog N > 1. Domain kfull normalises with c = k and needs
/// sieve.limit() >= N^(1/k); all_n uses c = 1 and needs sieve.limit() >= N.
EKReport ek_statistics(u64 N, unsigned k, Domain domain, const FactorSieve& sieve);

/// Mean of F(normalised Omega) f(T^Omega x); target = gaussian_mass(F) * int f.
AverageReport loyd_average(const DynSystem& system, const TestFunction& f, const Point& x,
                           Window F, u64 N, unsigned k, Domain domain, const FactorSieve& sieve);

/// Mean over k-full n <= N of e(h Omega(n) alpha). h != 0.
AverageReport weyl_sum(const Alpha& alpha, i64 h, u64 N, unsigned k, const FactorSieve& sieve);

/// Star discrepancy of a finite sample in [0, 1):
///   max_i max(i/n - x_(i), x_(i) - (i-1)/n) over the sorted sample.
double star_discrepancy(std::span<const double> samples);

struct WeightedPoint {
  double x = 0.0;
  u64 count = 0;
};
/// Same quantity for a sample given as points with multiplicities.
double star_discrepancy(std::vector<WeightedPoint> points);

/// {Omega(n) alpha mod 1} over k-full n <= N, grouped by Omega.
std::vector<WeightedPoint> omega_alpha_points(const Alpha& alpha, u64 N, unsigned k,
                                              const FactorSieve& sieve);

/// Erdos-Turan inequality with the Niederreiter-Kuipers constants:
///   D* <= D <= 6/(H+1) + (4/pi) sum_{h=1}^H (1/h - 1/(H+1)) |W_h|.
/// weyl_moduli[h-1] = |W_h|.
double erdos_turan_bound(std::span<const double> weyl_moduli);

struct SquarefreeReport {
  AverageReport normalized;  // mean over squarefree n <= N
  std::complex<double> unnormalized;  // (1/N) sum over squarefree n <= N
  double density = 0.0;               // #squarefree / N
};
SquarefreeReport squarefree_average(const Observable& obs, u64 N, const FactorSieve& sieve);
SquarefreeReport squarefree_average(const DynSystem& system, const TestFunction& f,
                                    const Point& x, u64 N, const FactorSieve& sieve);

/// Serial reference kernels: straightforward loops over individual integers or
/// entries, kept as independent checks on the histogram-based kernels.
namespace reference {

OmegaHistogram omega_histogram(const FactorSieve& sieve, u64 N);
OmegaHistogram kfull_omega_histogram(u64 N, unsigned k, const FactorSieve& sieve);
/// Entry-by-entry compensated sum over enumerate_kfull.
std::complex<double> kfull_average(const Observable& obs, u64 N, unsigned k,
                                   const FactorSieve& sieve);
/// Term-by-term sum of a(n^k m) over n <= N.
std::complex<double> shifted_power_average(const Observable& obs, u64 N, unsigned k, u64 m,
                                           const FactorSieve& sieve);
double prime_sum(u64 limit, const std::function<double(u64)>& f);

}  // namespace reference

}  // namespace kfa
