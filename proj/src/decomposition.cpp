#include "kfa/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "kfa/error.hpp"
#include "kfa/kfull.hpp"

namespace kfa {

namespace {

// Omega(n) <= 59 for n <= 10^18, so every summand reads from this table.
constexpr unsigned kOmegaTable = 64;

std::vector<std::complex<double>> tabulate(const Observable& obs, u64 N) {
  std::vector<std::complex<double>> g(kOmegaTable);
  for (unsigned w = 0; w < kOmegaTable; ++w) g[w] = obs(w, N);
  return g;
}

struct TupleTerm {
  std::complex<double> sum;  // sum_{m <= M} a(m^k P)
  u64 M = 0;
  double weight = 0.0;  // prod n_i^(-(1+i/k))
};

// Inner sums for every tuple, in tuple order. Parallel over tuples; each
// tuple's sum is computed by one thread, so the result is thread-count invariant.
std::vector<TupleTerm> tuple_terms(const TupleSet& tuples, u64 N, unsigned k,
                                   const FactorSieve& sieve,
                                   const std::vector<std::complex<double>>& g) {
  std::vector<TupleTerm> out(tuples.size());
  const auto om = sieve.omega_table();
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(tuples.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    TupleTerm& term = out[t];
    term.M = static_cast<u64>(integer_kth_root(N / tuples.product(t), k));
    const unsigned base = tuples.omega(t);
    ComplexSum acc;
    for (u64 m = 1; m <= term.M; ++m) acc.add(g[k * om[m] + base]);
    term.sum = acc.value();
    const auto parts = tuples.parts(t);
    double w = 1.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] > 1) w *= std::pow(static_cast<double>(parts[i]), -(1.0 + double(i + 1) / k));
    }
    term.weight = w;
  }
  return out;
}

long double root_scale(u64 N, unsigned k) {
  return std::pow(static_cast<long double>(N), 1.0L / k);
}

double stated_bound(u64 N, unsigned k, std::span<const u64> D) {
  double b = std::pow(static_cast<double>(N), -1.0 / (double(k) * (k + 1)));
  for (std::size_t i = 0; i < D.size(); ++i) {
    b += std::pow(static_cast<double>(D[i]), -double(i + 1) / k);
  }
  return b;
}

void validate_D(u64 N, unsigned k, std::span<const u64> D) {
  if (D.size() != k - 1) {
    throw DomainError("decomposition: expected " + std::to_string(k - 1) + " truncation bounds");
  }
  for (std::size_t i = 0; i < D.size(); ++i) {
    const unsigned e = (k - 1) * (k + static_cast<unsigned>(i) + 1);
    const auto p = checked_pow(D[i], e);
    if (D[i] < 1 || !p || *p > N) {
      throw DomainError("decomposition: D" + std::to_string(i + 1) + "=" +
                        std::to_string(D[i]) + " outside [1, N^(1/" + std::to_string(e) + ")]");
    }
  }
}

// Everything except the truncated sum: lhs, s1, s2 and the per-tuple terms.
struct Expansion {
  DecompositionLedger ledger;
  TupleSet tuples;
  std::vector<TupleTerm> terms;
};

Expansion expand(const Observable& obs, u64 N, unsigned k) {
  detail::validate_kfull_args(N, k);
  const FactorSieve sieve = build_sieve(kfull_sieve_limit(N, k));
  const auto g = tabulate(obs, N);
  const long double scale = root_scale(N, k);

  Expansion ex;
  DecompositionLedger& L = ex.ledger;
  L.N = N;
  L.k = k;

  // Direct side: every k-full n <= N, grouped by Omega.
  const OmegaHistogram h = kfull_omega_histogram(N, k, sieve);
  ComplexSum direct;
  for (unsigned w = 0; w < h.counts.size(); ++w) {
    if (h.counts[w]) direct.add(static_cast<double>(h.counts[w]) * g.at(w));
  }
  L.term_count = h.total;
  L.lhs = direct.value() / static_cast<double>(scale);

  ex.tuples = admissible_tuples(N, k, sieve);
  ex.terms = tuple_terms(ex.tuples, N, k, sieve, g);
  L.tuple_count = ex.tuples.size();
  ComplexSum s1;
  for (const TupleTerm& t : ex.terms) s1.add(t.weight * (t.sum / static_cast<double>(t.M)));
  L.s1 = s1.value();
  L.s2 = L.lhs - L.s1;
  return ex;
}

}  // namespace

DecompositionLedger exact_decomposition(const Observable& obs, u64 N, unsigned k) {
  Expansion ex = expand(obs, N, k);
  DecompositionLedger& L = ex.ledger;
  const double scale = static_cast<double>(root_scale(N, k));

  // Nested side: sum_t sum_m a(...) with no averaging, i.e. the real-cutoff form.
  ComplexSum nested;
  for (const TupleTerm& t : ex.terms) nested.add(t.sum);
  L.s1_truncated = nested.value() / scale;
  L.measured_error = std::abs(L.lhs - L.s1_truncated);
  L.stated_bound = 0.0;
  L.ratio = 0.0;

  const double size = static_cast<double>(L.term_count) / scale;
  if (L.measured_error > 1e-9 * size) {
    throw ConsistencyError("exact_decomposition: direct and nested sums differ by " +
                           std::to_string(L.measured_error) + " at N=" + std::to_string(N) +
                           ", k=" + std::to_string(k));
  }
  u64 inner_terms = 0;
  for (const TupleTerm& t : ex.terms) inner_terms += t.M;
  if (inner_terms != L.term_count) {
    throw ConsistencyError("exact_decomposition: nested term count " +
                           std::to_string(inner_terms) + " != Q_k(N) " +
                           std::to_string(L.term_count));
  }
  return L;
}

std::vector<u64> max_admissible_D(u64 N, unsigned k) {
  detail::validate_kfull_args(N, k);
  std::vector<u64> D(k - 1);
  for (unsigned i = 1; i < k; ++i) {
    D[i - 1] = static_cast<u64>(integer_kth_root(N, (k - 1) * (k + i)));
  }
  return D;
}

namespace {

void fill_truncated(DecompositionLedger& L, const TupleSet& tuples,
                    const std::vector<TupleTerm>& terms, std::span<const u64> D) {
  ComplexSum s;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const auto parts = tuples.parts(t);
    bool inside = true;
    for (std::size_t i = 0; i < parts.size(); ++i) inside = inside && parts[i] <= D[i];
    if (!inside || terms[t].M == 0) continue;
    s.add(terms[t].weight * (terms[t].sum / static_cast<double>(terms[t].M)));
  }
  L.D.assign(D.begin(), D.end());
  L.s1_truncated = s.value();
  L.measured_error = std::abs(L.lhs - L.s1_truncated);
  L.stated_bound = stated_bound(L.N, L.k, D);
  L.ratio = L.measured_error / L.stated_bound;
}

}  // namespace

DecompositionLedger truncated_decomposition(const Observable& obs, u64 N, unsigned k,
                                            std::span<const u64> D) {
  detail::validate_kfull_args(N, k);
  validate_D(N, k, D);
  Expansion ex = expand(obs, N, k);
  fill_truncated(ex.ledger, ex.tuples, ex.terms, D);
  return ex.ledger;
}

DRule parse_d_rule(const std::string& text) {
  if (text == "max") return DRule::max;
  if (text == "sqrt_max") return DRule::sqrt_max;
  if (text == "powers_of_two") return DRule::powers_of_two;
  if (text == "fixed") return DRule::fixed;
  throw DomainError("unknown D rule '" + text + "' (expected max, sqrt_max, powers_of_two, fixed)");
}

std::string to_string(DRule rule) {
  switch (rule) {
    case DRule::max: return "max";
    case DRule::sqrt_max: return "sqrt_max";
    case DRule::powers_of_two: return "powers_of_two";
    case DRule::fixed: return "fixed";
  }
  return "?";
}

std::vector<DecompositionLedger> error_exponent_scan(const Observable& obs, unsigned k,
                                                     std::span<const u64> N_list, DRule rule,
                                                     std::span<const u64> fixed_D) {
  if (N_list.empty()) throw DomainError("error_exponent_scan: N list is empty");
  std::vector<DecompositionLedger> rows;
  for (u64 N : N_list) {
    detail::validate_kfull_args(N, k);
    const std::vector<u64> top = max_admissible_D(N, k);
    std::vector<std::vector<u64>> Ds;
    switch (rule) {
      case DRule::max:
        Ds.push_back(top);
        break;
      case DRule::sqrt_max: {
        std::vector<u64> d(top.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
          d[i] = std::max<u64>(1, static_cast<u64>(integer_kth_root(top[i], 2)));
        }
        Ds.push_back(d);
        break;
      }
      case DRule::powers_of_two: {
        const u64 widest = *std::max_element(top.begin(), top.end());
        for (u64 p = 2; p < widest; p *= 2) {
          std::vector<u64> d(top.size());
          for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::min(p, top[i]);
          Ds.push_back(d);
        }
        Ds.push_back(top);
        break;
      }
      case DRule::fixed:
        Ds.emplace_back(fixed_D.begin(), fixed_D.end());
        break;
    }
    for (const auto& d : Ds) validate_D(N, k, d);
    const Expansion ex = expand(obs, N, k);
    for (const auto& d : Ds) {
      DecompositionLedger L = ex.ledger;
      fill_truncated(L, ex.tuples, ex.terms, d);
      rows.push_back(std::move(L));
    }
  }
  return rows;
}

}  // namespace kfa
