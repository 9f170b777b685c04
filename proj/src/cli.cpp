#include "kfa/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "kfa/arith.hpp"
#include "kfa/averages.hpp"
#include "kfa/constants.hpp"
#include "kfa/decomposition.hpp"
#include "kfa/dynamics.hpp"
#include "kfa/error.hpp"
#include "kfa/kfull.hpp"
#include "kfa/parallel.hpp"

namespace kfa {

namespace {

constexpr std::pair<Command, const char*> kCommands[] = {
    {Command::count, "count"},     {Command::enumerate, "enum"},
    {Command::constants, "constants"}, {Command::br, "br"},
    {Command::ek, "ek"},           {Command::loyd, "loyd"},
    {Command::weyl, "weyl"},       {Command::invariance, "invariance"},
    {Command::decompose, "decompose"}, {Command::baseline, "baseline"},
};

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

Command parse_command(const std::string& text) {
  for (const auto& [cmd, name] : kCommands) {
    if (text == name) return cmd;
  }
  throw UsageError("unknown command '" + text + "'");
}

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["N"] = c.N;
  j["k"] = c.k;
  j["alpha"] = c.alpha;
  j["h"] = c.h;
  j["H"] = c.H;
  j["D"] = c.D;
  j["window"] = c.window;
  j["output"] = c.output;
  j["threads"] = c.threads;
  j["system"] = c.system;
  j["q"] = c.q;
  j["freq"] = c.freq;
  j["values"] = c.values;
  j["x"] = c.x;
  j["domain"] = c.domain;
  j["observable"] = c.observable;
  j["m"] = c.m;
  j["rule"] = c.rule;
  j["exact"] = c.exact;
  j["order"] = c.order;
  j["dump"] = c.dump;
  j["prime_limit"] = c.prime_limit;
  j["tolerance"] = c.tolerance;
  return j;
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  c.command = parse_command(j.at("command").get<std::string>());
  j.at("N").get_to(c.N);
  j.at("k").get_to(c.k);
  j.at("alpha").get_to(c.alpha);
  j.at("h").get_to(c.h);
  j.at("H").get_to(c.H);
  j.at("D").get_to(c.D);
  j.at("window").get_to(c.window);
  j.at("output").get_to(c.output);
  j.at("threads").get_to(c.threads);
  j.at("system").get_to(c.system);
  j.at("q").get_to(c.q);
  j.at("freq").get_to(c.freq);
  j.at("values").get_to(c.values);
  j.at("x").get_to(c.x);
  j.at("domain").get_to(c.domain);
  j.at("observable").get_to(c.observable);
  j.at("m").get_to(c.m);
  j.at("rule").get_to(c.rule);
  j.at("exact").get_to(c.exact);
  j.at("order").get_to(c.order);
  j.at("dump").get_to(c.dump);
  j.at("prime_limit").get_to(c.prime_limit);
  j.at("tolerance").get_to(c.tolerance);
  return c;
}

u64 parse_count(const std::string& text) {
  auto bad = [&] { return UsageError("not a nonnegative integer: '" + text + "'"); };
  auto digits = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw bad();
    }
    return s;
  };
  auto times_pow10 = [&](u128 v, long e) {
    for (long i = 0; i < e; ++i) {
      v *= 10;
      if (v > ~u64{0}) throw UsageError("value too large: '" + text + "'");
    }
    return v;
  };
  auto to_u128 = [&](const std::string& s) {
    u128 v = 0;
    for (char ch : s) {
      v = v * 10 + static_cast<unsigned>(ch - '0');
      if (v > ~u64{0}) throw UsageError("value too large: '" + text + "'");
    }
    return v;
  };

  if (text.empty()) throw bad();
  std::string mant = text;
  long exponent = 0;
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    if (text.substr(0, caret) != "10") throw bad();
    exponent = static_cast<long>(to_u128(digits(text.substr(caret + 1))));
    mant = "1";
  } else if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    exponent = static_cast<long>(to_u128(digits(text.substr(e + 1))));
    mant = text.substr(0, e);
  }
  if (exponent > 40) throw UsageError("value too large: '" + text + "'");
  std::string whole = mant, frac;
  if (const auto dot = mant.find('.'); dot != std::string::npos) {
    whole = mant.substr(0, dot);
    frac = mant.substr(dot + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
  }
  if (whole.empty()) whole = "0";
  digits(whole);
  if (!frac.empty()) digits(frac);
  if (static_cast<long>(frac.size()) > exponent) throw bad();
  return static_cast<u64>(times_pow10(to_u128(whole + frac), exponent - static_cast<long>(frac.size())));
}

namespace {

u64 single_N(const RunConfig& c) {
  if (c.N.size() != 1) throw UsageError(to_string(c.command) + " takes exactly one N");
  if (c.N.front() < 1) throw UsageError("N must be >= 1");
  return c.N.front();
}

void require_k(const RunConfig& c) {
  if (c.k < 2) throw UsageError("k must be >= 2");
}

bool csv(const RunConfig& c) {
  if (c.output == "csv") return true;
  if (c.output == "json") return false;
  throw UsageError("output must be json or csv");
}

Domain parse_domain(const std::string& s) {
  if (s == "kfull") return Domain::kfull;
  if (s == "all_n") return Domain::all_n;
  throw UsageError("domain must be kfull or all_n");
}

struct Experiment {
  DynSystem system;
  TestFunction f;
  Point x;
};

Experiment build_experiment(const RunConfig& c) {
  auto alpha_at = [&](std::size_t i) {
    if (c.alpha.empty()) throw UsageError("missing --alpha");
    return Alpha::parse(c.alpha[std::min(i, c.alpha.size() - 1)]);
  };
  auto freqs = [&](std::size_t dim) {
    if (c.freq.empty()) return std::vector<i64>(dim, 1);
    if (c.freq.size() != dim) {
      throw UsageError("--freq needs " + std::to_string(dim) + " entries for " + c.system);
    }
    return c.freq;
  };
  Experiment ex{circle_rotation(Alpha::golden()), Trig{{1}}, 0.0};
  if (c.system == "circle") {
    ex.system = circle_rotation(alpha_at(0));
    ex.f = Trig{freqs(1)};
    ex.x = c.x.empty() ? 0.0 : c.x.at(0);
  } else if (c.system == "cyclic") {
    ex.system = cyclic_rotation(c.q);
    std::vector<std::complex<double>> v(c.q);
    for (u64 i = 0; i < c.q; ++i) {
      v[i] = c.values.empty() ? (i % 2 ? -1.0 : 1.0) : c.values.at(i % c.values.size());
    }
    if (!c.values.empty() && c.values.size() != c.q) {
      throw UsageError("--values needs q = " + std::to_string(c.q) + " entries");
    }
    ex.f = PointValues{v};
    ex.x = c.x.empty() ? u64{0} : static_cast<u64>(c.x.at(0));
  } else if (c.system == "torus") {
    std::vector<Alpha> alphas;
    for (std::size_t i = 0; i < c.alpha.size(); ++i) alphas.push_back(alpha_at(i));
    ex.system = torus_rotation(alphas);
    ex.f = Trig{freqs(alphas.size())};
    ex.x = c.x.empty() ? std::vector<double>(alphas.size(), 0.0) : c.x;
  } else if (c.system == "skew") {
    ex.system = skew_product(alpha_at(0));
    ex.f = Trig{c.freq.empty() ? std::vector<i64>{0, 1} : freqs(2)};
    ex.x = c.x.empty() ? std::array<double, 2>{0.0, 0.0}
                       : std::array<double, 2>{c.x.at(0), c.x.at(1)};
  } else {
    throw UsageError("system must be circle, cyclic, torus or skew");
  }
  check_compatible(ex.system, ex.f);
  check_point(ex.system, ex.x);
  return ex;
}

Observable build_observable(const RunConfig& c, unsigned k) {
  if (c.observable == "one") return constant_observable();
  if (c.observable == "liouville") return liouville_observable();
  const Window w = parse_window(c.window);
  if (c.observable == "ek") return ek_observable(w, k);
  const Experiment ex = build_experiment(c);
  if (c.observable == "br") return br_observable(ex.system, ex.f, ex.x);
  if (c.observable == "loyd") return loyd_observable(w, k, ex.system, ex.f, ex.x);
  throw UsageError("observable must be one, liouville, br, ek or loyd");
}

FactorSieve kfull_sieve(u64 N, unsigned k) {
  detail::validate_kfull_args(N, k);
  return build_sieve(kfull_sieve_limit(N, k));
}

FactorSieve full_sieve(u64 N) { return build_sieve(std::max<u64>(N, 2)); }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void average_csv(std::ostream& out, const std::vector<AverageReport>& rows) {
  out << "value_re,value_im,modulus,n,k,term_count,target_re,target_im,deviation\n";
  for (const auto& r : rows) {
    out << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
        << format_double(std::abs(r.value)) << ',' << r.N << ',' << r.k << ',' << r.term_count;
    if (r.target) {
      out << ',' << format_double(r.target->real()) << ',' << format_double(r.target->imag())
          << ',' << format_double(*r.abs_deviation);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

void run_count(const RunConfig& c, std::ostream& out) {
  require_k(c);
  const AsymptoticReport r = count_vs_asymptotic(single_N(c), c.k);
  if (!csv(c)) return emit(out, to_json(r));
  out << "N,k,Q,ck,main_term,residual,normalized";
  if (r.two_term_main) out << ",two_term_main,two_term_residual,two_term_normalized";
  out << '\n' << r.N << ',' << r.k << ',' << r.Q << ',' << format_double(r.ck) << ','
      << format_double(r.main_term) << ',' << format_double(r.residual) << ','
      << format_double(r.normalized);
  if (r.two_term_main) {
    out << ',' << format_double(*r.two_term_main) << ',' << format_double(*r.two_term_residual)
        << ',' << format_double(*r.two_term_normalized);
  }
  out << '\n';
}

void run_enumerate(const RunConfig& c, std::ostream& out) {
  require_k(c);
  const u64 N = single_N(c);
  const bool as_csv = csv(c);
  if (c.order != "generator" && c.order != "value") {
    throw UsageError("order must be generator or value");
  }
  const FactorSieve sieve = kfull_sieve(N, c.k);

  std::ofstream dump;
  if (!c.dump.empty()) {
    dump.open(c.dump, std::ios::binary);
    if (!dump) throw UsageError("cannot open dump file '" + c.dump + "'");
    write_dump_header(dump, {DumpHeader::kVersion, c.k, N, count_kfull(N, c.k, sieve)});
  }

  bool first = true;
  auto sink = [&](const KFullEntry& e) {
    if (dump.is_open()) write_dump_record(dump, e);
    if (as_csv) {
      out << e.value << ',' << e.rep.m;
      for (u64 p : e.rep.parts) out << ',' << p;
      out << ',' << e.omega << '\n';
    } else {
      Json j;
      j["value"] = e.value;
      j["m"] = e.rep.m;
      j["parts"] = e.rep.parts;
      j["omega"] = e.omega;
      out << (first ? "" : ",\n") << "  " << j.dump();
    }
    first = false;
  };

  if (as_csv) {
    out << "value,m";
    for (unsigned i = 1; i < c.k; ++i) out << ",n" << i;
    out << ",omega\n";
  } else {
    out << "{\"n\":" << N << ",\"k\":" << c.k << ",\"version\":\"" << kVersion
        << "\",\"entries\":[\n";
  }
  if (c.order == "value") {
    for (const auto& e : collect_kfull(N, c.k, sieve, Order::by_value)) sink(e);
  } else {
    enumerate_kfull(N, c.k, sieve, sink);
  }
  if (!as_csv) out << "\n]}\n";
  if (dump.is_open() && !dump) throw std::runtime_error("failed writing dump file");
}

std::vector<u64> default_multisum_D(unsigned k) {
  switch (k) {
    case 2: return {10'000'000};
    case 3: return {4000, 4000};
    case 4: return {300, 300, 300};
    default: return std::vector<u64>(k - 1, 50);
  }
}

void run_constants(const RunConfig& c, std::ostream& out) {
  require_k(c);
  if (c.prime_limit < 2) throw UsageError("prime limit must be >= 2");
  const std::vector<u64> D = c.D.empty() ? default_multisum_D(c.k) : c.D;
  if (D.size() != c.k - 1) throw UsageError("--D needs k-1 values");
  const ConstantEstimate euler = euler_product_ck(c.k, c.prime_limit);
  const ConstantEstimate multi = multisum_ck(c.k, D);
  const double gap = std::abs(euler.value - multi.value);
  const double budget = euler.truncation_bound + multi.truncation_bound;
  const BatemanGrosswald bg = bateman_grosswald_constants();
  if (csv(c)) {
    out << "quantity,k,value,truncation_bound,terms_used\n";
    out << "euler_product," << c.k << ',' << format_double(euler.value) << ','
        << format_double(euler.truncation_bound) << ',' << euler.terms_used << '\n';
    out << "multisum," << c.k << ',' << format_double(multi.value) << ','
        << format_double(multi.truncation_bound) << ',' << multi.terms_used << '\n';
    out << "A,2," << format_double(bg.A) << ",0,0\n";
    out << "B,2," << format_double(bg.B) << ",0,0\n";
    return;
  }
  Json j;
  j["k"] = c.k;
  j["prime_limit"] = c.prime_limit;
  j["D"] = D;
  j["euler_product"] = to_json(euler);
  j["multisum"] = to_json(multi);
  j["difference"] = gap;
  j["combined_bound"] = budget;
  j["agree"] = gap <= budget;
  j["A"] = bg.A;
  j["B"] = bg.B;
  j["version"] = kVersion;
  emit(out, j);
}

void run_br(const RunConfig& c, std::ostream& out) {
  require_k(c);
  const u64 N = single_N(c);
  const Experiment ex = build_experiment(c);
  const AverageReport r = br_average(ex.system, ex.f, ex.x, N, c.k, kfull_sieve(N, c.k));
  if (csv(c)) return average_csv(out, {r});
  Json j = to_json(r);
  j["totally_uniquely_ergodic"] = is_totally_uniquely_ergodic(ex.system);
  emit(out, j);
}

void run_ek(const RunConfig& c, std::ostream& out) {
  const Domain d = parse_domain(c.domain);
  if (d == Domain::kfull) require_k(c);
  const u64 N = single_N(c);
  const FactorSieve sieve = d == Domain::kfull ? kfull_sieve(N, c.k) : full_sieve(N);
  const EKReport r = ek_statistics(N, c.k, d, sieve);
  if (csv(c)) return write_ek_csv(out, r);
  Json j = to_json(r);
  Json bins = Json::array();
  for (const auto& b : r.bins) {
    bins.push_back({{"omega", b.omega}, {"x", b.x}, {"count", b.count}, {"mass", b.mass}});
  }
  j["histogram"] = bins;
  emit(out, j);
}

void run_loyd(const RunConfig& c, std::ostream& out) {
  const Domain d = parse_domain(c.domain);
  if (d == Domain::kfull) require_k(c);
  const u64 N = single_N(c);
  const Experiment ex = build_experiment(c);
  const FactorSieve sieve = d == Domain::kfull ? kfull_sieve(N, c.k) : full_sieve(N);
  const AverageReport r =
      loyd_average(ex.system, ex.f, ex.x, parse_window(c.window), N, c.k, d, sieve);
  if (csv(c)) return average_csv(out, {r});
  Json j = to_json(r);
  j["window"] = c.window;
  j["gaussian_mass"] = gaussian_mass(parse_window(c.window));
  j["domain"] = c.domain;
  emit(out, j);
}

void run_weyl(const RunConfig& c, std::ostream& out) {
  require_k(c);
  const u64 N = single_N(c);
  if (c.alpha.empty()) throw UsageError("missing --alpha");
  const Alpha alpha = Alpha::parse(c.alpha.front());
  const FactorSieve sieve = kfull_sieve(N, c.k);
  if (c.H == 0) {
    if (c.h == 0) throw UsageError("h must be nonzero");
    const AverageReport r = weyl_sum(alpha, c.h, N, c.k, sieve);
    if (csv(c)) return average_csv(out, {r});
    return emit(out, to_json(r));
  }
  std::vector<AverageReport> rows;
  std::vector<double> moduli;
  for (unsigned h = 1; h <= c.H; ++h) {
    rows.push_back(weyl_sum(alpha, h, N, c.k, sieve));
    moduli.push_back(std::abs(rows.back().value));
  }
  if (csv(c)) return average_csv(out, rows);
  Json j;
  Json arr = Json::array();
  for (unsigned h = 1; h <= c.H; ++h) {
    Json row = to_json(rows[h - 1]);
    row["h"] = h;
    arr.push_back(row);
  }
  j["n"] = N;
  j["k"] = c.k;
  j["alpha"] = alpha.tag();
  j["sums"] = arr;
  j["star_discrepancy"] = star_discrepancy(omega_alpha_points(alpha, N, c.k, sieve));
  j["erdos_turan_bound"] = erdos_turan_bound(moduli);
  j["version"] = kVersion;
  emit(out, j);
}

void run_invariance(const RunConfig& c, std::ostream& out) {
  if (c.k < 1) throw UsageError("k must be >= 1");
  const u64 N = single_N(c);
  const Observable obs = build_observable(c, c.k);
  const InvarianceReport r = k_invariance_check(obs, N, c.k, c.m, full_sieve(N), c.tolerance);
  if (!csv(c)) return emit(out, to_json(r));
  out << "m,omega_m,shifted_re,shifted_im,deviation,within_tolerance\n";
  for (const auto& row : r.rows) {
    out << row.m << ',' << row.omega_m << ',' << format_double(row.shifted.real()) << ','
        << format_double(row.shifted.imag()) << ',' << format_double(row.deviation) << ','
        << (row.within_tolerance ? "true" : "false") << '\n';
  }
}

void run_decompose(const RunConfig& c, std::ostream& out) {
  require_k(c);
  if (c.N.empty()) throw UsageError("decompose needs at least one N");
  const Observable obs = build_observable(c, c.k);
  std::vector<DecompositionLedger> rows;
  if (c.exact) {
    for (u64 N : c.N) rows.push_back(exact_decomposition(obs, N, c.k));
  } else {
    const DRule rule = c.D.empty() ? parse_d_rule(c.rule) : DRule::fixed;
    if (rule == DRule::fixed && c.D.size() != c.k - 1) throw UsageError("--D needs k-1 values");
    rows = error_exponent_scan(obs, c.k, c.N, rule, c.D);
  }
  if (csv(c)) return write_ledger_csv(out, rows);
  Json j;
  j["observable"] = obs.description;
  j["exact"] = c.exact;
  Json arr = Json::array();
  for (const auto& L : rows) arr.push_back(to_json(L));
  j["rows"] = arr;
  j["version"] = kVersion;
  emit(out, j);
}

void run_baseline(const RunConfig& c, std::ostream& out) {
  const u64 N = single_N(c);
  const FactorSieve sieve = full_sieve(N);
  const Experiment ex = build_experiment(c);
  const double lm = liouville_mean(sieve, N);
  const double density = squarefree_density(sieve, N);
  const SquarefreeReport sf = squarefree_average(ex.system, ex.f, ex.x, N, sieve);
  const SquarefreeReport sfl = squarefree_average(liouville_observable(), N, sieve);
  const double six_over_pi2 = 6.0 / (std::numbers::pi * std::numbers::pi);
  if (csv(c)) {
    out << "quantity,value_re,value_im\n";
    out << "liouville_mean," << format_double(lm) << ",0\n";
    out << "squarefree_density," << format_double(density) << ",0\n";
    out << "squarefree_liouville_unnormalized," << format_double(sfl.unnormalized.real())
        << ",0\n";
    out << "squarefree_br," << format_double(sf.normalized.value.real()) << ','
        << format_double(sf.normalized.value.imag()) << '\n';
    out << "squarefree_br_unnormalized," << format_double(sf.unnormalized.real()) << ','
        << format_double(sf.unnormalized.imag()) << '\n';
    return;
  }
  Json j;
  j["n"] = N;
  j["liouville_mean"] = lm;
  j["squarefree_density"] = density;
  j["six_over_pi_squared"] = six_over_pi2;
  j["squarefree_liouville_unnormalized"] = sfl.unnormalized.real();
  j["squarefree_br"] = to_json(sf);
  j["version"] = kVersion;
  emit(out, j);
}

}  // namespace

void run(const RunConfig& c, std::ostream& out) {
  if (c.threads < 0) throw UsageError("threads must be >= 0");
  set_threads(c.threads);
  switch (c.command) {
    case Command::count: return run_count(c, out);
    case Command::enumerate: return run_enumerate(c, out);
    case Command::constants: return run_constants(c, out);
    case Command::br: return run_br(c, out);
    case Command::ek: return run_ek(c, out);
    case Command::loyd: return run_loyd(c, out);
    case Command::weyl: return run_weyl(c, out);
    case Command::invariance: return run_invariance(c, out);
    case Command::decompose: return run_decompose(c, out);
    case Command::baseline: return run_baseline(c, out);
  }
}

int run_reporting(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    run(config, out);
    out.flush();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const OverflowError& e) {
    err << "out of range: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace kfa
