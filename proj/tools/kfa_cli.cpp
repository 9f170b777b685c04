// Command-line front end. Results go to stdout, diagnostics to stderr.
// Exit codes: 0 success, 2 usage error, 1 computation error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kfa/cli.hpp"

namespace {

using kfa::RunConfig;

struct Raw {
  std::vector<std::string> N;
  std::vector<std::string> D;
  std::vector<std::string> m;
  std::string prime_limit;
};

void add_common(CLI::App* sub, RunConfig& c, Raw& raw, bool multi_N = false) {
  if (multi_N) {
    sub->add_option("--N", raw.N, "upper limit(s), e.g. 1e6 10^8")->required();
  } else {
    sub->add_option("--N", raw.N, "upper limit, e.g. 1e12")->required()->expected(1);
  }
  sub->add_option("--k", c.k, "k >= 2")->capture_default_str();
}

void add_system(CLI::App* sub, RunConfig& c) {
  sub->add_option("--system", c.system, "circle | cyclic | torus | skew")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "p/q, golden, sqrt2m1, sqrt3m1 or a decimal; one per torus axis")
      ->capture_default_str();
  sub->add_option("--q", c.q, "cyclic system size")->capture_default_str();
  sub->add_option("--freq", c.freq, "trig test-function frequencies");
  sub->add_option("--values", c.values, "cyclic test-function values, one per point");
  sub->add_option("--x", c.x, "starting point coordinates");
}

void add_observable(CLI::App* sub, RunConfig& c) {
  sub->add_option("--observable", c.observable, "one | liouville | br | ek | loyd")
      ->capture_default_str();
  sub->add_option("--window", c.window, "tent | bump")->capture_default_str();
  add_system(sub, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-full number experiments"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  Raw raw;
  app.add_option("--output", c.output, "json | csv")->capture_default_str();
  app.add_option("--threads", c.threads, "OpenMP threads (0: runtime default)");

  auto* count = app.add_subcommand("count", "Q_k(N) against the asymptotic formulas");
  add_common(count, c, raw);

  auto* en = app.add_subcommand("enum", "stream k-full n <= N with representation and Omega");
  add_common(en, c, raw);
  en->add_option("--order", c.order, "generator | value")->capture_default_str();
  en->add_option("--dump", c.dump, "also write a binary dump to this file");

  auto* cons = app.add_subcommand("constants", "c_k by Euler product and multi-sum; A, B");
  cons->add_option("--k", c.k, "k >= 2")->capture_default_str();
  cons->add_option("--prime-limit", raw.prime_limit, "Euler product prime bound");
  cons->add_option("--D", raw.D, "multi-sum bounds D_1..D_{k-1}");

  auto* br = app.add_subcommand("br", "mean of f(T^Omega(n) x) over k-full n <= N");
  add_common(br, c, raw);
  add_system(br, c);

  auto* ek = app.add_subcommand("ek", "Erdos-Kac histogram and KS distance");
  add_common(ek, c, raw);
  ek->add_option("--domain", c.domain, "kfull | all_n")->capture_default_str();

  auto* loyd = app.add_subcommand("loyd", "windowed Erdos-Kac times ergodic average");
  add_common(loyd, c, raw);
  add_system(loyd, c);
  loyd->add_option("--window", c.window, "tent | bump")->capture_default_str();
  loyd->add_option("--domain", c.domain, "kfull | all_n")->capture_default_str();

  auto* weyl = app.add_subcommand("weyl", "Weyl sums of Omega(n) alpha over k-full n");
  add_common(weyl, c, raw);
  weyl->add_option("--alpha", c.alpha, "rotation number")->expected(1)->capture_default_str();
  weyl->add_option("--h", c.h, "frequency, nonzero")->capture_default_str();
  weyl->add_option("--H", c.H, "scan h = 1..H and report the discrepancy");

  auto* inv = app.add_subcommand("invariance", "a(n^k m) against a(n^k) for each m");
  add_common(inv, c, raw);
  add_observable(inv, c);
  inv->add_option("--m", raw.m, "multipliers");
  inv->add_option("--tol", c.tolerance, "deviation tolerance")->capture_default_str();

  auto* dec = app.add_subcommand("decompose", "tuple rewriting ledger of the k-full average");
  add_common(dec, c, raw, true);
  add_observable(dec, c);
  dec->add_option("--D", raw.D, "fixed truncation bounds D_1..D_{k-1}");
  dec->add_option("--rule", c.rule, "max | sqrt_max | powers_of_two")->capture_default_str();
  dec->add_flag("--exact", c.exact, "check the untruncated identity instead");

  auto* base = app.add_subcommand("baseline", "Liouville mean, squarefree density and averages");
  base->add_option("--N", raw.N, "upper limit")->required()->expected(1);
  add_system(base, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    c.command = kfa::parse_command(name);
    if (!raw.N.empty()) {
      c.N.clear();
      for (const auto& s : raw.N) c.N.push_back(kfa::parse_count(s));
    }
    if (!raw.D.empty()) {
      c.D.clear();
      for (const auto& s : raw.D) c.D.push_back(kfa::parse_count(s));
    }
    if (!raw.m.empty()) {
      c.m.clear();
      for (const auto& s : raw.m) c.m.push_back(kfa::parse_count(s));
    }
    if (!raw.prime_limit.empty()) c.prime_limit = kfa::parse_count(raw.prime_limit);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  return kfa::run_reporting(c, std::cout, std::cerr);
}
