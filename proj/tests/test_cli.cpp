#include <doctest.h>

#include <sstream>
#include <string>

#include "kfa/cli.hpp"
#include "kfa/kfull.hpp"

using namespace kfa;

namespace {

std::string run_text(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run_reporting(c, out, err);
  REQUIRE_MESSAGE(code == 0, err.str());
  return out.str();
}

int exit_code(const RunConfig& c) {
  std::ostringstream out, err;
  return run_reporting(c, out, err);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("count parsing") {
  CHECK(parse_count("100") == 100);
  CHECK(parse_count("1e12") == 1'000'000'000'000ULL);
  CHECK(parse_count("10^12") == 1'000'000'000'000ULL);
  CHECK(parse_count("2.5e3") == 2500);
  CHECK(parse_count("1.0e2") == 100);
  CHECK(parse_count("0") == 0);
  CHECK(parse_count("18446744073709551615") == ~u64{0});
  CHECK_THROWS_AS(parse_count("18446744073709551616"), UsageError);
  CHECK_THROWS_AS(parse_count("2.55e1"), UsageError);
  CHECK_THROWS_AS(parse_count("-5"), UsageError);
  CHECK_THROWS_AS(parse_count("1e"), UsageError);
  CHECK_THROWS_AS(parse_count("3^4"), UsageError);
  CHECK_THROWS_AS(parse_count(""), UsageError);
  CHECK_THROWS_AS(parse_count("1e40"), UsageError);
}

TEST_CASE("config round trip through JSON") {
  RunConfig c;
  c.command = Command::decompose;
  c.N = {10'000, 1'000'000};
  c.k = 3;
  c.alpha = {"golden", "1/3"};
  c.D = {4, 2};
  c.freq = {1, -2};
  c.values = {0.5, -1.0};
  c.x = {0.25, 0.5};
  c.exact = true;
  c.tolerance = 0.125;
  CHECK(config_from_json(to_json(c)) == c);
  CHECK(config_from_json(Json::parse(to_json(c).dump())) == c);
  CHECK(parse_command("enum") == Command::enumerate);
  CHECK_THROWS_AS(parse_command("sum"), UsageError);
}

TEST_CASE("count and enum output") {
  RunConfig c;
  c.command = Command::count;
  c.N = {100};
  const Json j = Json::parse(run_text(c));
  CHECK(j["Q"] == 14);
  CHECK(j["k"] == 2);

  c.command = Command::enumerate;
  c.output = "csv";
  const std::string text = run_text(c);
  CHECK(text.rfind("value,m,n1,omega\n1,1,1,0\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 15);

  c.output = "json";
  c.order = "value";
  const Json e = Json::parse(run_text(c));
  REQUIRE(e["entries"].size() == 14);
  CHECK(e["entries"][13]["value"] == 100);
  CHECK(e["entries"][1]["value"] == 4);
}

TEST_CASE("weyl and decompose output") {
  RunConfig c;
  c.command = Command::weyl;
  c.N = {1'000'000};
  c.alpha = {"1/2"};
  c.h = 2;
  const Json w = Json::parse(run_text(c));
  CHECK(w["value_re"] == 1.0);
  CHECK(w["modulus"] == 1.0);

  c = RunConfig{};
  c.command = Command::decompose;
  c.N = {10'000};
  c.exact = true;
  const Json d = Json::parse(run_text(c));
  CHECK(d.dump().find("measured_error") != std::string::npos);

  c.exact = false;
  c.output = "csv";
  CHECK(run_text(c).rfind("N,k,D1,lhs,s1,err,bound,ratio\n", 0) == 0);
}

TEST_CASE("exit codes") {
  RunConfig c;
  c.command = Command::count;
  c.k = 1;
  CHECK(exit_code(c) == 2);
  c.k = 2;
  c.N = {0};
  CHECK(exit_code(c) == 2);
  c.N = {parse_count("1e19")};
  CHECK(exit_code(c) == 2);
  c.N = {100, 200};
  CHECK(exit_code(c) == 2);
  c.N = {100};
  c.threads = -1;
  CHECK(exit_code(c) == 2);
  c.threads = 0;
  c.command = Command::weyl;
  c.h = 0;
  CHECK(exit_code(c) == 2);
  c.command = Command::decompose;
  c.N = {1'000'000'000};
  c.k = 3;
  c.D = {10, 10};
  c.rule = "fixed";
  CHECK(exit_code(c) == 2);
  c.D = {10, 7};
  CHECK(exit_code(c) == 0);
  c.command = Command::enumerate;
  c.k = 2;
  c.N = {100};
  c.dump = "/nonexistent-dir/x.bin";
  CHECK(exit_code(c) == 2);
}

TEST_CASE("output does not depend on the thread count") {
  for (Command cmd : {Command::br, Command::ek, Command::loyd, Command::weyl, Command::count,
                      Command::invariance, Command::baseline}) {
    RunConfig c;
    c.command = cmd;
    c.N = {cmd == Command::invariance || cmd == Command::baseline ? 1'000'000ULL
                                                                   : 10'000'000'000ULL};
    c.threads = 1;
    const std::string one = run_text(c);
    c.threads = 4;
    CHECK_MESSAGE(run_text(c) == one, to_string(cmd));
  }
}

}  // TEST_SUITE
