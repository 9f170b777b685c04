#include "kfa/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "kfa/error.hpp"

namespace kfa {

double mod1(double x) noexcept {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_distance(double a, double b) noexcept {
  const double d = mod1(a - b);
  return std::min(d, 1.0 - d);
}

double frac_times(u128 n, double v) noexcept {
  v = mod1(v);
  if (v == 0.0 || n == 0) return 0.0;
  // v = m / 2^shift with m odd.
  int exp = 0;
  const double fr = std::frexp(v, &exp);
  u64 m = static_cast<u64>(std::ldexp(fr, 53));
  int shift = 53 - exp;
  while (shift > 0 && (m & 1U) == 0) {
    m >>= 1;
    --shift;
  }
  if (shift <= 0) return 0.0;
  if (shift < 128) {
    // Unsigned products wrap mod 2^128, and 2^shift divides 2^128.
    const u128 mask = (u128{1} << shift) - 1;
    return mod1(std::ldexp(static_cast<double>((n * m) & mask), -shift));
  }
  return mod1(static_cast<double>(
      std::fmod(static_cast<long double>(n) * static_cast<long double>(v), 1.0L)));
}

double frac_times(i64 n, double v) noexcept {
  const u128 mag = n < 0 ? static_cast<u128>(-(n + 1)) + 1 : static_cast<u128>(n);
  const double f = frac_times(mag, v);
  return n < 0 ? mod1(-f) : f;
}

// --- Alpha ------------------------------------------------------------------

Alpha Alpha::rational(i64 p, u64 q) {
  if (q == 0) throw DomainError("Alpha::rational: zero denominator");
  const i64 qs = static_cast<i64>(q);
  i64 r = p % qs;
  if (r < 0) r += qs;
  Alpha a;
  const u64 g = std::gcd(static_cast<u64>(r), q);
  a.numerator_ = static_cast<u64>(r) / (g ? g : 1);
  a.denominator_ = q / (g ? g : 1);
  if (a.numerator_ == 0) a.denominator_ = 1;
  a.value_ = static_cast<double>(a.numerator_) / static_cast<double>(a.denominator_);
  a.tag_ = std::to_string(a.numerator_) + "/" + std::to_string(a.denominator_);
  return a;
}

Alpha Alpha::golden() {
  Alpha a;
  a.value_ = mod1((std::sqrt(5.0) - 1.0) / 2.0);
  a.irrational_ = true;
  a.tag_ = "golden";
  return a;
}

Alpha Alpha::sqrt2_minus_1() {
  Alpha a;
  a.value_ = mod1(std::numbers::sqrt2 - 1.0);
  a.irrational_ = true;
  a.tag_ = "sqrt2m1";
  return a;
}

Alpha Alpha::sqrt3_minus_1() {
  Alpha a;
  a.value_ = mod1(std::numbers::sqrt3 - 1.0);
  a.irrational_ = true;
  a.tag_ = "sqrt3m1";
  return a;
}

Alpha Alpha::decimal(double value) {
  if (!std::isfinite(value)) throw DomainError("Alpha::decimal: value must be finite");
  Alpha a;
  a.value_ = mod1(value);
  std::ostringstream os;
  os.precision(17);
  os << value;
  a.tag_ = os.str();
  return a;
}

Alpha Alpha::parse(const std::string& text) {
  if (text == "golden") return golden();
  if (text == "sqrt2m1") return sqrt2_minus_1();
  if (text == "sqrt3m1") return sqrt3_minus_1();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    i64 p = 0;
    u64 q = 0;
    const char* b = text.data();
    const auto r1 = std::from_chars(b, b + slash, p);
    const auto r2 = std::from_chars(b + slash + 1, b + text.size(), q);
    if (r1.ec != std::errc{} || r1.ptr != b + slash || r2.ec != std::errc{} ||
        r2.ptr != b + text.size()) {
      throw DomainError("Alpha::parse: bad fraction '" + text + "'");
    }
    return rational(p, q);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("Alpha::parse: cannot parse '" + text + "'");
  }
  if (used != text.size()) throw DomainError("Alpha::parse: trailing text in '" + text + "'");
  return decimal(v);
}

std::optional<std::pair<u64, u64>> Alpha::fraction() const {
  if (!is_rational()) return std::nullopt;
  return std::pair{numerator_, denominator_};
}

double Alpha::frac_multiple(u128 n) const noexcept {
  if (is_rational()) {
    const u64 r = static_cast<u64>((n % denominator_) * numerator_ % denominator_);
    return static_cast<double>(r) / static_cast<double>(denominator_);
  }
  return frac_times(n, value_);
}

// --- systems ----------------------------------------------------------------

DynSystem circle_rotation(Alpha alpha) { return CircleRotation{std::move(alpha)}; }

DynSystem cyclic_rotation(u64 q) {
  if (q < 2) throw DomainError("cyclic_rotation: q must be >= 2");
  return CyclicRotation{q};
}

DynSystem torus_rotation(std::vector<Alpha> alphas) {
  if (alphas.empty()) throw DomainError("torus_rotation: need at least one angle");
  return TorusRotation{std::move(alphas)};
}

DynSystem skew_product(Alpha alpha) { return SkewProduct{std::move(alpha)}; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_totally_uniquely_ergodic(const DynSystem& system) {
  return std::visit(
      Overloaded{
          [](const CircleRotation& s) { return s.alpha.is_irrational(); },
          [](const CyclicRotation&) { return false; },
          [](const TorusRotation& s) {
            // Named irrationals come from distinct quadratic fields, so distinct
            // tags are rationally independent together with 1.
            for (std::size_t i = 0; i < s.alphas.size(); ++i) {
              if (!s.alphas[i].is_irrational()) return false;
              for (std::size_t j = 0; j < i; ++j) {
                if (s.alphas[i].tag() == s.alphas[j].tag()) return false;
              }
            }
            return true;
          },
          [](const SkewProduct& s) { return s.alpha.is_irrational(); },
      },
      system);
}

std::string describe(const DynSystem& system) {
  return std::visit(
      Overloaded{
          [](const CircleRotation& s) { return "circle_rotation(" + s.alpha.tag() + ")"; },
          [](const CyclicRotation& s) { return "cyclic_rotation(" + std::to_string(s.q) + ")"; },
          [](const TorusRotation& s) {
            std::string out = "torus_rotation(";
            for (std::size_t i = 0; i < s.alphas.size(); ++i) {
              out += (i ? "," : "") + s.alphas[i].tag();
            }
            return out + ")";
          },
          [](const SkewProduct& s) { return "skew_product(" + s.alpha.tag() + ")"; },
      },
      system);
}

Point origin(const DynSystem& system) {
  return std::visit(Overloaded{
                        [](const CircleRotation&) -> Point { return 0.0; },
                        [](const CyclicRotation&) -> Point { return u64{0}; },
                        [](const TorusRotation& s) -> Point {
                          return std::vector<double>(s.alphas.size(), 0.0);
                        },
                        [](const SkewProduct&) -> Point { return std::array<double, 2>{0.0, 0.0}; },
                    },
                    system);
}

namespace {

bool in_unit(double v) { return v >= 0.0 && v < 1.0; }

}  // namespace

void check_point(const DynSystem& system, const Point& x) {
  const bool ok = std::visit(
      Overloaded{
          [&](const CircleRotation&) {
            return std::holds_alternative<double>(x) && in_unit(std::get<double>(x));
          },
          [&](const CyclicRotation& s) {
            return std::holds_alternative<u64>(x) && std::get<u64>(x) < s.q;
          },
          [&](const TorusRotation& s) {
            if (!std::holds_alternative<std::vector<double>>(x)) return false;
            const auto& v = std::get<std::vector<double>>(x);
            if (v.size() != s.alphas.size()) return false;
            for (double c : v) {
              if (!in_unit(c)) return false;
            }
            return true;
          },
          [&](const SkewProduct&) {
            if (!std::holds_alternative<std::array<double, 2>>(x)) return false;
            const auto& v = std::get<std::array<double, 2>>(x);
            return in_unit(v[0]) && in_unit(v[1]);
          },
      },
      system);
  if (!ok) throw DomainError("point does not belong to " + describe(system));
}

void check_compatible(const DynSystem& system, const TestFunction& f) {
  const bool ok = std::visit(
      Overloaded{
          [&](const CircleRotation&) {
            return std::holds_alternative<Trig>(f) && std::get<Trig>(f).freq.size() == 1;
          },
          [&](const CyclicRotation& s) {
            return std::holds_alternative<PointValues>(f) &&
                   std::get<PointValues>(f).values.size() == s.q;
          },
          [&](const TorusRotation& s) {
            return std::holds_alternative<Trig>(f) &&
                   std::get<Trig>(f).freq.size() == s.alphas.size();
          },
          [&](const SkewProduct&) {
            return std::holds_alternative<Trig>(f) && std::get<Trig>(f).freq.size() == 2;
          },
      },
      system);
  if (!ok) throw DomainError("test function incompatible with " + describe(system));
}

Point step(const DynSystem& system, const Point& x) {
  check_point(system, x);
  return std::visit(
      Overloaded{
          [&](const CircleRotation& s) -> Point {
            return mod1(std::get<double>(x) + s.alpha.value());
          },
          [&](const CyclicRotation& s) -> Point { return (std::get<u64>(x) + 1) % s.q; },
          [&](const TorusRotation& s) -> Point {
            auto v = std::get<std::vector<double>>(x);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod1(v[i] + s.alphas[i].value());
            return v;
          },
          [&](const SkewProduct& s) -> Point {
            const auto& v = std::get<std::array<double, 2>>(x);
            return std::array<double, 2>{mod1(v[0] + s.alpha.value()), mod1(v[1] + v[0])};
          },
      },
      system);
}

Point iterate(const DynSystem& system, u128 j, const Point& x) {
  check_point(system, x);
  return std::visit(
      Overloaded{
          [&](const CircleRotation& s) -> Point {
            return mod1(std::get<double>(x) + s.alpha.frac_multiple(j));
          },
          [&](const CyclicRotation& s) -> Point {
            return static_cast<u64>((std::get<u64>(x) + j % s.q) % s.q);
          },
          [&](const TorusRotation& s) -> Point {
            auto v = std::get<std::vector<double>>(x);
            for (std::size_t i = 0; i < v.size(); ++i) {
              v[i] = mod1(v[i] + s.alphas[i].frac_multiple(j));
            }
            return v;
          },
          [&](const SkewProduct& s) -> Point {
            // T^j(x, y) = (x + j a, y + j x + j(j-1)/2 a)
            const auto& v = std::get<std::array<double, 2>>(x);
            const u128 tri = (j % 2 == 0) ? (j / 2) * (j - (j > 0 ? 1 : 0))
                                          : j * ((j - 1) / 2);
            const double jx = frac_times(j, v[0]);
            return std::array<double, 2>{mod1(v[0] + s.alpha.frac_multiple(j)),
                                         mod1(v[1] + jx + s.alpha.frac_multiple(tri))};
          },
      },
      system);
}

namespace {

std::complex<double> e(double t) {
  const double a = 2.0 * std::numbers::pi * mod1(t);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

std::complex<double> evaluate(const TestFunction& f, const Point& x) {
  return std::visit(
      Overloaded{
          [&](const Trig& t) -> std::complex<double> {
            // Sum of h_i x_i reduced mod 1 term by term.
            double phase = 0.0;
            auto add = [&](i64 h, double c) { phase = mod1(phase + frac_times(h, c)); };
            if (const double* c = std::get_if<double>(&x)) {
              add(t.freq.at(0), *c);
            } else if (const auto* v = std::get_if<std::vector<double>>(&x)) {
              if (v->size() != t.freq.size()) throw DomainError("trig: dimension mismatch");
              for (std::size_t i = 0; i < v->size(); ++i) add(t.freq[i], (*v)[i]);
            } else if (const auto* a = std::get_if<std::array<double, 2>>(&x)) {
              if (t.freq.size() != 2) throw DomainError("trig: dimension mismatch");
              add(t.freq[0], (*a)[0]);
              add(t.freq[1], (*a)[1]);
            } else {
              throw DomainError("trig test function on a cyclic point");
            }
            return e(phase);
          },
          [&](const PointValues& p) -> std::complex<double> {
            const u64* i = std::get_if<u64>(&x);
            if (!i || *i >= p.values.size()) throw DomainError("point_values: bad point");
            return p.values[*i];
          },
      },
      f);
}

std::complex<double> invariant_integral(const DynSystem& system, const TestFunction& f) {
  check_compatible(system, f);
  if (const Trig* t = std::get_if<Trig>(&f)) {
    for (i64 h : t->freq) {
      if (h != 0) return {0.0, 0.0};
    }
    return {1.0, 0.0};
  }
  const auto& values = std::get<PointValues>(f).values;
  ComplexSum sum;
  for (const auto& v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

std::complex<double> birkhoff_average(const DynSystem& system, const TestFunction& f,
                                      const Point& x, u64 J) {
  if (J == 0) throw DomainError("birkhoff_average: J must be >= 1");
  check_compatible(system, f);
  check_point(system, x);
  ComplexSum sum;
  for (u64 j = 1; j <= J; ++j) sum.add(evaluate(f, iterate(system, j, x)));
  return sum.value() / static_cast<double>(J);
}

double rotation_birkhoff_bound(const Alpha& alpha, i64 h, u64 J) {
  const double t = frac_times(h, alpha.value());
  const double gap = std::abs(std::complex<double>(1.0, 0.0) - e(t));
  if (gap == 0.0) throw DomainError("rotation_birkhoff_bound: h * alpha is integral");
  return 2.0 / (static_cast<double>(J) * gap);
}

}  // namespace kfa
