#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kfa/numeric.hpp"

namespace kfa {

/// Reduce to [0, 1). x - floor(x), with 1.0 clamped to 0.0.
double mod1(double x) noexcept;

/// Circular distance on R/Z.
double circle_distance(double a, double b) noexcept;

/// frac(n * v) for a double v, exact up to one final rounding (v is a dyadic
/// rational, so the product is reduced in integer arithmetic).
double frac_times(u128 n, double v) noexcept;
double frac_times(i64 n, double v) noexcept;

/// A rotation number.
///
/// Either an exact rational p/q (arithmetic done modulo q), or a double tagged
/// as a named irrational. A double is a dyadic rational A / 2^e, so
/// frac(n * alpha) is computed exactly in integers; only the final division
/// rounds. The irrational tag records intent: it drives which theorems are
/// expected to hold, not how the arithmetic is done.
class Alpha {
 public:
  static Alpha rational(i64 p, u64 q);
  /// (sqrt 5 - 1) / 2
  static Alpha golden();
  /// sqrt 2 - 1
  static Alpha sqrt2_minus_1();
  /// sqrt 3 - 1
  static Alpha sqrt3_minus_1();
  /// A raw decimal; neither known rational nor known irrational.
  static Alpha decimal(double value);
  /// "p/q", "golden", "sqrt2m1", "sqrt3m1" or a decimal literal.
  static Alpha parse(const std::string& text);

  double value() const noexcept { return value_; }
  bool is_irrational() const noexcept { return irrational_; }
  bool is_rational() const noexcept { return denominator_ != 0; }
  /// Exact p/q when rational.
  std::optional<std::pair<u64, u64>> fraction() const;
  const std::string& tag() const noexcept { return tag_; }

  /// frac(n * alpha), exact up to one final rounding.
  double frac_multiple(u128 n) const noexcept;

 private:
  Alpha() = default;

  double value_ = 0.0;   // in [0, 1)
  u64 numerator_ = 0;    // rational: p mod q
  u64 denominator_ = 0;  // 0 unless rational
  bool irrational_ = false;
  std::string tag_;
};

struct CircleRotation {
  Alpha alpha;
};
struct CyclicRotation {
  u64 q = 2;
};
struct TorusRotation {
  std::vector<Alpha> alphas;
};
/// (x, y) -> (x + alpha, y + x) on the 2-torus.
struct SkewProduct {
  Alpha alpha;
};

using DynSystem = std::variant<CircleRotation, CyclicRotation, TorusRotation, SkewProduct>;

/// circle: double; cyclic: u64 in [0, q); torus: coordinates; skew: (x, y).
using Point = std::variant<double, u64, std::vector<double>, std::array<double, 2>>;

/// x -> e^(2 pi i <freq, x>) on the circle, torus, or skew-product torus.
struct Trig {
  std::vector<i64> freq;
};
/// Value per point of a cyclic system.
struct PointValues {
  std::vector<std::complex<double>> values;
};
using TestFunction = std::variant<Trig, PointValues>;

DynSystem circle_rotation(Alpha alpha);
DynSystem cyclic_rotation(u64 q);
DynSystem torus_rotation(std::vector<Alpha> alphas);
DynSystem skew_product(Alpha alpha);

/// Constructor-level flag; no numerical detection is attempted.
bool is_totally_uniquely_ergodic(const DynSystem& system);
std::string describe(const DynSystem& system);

/// Throws DomainError if the point does not belong to the system's space.
void check_point(const DynSystem& system, const Point& x);
void check_compatible(const DynSystem& system, const TestFunction& f);

/// T x.
Point step(const DynSystem& system, const Point& x);
/// T^j x in closed form, O(1) in j.
Point iterate(const DynSystem& system, u128 j, const Point& x);

std::complex<double> evaluate(const TestFunction& f, const Point& x);

/// Exact integral against the invariant measure (Lebesgue / uniform).
std::complex<double> invariant_integral(const DynSystem& system, const TestFunction& f);

/// (1/J) sum_{j=1}^{J} f(T^j x).
std::complex<double> birkhoff_average(const DynSystem& system, const TestFunction& f,
                                      const Point& x, u64 J);

/// Geometric-sum bound for a circle rotation and trig(h), h alpha not integral:
/// |birkhoff_average| <= 2 / (J |1 - e(h alpha)|).
double rotation_birkhoff_bound(const Alpha& alpha, i64 h, u64 J);

/// Default starting point (all coordinates zero).
Point origin(const DynSystem& system);

}  // namespace kfa
