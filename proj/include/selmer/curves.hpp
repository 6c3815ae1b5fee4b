#pragma once

// Elliptic curves over Q in long Weierstrass form, twists, 2-division cubics
// and the 2-torsion field M = Q(E[2]).

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "selmer/arith.hpp"
#include "selmer/poly_mod.hpp"

namespace selmer {

/// Monic integral cubic x^3 + a x^2 + b x + c.
struct Cubic {
  Integer a, b, c;

  Integer eval(const Integer& x) const { return ((x + a) * x + b) * x + c; }
  Integer discriminant() const;
  /// d^3 f(x/d): the cubic of the twist by d, with roots d * e_i.
  Cubic twist(const Integer& d) const;
  /// Integer roots (all rational roots of a monic integral cubic), ascending.
  std::vector<Integer> integer_roots() const;
  PolyP mod(std::uint64_t p) const;
  std::string str() const;
  friend bool operator==(const Cubic&, const Cubic&) = default;
};

class CurveQ {
 public:
  CurveQ(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6, std::string label = "");
  /// y^2 = x^3 + a4 x + a6.
  static CurveQ short_model(Rational a4, Rational a6, std::string label = "");
  /// y^2 = f(x).
  static CurveQ from_cubic(const Cubic& f, std::string label = "");

  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }
  const std::array<Rational, 5>& coefficients() const { return a_; }

  Rational b2() const;
  Rational b4() const;
  Rational b6() const;
  Rational b8() const;
  Rational c4() const;
  Rational c6() const;
  Rational discriminant() const;

  const std::string& label() const { return label_; }
  CurveQ with_label(std::string label) const;
  /// "[a1,a2,a3,a4,a6]".
  std::string str() const;
  /// Label if present, otherwise the coefficient list.
  std::string name() const { return label_.empty() ? str() : label_; }

  friend bool operator==(const CurveQ& x, const CurveQ& y) { return x.a_ == y.a_; }

 private:
  std::array<Rational, 5> a_;
  std::string label_;
};

Rational discriminant(const CurveQ& E);
/// E^d; for short models y^2 = x^3 + a x + b this is y^2 = x^3 + a d^2 x + b d^3.
CurveQ quadratic_twist(const CurveQ& E, const Integer& d);
/// Monic integral cubic f with E isomorphic to y^2 = f(x) (x-coordinates rescaled
/// by the least square factor that clears denominators).
Cubic two_division_cubic(const CurveQ& E);

enum class CubicSplitting { three_linear, linear_quadratic, irreducible };
std::string to_string(CubicSplitting s);

struct TwoTorsionFieldInfo {
  int degree = 0;
  Cubic cubic;
  CubicSplitting factorization = CubicSplitting::irreducible;
  /// Squarefree representative of disc(cubic) modulo squares.
  Integer disc_square_class;
  /// Rational roots of `cubic`, ascending.
  std::vector<Integer> rational_roots;
};

TwoTorsionFieldInfo classify_two_torsion_field(const CurveQ& E);
bool same_two_torsion_field(const CurveQ& E, const CurveQ& A);

/// Valuation at p of the discriminant of a p-minimal model.
int minimal_discriminant_valuation(const CurveQ& E, std::uint64_t p);
bool has_good_reduction(const CurveQ& E, std::uint64_t p);
/// Primes of bad reduction, ascending.
std::vector<std::uint64_t> bad_primes(const CurveQ& E);

/// Number of distinct roots of the cubic modulo p.
int root_count_mod(const Cubic& f, std::uint64_t p);
bool is_four_torsion_local(const CurveQ& E, std::uint64_t q);

/// Parses `label : a1 a2 a3 a4 a6`; `line` is used for error reporting.
CurveQ parse_curve_line(const std::string& text, int line = 0);
/// Reads a curve file; blank lines and lines starting with `#` are skipped.
std::vector<CurveQ> parse_curves(std::istream& in);
std::string format_curve_line(const CurveQ& E);

}  // namespace selmer
