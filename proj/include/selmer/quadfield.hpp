#pragma once

// Quadratic fields K = Q(sqrt D): elements, class groups by binary quadratic
// forms, fundamental units, local square classes of K (x) Q_v and K(S,2).

#include <cstdint>
#include <map>
#include <vector>

#include "selmer/arith.hpp"
#include "selmer/f2.hpp"

namespace selmer {

/// s + t sqrt(D).
struct QElt {
  Rational s, t;
  friend bool operator==(const QElt&, const QElt&) = default;
};

class QuadField {
 public:
  /// D squarefree, D != 0, 1.
  explicit QuadField(Integer D);

  const Integer& D() const { return D_; }
  /// Fundamental discriminant: D or 4D.
  Integer discriminant() const { return disc_; }
  bool is_real() const { return D_ > 0; }
  /// +1 split, 0 ramified, -1 inert.
  int splitting(std::uint64_t p) const;

  QElt mul(const QElt& x, const QElt& y) const { return {x.s * y.s + Rational(D_) * x.t * y.t, x.s * y.t + x.t * y.s}; }
  QElt conj(const QElt& x) const { return {x.s, -x.t}; }
  Rational norm(const QElt& x) const { return x.s * x.s - Rational(D_) * x.t * x.t; }
  QElt inv(const QElt& x) const;
  bool is_square(const QElt& x) const;
  std::string str(const QElt& x) const;

  /// Dimension of (K (x) Q_v)^x / squares.
  std::size_t local_dim(Place v) const;
  /// F2 coordinates of x in (K (x) Q_v)^x / squares (x != 0).
  F2Vector local_coords(const QElt& x, Place v) const;

  /// Generator of the unit group modulo torsion (D > 0).
  QElt fundamental_unit() const;
  /// Generator of the torsion units modulo squares: i for D = -1, otherwise -1.
  QElt torsion_unit() const;

 private:
  struct TwoAdic {
    int f = 1;              // residue degree at 2
    QElt pi;                // uniformizer
    std::vector<QElt> unit_basis;
    std::map<std::pair<int, int>, unsigned> unit_table;  // unit mod 8 (omega basis) -> class bits
  };
  void init_two_adic();
  std::pair<Integer, Integer> omega_coords_mod(const QElt& x, std::uint64_t m) const;

  Integer D_;
  Integer disc_;
  TwoAdic two_;
};

/// Binary quadratic form a x^2 + b x y + c y^2.
struct Form {
  Integer a, b, c;
  Integer discriminant() const { return b * b - 4 * a * c; }
  friend bool operator==(const Form&, const Form&) = default;
  friend bool operator<(const Form& x, const Form& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};

/// Wide class group of the maximal order of Q(sqrt D), from reduced forms of the
/// fundamental discriminant.
class ClassGroup {
 public:
  explicit ClassGroup(const QuadField& K);

  std::size_t order() const { return classes_.size(); }
  const std::vector<Form>& representatives() const { return classes_; }
  /// Index of the class of a primitive form of the right discriminant.
  std::size_t class_of(const Form& f) const;
  std::size_t compose(std::size_t i, std::size_t j) const;
  std::size_t identity() const { return class_of(principal_); }
  /// Class of a prime ideal above the split or ramified prime p.
  std::size_t prime_class(std::uint64_t p) const;
  /// Cokernel of squaring modulo the subgroup generated by `extra`: dim (G / (G^2 <extra>)).
  std::size_t two_rank_mod(const std::vector<std::size_t>& extra) const;

 private:
  Form canonical(const Form& f) const;
  Integer disc_;
  Form principal_;
  std::vector<Form> classes_;
  std::map<Form, std::size_t> index_;
};

Form compose_forms(const Form& f, const Form& g);
/// Reduced representative (definite forms) or a reduced form in the same cycle (indefinite forms).
Form reduce_form(const Form& f);
/// Number of proper equivalence classes of primitive forms (positive definite ones for negative discriminants).
std::size_t narrow_form_class_number(const Integer& disc);

/// Basis of K(S,2) = {x in K^x / squares : v_P(x) even for P outside S}, for S given by its
/// finite rational primes (2 must be included by the caller).
std::vector<QElt> ks2_basis(const QuadField& K, const std::vector<std::uint64_t>& S_fin);
/// (r1 + r2) + #{primes of K above S_fin} + dim Cl_S[2].
std::size_t expected_ks2_dim(const QuadField& K, const std::vector<std::uint64_t>& S_fin);

}  // namespace selmer
