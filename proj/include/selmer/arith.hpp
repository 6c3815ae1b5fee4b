#pragma once

// Exact integer/rational arithmetic, residue symbols, Hilbert symbols and
// local square classes over Q.

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "selmer/f2.hpp"

namespace selmer {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& n);
std::int64_t to_i64(const Integer& n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Least non-negative residue of n modulo m (m > 0).
std::uint64_t mod(const Integer& n, std::uint64_t m);
/// Residue of a p-integral rational modulo m (denominator must be coprime to m).
std::uint64_t mod(const Rational& r, std::uint64_t m);
Integer ipow(const Integer& base, unsigned exp);

/// Deterministic primality for 64-bit inputs.
bool is_prime(std::uint64_t n);
bool is_prime(const Integer& n);
std::uint64_t next_prime(std::uint64_t n);
/// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<Integer, int>> factor(const Integer& n);
std::vector<std::uint64_t> prime_divisors(const Integer& n);
bool is_squarefree(const Integer& n);
/// Squarefree part (sign kept): n = squarefree_part(n) * m^2.
Integer squarefree_part(const Integer& n);
Integer squarefree_part(const Rational& r);
bool is_rational_square(const Rational& r);
/// Exact square root of a perfect square rational; throws otherwise.
Rational rational_sqrt(const Rational& r);

/// p-adic valuation; the valuation of 0 is reported as a large sentinel.
int valuation(const Integer& n, std::uint64_t p);
int valuation(const Rational& r, std::uint64_t p);
constexpr int kInfiniteValuation = 1 << 28;

/// Legendre symbol (a|p) for an odd prime p.
int legendre(const Integer& a, std::uint64_t p);
int legendre(std::int64_t a, std::uint64_t p);
std::uint64_t least_nonresidue(std::uint64_t p);
/// Some x with x^2 = a mod p (a a square mod the odd prime p).
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p);
/// x with x^2 = a mod p^k, for a a p-adic unit square (p odd, or p = 2 with a = 1 mod 8).
Integer padic_sqrt(const Integer& a, std::uint64_t p, int k);

/// A place of Q: the real place or a finite prime.
class Place {
 public:
  static Place infinity() { return Place(0); }
  static Place prime(std::uint64_t p);
  bool is_infinite() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }
  /// The prime; 0 at the real place.
  std::uint64_t p() const { return p_; }
  std::string str() const;
  friend auto operator<=>(const Place&, const Place&) = default;

 private:
  explicit Place(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// Canonical representative of Q_v^x / (Q_v^x)^2.
struct SquareClass {
  Place place;
  std::int64_t rep;
  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

/// Dimension of Q_v^x/(Q_v^x)^2 over F2: 1, 2 (odd p) or 3 (p = 2).
std::size_t square_class_dim(Place v);
/// F2 coordinates: at infinity [sign]; at odd p [valuation, unit nonresidue];
/// at 2 [valuation, a, b] for unit part (-1)^a 5^b mod 8.
F2Vector square_class_coords(const Rational& r, Place v);
SquareClass square_class_from_coords(const F2Vector& c, Place v);
SquareClass square_class(const Rational& r, Place v);
bool is_square_in_Qv(const Rational& r, Place v);
int hilbert_symbol(const Rational& a, const Rational& b, Place v);

}  // namespace selmer
