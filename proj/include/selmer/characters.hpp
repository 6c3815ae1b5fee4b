#pragma once

// Quadratic characters of Q as squarefree integers, prime searches by
// splitting conditions, and construction of characters with prescribed
// local components.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "selmer/arith.hpp"
#include "selmer/curves.hpp"
#include "selmer/local.hpp"

namespace selmer {

/// The character of Q(sqrt d); d = 1 is the trivial character.
class QuadChar {
 public:
  QuadChar() = default;
  explicit QuadChar(Integer d);
  const Integer& d() const { return d_; }
  bool is_trivial() const { return d_ == 1; }
  std::string str() const;
  friend bool operator==(const QuadChar&, const QuadChar&) = default;

 private:
  Integer d_ = 1;
};

/// Value of the local component at v on r: the Hilbert symbol (d, r)_v.
int chi_local_value(const QuadChar& chi, Place v, const Rational& r);
/// Whether the component at the finite place v is nontrivial on local units.
bool is_ramified_at(const QuadChar& chi, Place v);

/// One condition on a prime q for find_prime.
class PrimePredicate {
 public:
  /// q = r mod m.
  static PrimePredicate congruence(std::int64_t r, std::uint64_t m);
  /// (a | q) = eps; fails when q divides a.
  static PrimePredicate legendre_is(Integer a, int eps);
  /// Each r is a nonzero square mod q (q-adic units only).
  static PrimePredicate squares(std::vector<Rational> rs);
  /// f has the given factorization type mod q; fails when q divides disc(f).
  static PrimePredicate cubic_type(Cubic f, CubicSplitting type);
  /// E acquires a point of order 4 over Q_q with all of E[4] rational (see is_four_torsion_local).
  static PrimePredicate four_torsion_local(CurveQ E);
  static PrimePredicate custom(std::string name, std::function<bool(std::uint64_t)> test);

  bool operator()(std::uint64_t q) const { return test_(q); }
  const std::string& name() const { return name_; }
  /// The congruence (r, m) when this is a congruence predicate.
  const std::optional<std::pair<std::uint64_t, std::uint64_t>>& modulus() const { return cong_; }

 private:
  std::string name_;
  std::function<bool(std::uint64_t)> test_;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> cong_;
};

/// Least odd prime q <= bound outside `exclude` satisfying every predicate.
/// Throws InvalidInput on inconsistent congruences and NotFound when the range is exhausted.
std::uint64_t find_prime(const std::vector<PrimePredicate>& preds, std::uint64_t bound,
                         const std::vector<std::uint64_t>& exclude = {}, std::uint64_t start = 3);
/// Combined congruence q = r mod m of all congruence predicates ({0, 1} when there are none).
std::pair<std::uint64_t, std::uint64_t> combine_congruences(const std::vector<PrimePredicate>& preds);

struct LocalPrescription {
  enum class Requirement { trivial, unramified, ramified, ramified_class, unramified_nontrivial };
  Place place = Place::infinity();
  Requirement requirement = Requirement::trivial;
  /// For ramified_class: ramified_q or ramified_uq.
  LocalCharKind target = LocalCharKind::ramified_q;

  bool satisfied_by(const Integer& d) const;
  std::string str() const;
};

using RelaxSet = std::function<bool(std::uint64_t)>;

struct ConstructedCharacter {
  QuadChar chi;
  std::uint64_t ell = 0;
  std::vector<std::uint64_t> auxiliary;
  /// Set when ell is prescribed unramified and nontrivial.
  bool extension = false;
};

/// Character trivial on S, with the prescribed behaviour at the designated prime ell,
/// unramified outside S, ell and auxiliary primes from relax_set (at most one, <= bound).
/// Among admissible d, the least |d| wins, positive first. Throws NotRepresentable.
ConstructedCharacter construct_global_character(const std::vector<Place>& S,
                                                const std::vector<LocalPrescription>& prescriptions,
                                                const RelaxSet& relax_set, std::uint64_t bound);

}  // namespace selmer
