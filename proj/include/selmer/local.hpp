#pragma once

// Local analysis at a place of Q: 2-torsion counts, prime classes, local
// Kummer images by seeded point sampling, h-values and the local pairing.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "selmer/arith.hpp"
#include "selmer/curves.hpp"
#include "selmer/f2.hpp"
#include "selmer/quadfield.hpp"

namespace selmer {

/// Approximations modulo p^k of the roots of f in Z_p (all roots of a monic integral cubic in Q_p are integral).
std::vector<Integer> padic_roots(const Cubic& f, std::uint64_t p, int k);
/// Number of roots of f in Q_v.
int local_root_count(const Cubic& f, Place v);
/// dim E(Q_v)[2].
int local_two_torsion_dim(const CurveQ& E, Place v);

int frobenius_order_on_M(const CurveQ& E, std::uint64_t q);
int prime_class(const CurveQ& E, std::uint64_t q);
/// dim of the image of E^d(Q_v) in H^1(Q_v, E[2]).
int dim_local_kummer(const CurveQ& E, const Integer& d, Place v);

/// Local quadratic character at a place, by kind. At an odd prime q the
/// ramified characters are the two with kernel fields Q_q(sqrt q) and Q_q(sqrt uq).
enum class LocalCharKind { trivial, unramified, ramified_q, ramified_uq, other };
std::string to_string(LocalCharKind k);
/// Local component at v of the character of Q(sqrt d).
LocalCharKind local_character(const Integer& d, Place v);
/// Integer whose square class at the odd prime q gives the character of the given kind.
Integer local_character_rep(LocalCharKind k, std::uint64_t q);

int h_value(const CurveQ& E, Place v, LocalCharKind chi);

struct LocalConditionReport {
  Place place = Place::infinity();
  int dim_beta_trivial = 0;
  int dim_beta_chi = 0;
  int h = 0;
  std::optional<int> prime_class;
};
LocalConditionReport local_condition_report(const CurveQ& E, const Integer& d, Place v);

/// Kummer map for y^2 = f(x) with at least one rational root, in the coordinates used by the descent:
/// full rational 2-torsion -> (x - e1, x - e2) in (Q_v^x/squares)^2;
/// one rational root e, f = (x - e)(x^2 + s x + t) -> x - theta in (K (x) Q_v)^x/squares,
/// theta = (-s + m sqrt D)/2, K = Q(sqrt D).
class KummerMap {
 public:
  static KummerMap full(std::array<Integer, 3> roots);
  static KummerMap quadratic(Integer e, Integer s, Integer m, Integer D);
  /// Splits f according to its rational roots.
  static KummerMap from_cubic(const Cubic& f);

  /// The map for the twist by the integer psi, written in the same coordinates.
  KummerMap twisted(const Integer& psi) const;

  bool is_full() const { return full_; }
  const Cubic& cubic() const { return f_; }
  const std::array<Integer, 3>& roots() const { return roots_; }
  const QuadField& field() const { return *field_; }
  const Integer& m() const { return m_; }
  const Integer& s() const { return s_; }

  std::size_t local_dim(Place v) const;
  /// Coordinates of the point with x-coordinate x (any rational with f(x) != 0 and f(x) a square in Q_v).
  F2Vector point_coords(const Rational& x, Place v) const;
  /// Coordinates of the rational 2-torsion points.
  std::vector<F2Vector> torsion_coords(Place v) const;
  /// dim of E(Q_v)/2E(Q_v).
  int target_dim(Place v) const;
  /// Image of E(Q_v)/2E(Q_v), by sampling; throws PrecisionExhausted if the target dimension is not reached.
  F2Subspace local_image(Place v, std::mt19937_64& rng) const;

 private:
  KummerMap() = default;
  bool full_ = true;
  Cubic f_;
  std::array<Integer, 3> roots_;
  Integer e_, s_, m_;
  std::optional<QuadField> field_;
};

/// Explicit pairing on (Q_q^x/squares)^2: the bit of (x1, y2)_q (x2, y1)_q.
bool pairing_local(const std::pair<SquareClass, SquareClass>& x, const std::pair<SquareClass, SquareClass>& y,
                   std::uint64_t q);
/// Same pairing on 4-bit coordinate vectors at an odd prime q.
bool pairing_local(const F2Vector& x, const F2Vector& y, std::uint64_t q);

struct LocalKummerImage {
  std::uint64_t prime = 0;
  LocalCharKind character = LocalCharKind::trivial;
  F2Subspace image;
};

/// Image of E^psi(Q_q) in H^1(Q_q, E[2]) = (Q_q^x/squares)^2, for q odd, good, with full local 2-torsion.
LocalKummerImage local_kummer_image(const CurveQ& E, std::uint64_t q, LocalCharKind chi, std::mt19937_64& rng);

}  // namespace selmer
