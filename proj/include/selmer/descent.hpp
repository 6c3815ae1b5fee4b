#pragma once

// 2-Selmer groups of quadratic twists: complete 2-descent over Q(S,2)^2,
// descent over Q x Q(sqrt D), ingestion for irreducible 2-division cubics,
// and the strict/relaxed/twisted variants at an auxiliary prime q.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "selmer/arith.hpp"
#include "selmer/curves.hpp"
#include "selmer/datastore.hpp"
#include "selmer/f2.hpp"
#include "selmer/local.hpp"
#include "selmer/quadfield.hpp"

namespace selmer {

/// Q(S,2) for S containing infinity and 2: basis -1 followed by the finite primes of S.
struct QS2Group {
  std::vector<Place> S;
  std::vector<Integer> basis;
  std::size_t dim() const { return basis.size(); }
  /// Exponent vector of a rational whose support lies in S.
  F2Vector coords(const Rational& r) const;
  Integer element(const F2Vector& c) const;
};
QS2Group qs2_basis(const std::vector<Place>& S);

class SelmerVariant {
 public:
  enum class Mode { classical, strict, relaxed, twisted };
  static SelmerVariant classical() { return {}; }
  static SelmerVariant strict(std::uint64_t q);
  static SelmerVariant relaxed(std::uint64_t q);
  static SelmerVariant twisted(std::uint64_t q, LocalCharKind psi);
  /// "classical", "strict:q", "relaxed:q", "twisted:q:kind" (kind one of trivial, unramified, q, uq).
  static SelmerVariant parse(const std::string& text);

  Mode mode() const { return mode_; }
  std::uint64_t q() const { return q_; }
  LocalCharKind psi() const { return psi_; }
  std::string str() const;

 private:
  Mode mode_ = Mode::classical;
  std::uint64_t q_ = 0;
  LocalCharKind psi_ = LocalCharKind::trivial;
};

enum class Representation { full_pairs, etale, opaque };
enum class Provenance { internal, ingested };
std::string to_string(Representation r);
std::string to_string(Provenance p);

struct SelmerBasis {
  explicit SelmerBasis(CurveQ E) : curve(std::move(E)) {}

  CurveQ curve;
  Integer twist = 1;
  SelmerVariant variant;
  std::vector<Place> S;
  Representation representation = Representation::opaque;
  Provenance provenance = Provenance::internal;
  std::string source;
  std::size_t rank = 0;

  /// Ambient generators: Q(S,2) (full_pairs; an element is (d1 | d2) in coordinates of this basis twice)
  /// or K(S,2) (etale).
  QS2Group rational;
  std::vector<QElt> field_gens;
  std::optional<Integer> field_D;
  F2Subspace elements;
  /// Kummer map of the twisted model the coordinates refer to (explicit representations).
  std::optional<KummerMap> kummer;

  std::size_t ambient_dim() const;
  /// (d1, d2) for an element of a full_pairs group.
  std::pair<Integer, Integer> pair(const F2Vector& element) const;
  /// The element of K^x/squares for an etale group.
  QElt field_element(const F2Vector& element) const;
  /// Coordinates of an element in the local square-class group used by the Kummer map at v.
  F2Vector local_coords(const F2Vector& element, Place v) const;
  /// Every element as a sorted list of squarefree pairs (full_pairs only), for comparing groups
  /// computed over different ambients.
  std::vector<std::pair<Integer, Integer>> canonical_pairs() const;
};

struct DescentOptions {
  std::uint64_t seed = 1;
  /// Largest ambient dimension accepted.
  std::size_t candidate_cap = 40;
  /// Extra good primes at which the local conditions are re-verified.
  int spot_checks = 3;
};

SelmerBasis complete_two_descent(const CurveQ& E, const Integer& d, const SelmerVariant& variant,
                                 const DescentOptions& opt = {});
SelmerBasis quadratic_field_descent(const CurveQ& E, const Integer& d, const SelmerVariant& variant,
                                    const DescentOptions& opt = {});

enum class Backend { automatic, internal_only, ingested };
Backend parse_backend(const std::string& text);
std::string to_string(Backend b);

/// Dispatch on the 2-torsion degree of E^d.
SelmerBasis selmer_group(const CurveQ& E, const Integer& d, Backend backend = Backend::automatic,
                   const Datastore* store = nullptr, const SelmerVariant& variant = SelmerVariant::classical(),
                   const DescentOptions& opt = {});

/// Local classes at q of an explicit element: 4 bits (two square classes at q).
F2Vector res_q(const SelmerBasis& sel, const F2Vector& element, std::uint64_t q);
std::pair<SquareClass, SquareClass> res_q_classes(const SelmerBasis& sel, const F2Vector& element, std::uint64_t q);
/// res_q of the whole group.
F2Subspace res_q(const SelmerBasis& sel, std::uint64_t q);

struct PtdReport {
  std::uint64_t q = 0;
  std::size_t strict = 0, classical = 0, relaxed = 0;
  std::size_t res_classical_dim = 0, res_relaxed_dim = 0;
  bool res_relaxed_isotropic = false;
  bool ok = false;
};
PtdReport verify_ptd(const CurveQ& E, const Integer& d, std::uint64_t q, const DescentOptions& opt = {});

struct ParityReport {
  Integer d;
  std::size_t rank_E = 0, rank_twist = 0;
  int sum_h = 0;
  std::vector<std::pair<Place, int>> h_values;
  bool ok = false;
};
/// d must be trivial at every place of bad reduction, at 2 and at infinity.
ParityReport kramer_parity_check(const CurveQ& E, const Integer& d, const DescentOptions& opt = {},
                                 const Datastore* store = nullptr);
/// Whether chi_d is trivial at infinity, 2 and every bad prime of E.
bool is_admissible_twist(const CurveQ& E, const Integer& d);

}  // namespace selmer
