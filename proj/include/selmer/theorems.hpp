#pragma once

// Searches for primes and characters that change 2-Selmer ranks of a pair of
// curves in prescribed ways, with every claim re-checked by descent or by a
// local computation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selmer/characters.hpp"
#include "selmer/curves.hpp"
#include "selmer/datastore.hpp"
#include "selmer/descent.hpp"
#include "selmer/errors.hpp"
#include "selmer/local.hpp"
#include "selmer/quadfield.hpp"

namespace selmer {

struct SearchBounds {
  std::uint64_t prime_bound = 100000;
  /// Largest |d| accepted for a single constructed character.
  std::uint64_t twist_bound = 1000000;
  std::uint64_t seed = 1;
  std::size_t candidate_cap = 40;

  DescentOptions descent() const;
};

struct CrucialReport {
  std::uint64_t q = 0;
  std::size_t rank = 0, strict = 0, relaxed = 0;
  std::size_t res_dim = 0;
  /// 1 when res_q(Sel) = 0, 3 otherwise.
  int clause = 0;
  /// Clause (i): the ramified local character whose image equals res_q of the relaxed group.
  std::optional<LocalCharKind> matching;
  int matches = 0;
  bool clause_ii = false;
  bool other_is_strict = false;
  /// Ranks of Sel(E, eta) for eta = ramified_q, ramified_uq.
  std::size_t twisted_rank_q = 0, twisted_rank_uq = 0;
  bool ok = false;
};
/// d is the twist of E whose Selmer groups are compared.
CrucialReport crucial_trichotomy(const CurveQ& E, std::uint64_t q, const DescentOptions& opt = {},
                                 const Integer& d = 1);

/// Whether Q(sqrt D, sqrt c) lies in the compositum of quadratic extensions of Q:
/// N(c) or N(c) D is a rational square.
bool multiquadratic_test(const QElt& c, const Integer& D);

struct RankEntry {
  std::string curve;
  Integer d;
  std::size_t rank = 0;
  Provenance provenance = Provenance::internal;
};

struct Claim {
  std::string text;
  bool verified = false;
};

struct CurveLocalReport {
  std::string curve;
  LocalConditionReport report;
};

struct TwistStep {
  std::string label;
  Integer d;
  std::uint64_t q = 0;
};

struct TwistCertificate {
  std::string case_label;
  QuadChar chi;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> auxiliary;
  std::vector<TwistStep> steps;
  std::vector<CurveLocalReport> local_reports;
  std::vector<RankEntry> ranks;
  std::vector<Claim> claims;
  /// r2(E^chi) - r2(A^chi) - (r2(E) - r2(A)) when both sides are known.
  std::optional<long> gap_increase;
  bool ok() const;
};

/// E with 2-torsion degree 1 or 2, A with degree 3 or 6; both already twisted by d.
TwistCertificate demo_case2(const CurveQ& E, const CurveQ& A, const SearchBounds& b, const Integer& d = 1);
/// E with degree 1 or 2, A with degree 2 and a different 2-torsion field.
TwistCertificate demo_case3(const CurveQ& E, const CurveQ& A, const SearchBounds& b, const Integer& d = 1);
/// Both of degree 3 or 6; ranks come from the datastore.
TwistCertificate demo_case1(const CurveQ& E, const CurveQ& A, const Datastore& store, const SearchBounds& b,
                            const Integer& d = 1);

enum class TheoremCase { case1 = 1, case2 = 2, case3 = 3 };
/// Case routing by 2-torsion degrees; throws RefusedSameTorsionField or Unsupported.
TheoremCase classify_pair(const CurveQ& E, const CurveQ& A);

/// Raised when gap_amplifier cannot finish; carries the certificates found so far.
class PartialChain : public NotFound {
 public:
  PartialChain(const std::string& what, std::vector<TwistCertificate> chain)
      : NotFound(what), chain_(std::move(chain)) {}
  const std::vector<TwistCertificate>& chain() const { return chain_; }

 private:
  std::vector<TwistCertificate> chain_;
};

/// Chains case certificates on successively twisted pairs until the gap has grown by target_gap.
/// Throws PartialChain when a round fails.
std::vector<TwistCertificate> gap_amplifier(const CurveQ& E, const CurveQ& A, int target_gap, const SearchBounds& b,
                                            const Datastore* store = nullptr,
                                            std::optional<TheoremCase> forced = std::nullopt);

/// Primes at which both 2-division cubics are irreducible.
bool in_P0(const CurveQ& E, const CurveQ& A, std::uint64_t q);

struct DeltaKernelReport {
  std::vector<Integer> subgroup;  // <Delta_E, Delta_A> as squarefree representatives
  std::vector<std::pair<Integer, std::uint64_t>> killed;  // class, P0 prime where it is a nonsquare
  std::vector<Integer> not_killed;
  std::vector<std::uint64_t> sample_primes;
  bool subgroup_survives = false;
};
/// For every class of Q(S,2), S = {inf, 2} and the bad primes, outside <Delta_E, Delta_A>: the least P0 prime
/// where it is a nonsquare; and whether the subgroup consists of squares at `samples` P0 primes.
DeltaKernelReport delta_kernel_sampling(const CurveQ& E, const CurveQ& A, std::uint64_t bound, int samples);

}  // namespace selmer
