#include "selmer/theorems.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace selmer {

DescentOptions SearchBounds::descent() const {
  DescentOptions o;
  o.seed = seed;
  o.candidate_cap = candidate_cap;
  return o;
}

bool TwistCertificate::ok() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.verified; });
}

namespace {

int degree(const CurveQ& E) { return classify_two_torsion_field(E).degree; }

CurveQ twisted_curve(const CurveQ& E, const Integer& d) { return d == 1 ? E : quadratic_twist(E, d); }

Integer product_class(const Integer& a, const Integer& b) { return squarefree_part(Integer(a * b)); }

std::string twist_name(const CurveQ& E, const Integer& d) {
  return d == 1 ? E.label() : E.label() + "^" + to_string(d);
}

// {inf, 2} and the odd primes dividing the discriminants of the twisted 2-division cubics.
std::vector<Place> pair_places(const CurveQ& E, const CurveQ& A, const Integer& d) {
  std::set<std::uint64_t> primes{2};
  for (const auto* C : {&E, &A}) {
    for (auto p : prime_divisors(two_division_cubic(*C).twist(d).discriminant())) primes.insert(p);
  }
  std::vector<Place> S{Place::infinity()};
  for (auto p : primes) S.push_back(Place::prime(p));
  return S;
}

std::vector<std::uint64_t> finite_primes(const std::vector<Place>& S) {
  std::vector<std::uint64_t> out;
  for (const auto& v : S) {
    if (v.is_finite()) out.push_back(v.p());
  }
  return out;
}

std::vector<Rational> as_rationals(const std::vector<std::uint64_t>& ps) {
  std::vector<Rational> out;
  for (auto p : ps) out.emplace_back(p);
  return out;
}

bool trivial_at(const SelmerBasis& sel, std::uint64_t q) {
  const Place v = Place::prime(q);
  for (const auto& b : sel.elements.basis()) {
    if (!sel.local_coords(b, v).is_zero()) return false;
  }
  return true;
}

void add_claim(TwistCertificate& c, std::string text, bool ok) { c.claims.push_back({std::move(text), ok}); }

void add_local_reports(TwistCertificate& cert, const CurveQ& C, const std::string& name, const Integer& d_chi,
                       const std::vector<Place>& places, int& sum_h, bool& all_zero_off_q, std::uint64_t q) {
  sum_h = 0;
  all_zero_off_q = true;
  for (const auto& v : places) {
    LocalConditionReport r = local_condition_report(C, d_chi, v);
    sum_h += r.h;
    if (r.h != 0 && !(v.is_finite() && v.p() == q)) all_zero_off_q = false;
    cert.local_reports.push_back({name, r});
  }
}

std::vector<Place> with_primes(std::vector<Place> S, const std::vector<std::uint64_t>& extra) {
  for (auto p : extra) S.push_back(Place::prime(p));
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  return S;
}

}  // namespace

// ---------------------------------------------------------------- trichotomy

CrucialReport crucial_trichotomy(const CurveQ& E, std::uint64_t q, const DescentOptions& opt, const Integer& d) {
  const Cubic f = two_division_cubic(E).twist(d);
  if (q == 2 || !is_prime(q)) throw InvalidInput("crucial_trichotomy: " + std::to_string(q) + " is not an odd prime");
  if (f.discriminant() % q == 0) throw InvalidInput("crucial_trichotomy: bad prime " + std::to_string(q));
  if (local_root_count(f, Place::prime(q)) != 3) {
    throw InvalidInput("crucial_trichotomy: E(Q_q)[2] is not full at " + std::to_string(q));
  }
  auto run = [&](const SelmerVariant& v) { return selmer_group(E, d, Backend::internal_only, nullptr, v, opt); };
  CrucialReport r;
  r.q = q;
  const SelmerBasis sel = run(SelmerVariant::classical());
  const SelmerBasis strict = run(SelmerVariant::strict(q));
  const SelmerBasis relaxed = run(SelmerVariant::relaxed(q));
  const SelmerBasis tw_q = run(SelmerVariant::twisted(q, LocalCharKind::ramified_q));
  const SelmerBasis tw_uq = run(SelmerVariant::twisted(q, LocalCharKind::ramified_uq));
  r.rank = sel.rank;
  r.strict = strict.rank;
  r.relaxed = relaxed.rank;
  r.twisted_rank_q = tw_q.rank;
  r.twisted_rank_uq = tw_uq.rank;
  r.res_dim = res_q(sel, q).dim();
  if (r.res_dim == 0) {
    r.clause = 1;
    const F2Subspace target = res_q(relaxed, q);
    std::mt19937_64 rng(opt.seed);
    const Place v = Place::prime(q);
    for (auto k : {LocalCharKind::ramified_q, LocalCharKind::ramified_uq}) {
      const F2Subspace img = sel.kummer->twisted(local_character_rep(k, q)).local_image(v, rng);
      if (img == target) {
        ++r.matches;
        r.matching = k;
      }
    }
    if (r.matches == 1) {
      const bool q_matches = *r.matching == LocalCharKind::ramified_q;
      const SelmerBasis& match = q_matches ? tw_q : tw_uq;
      const SelmerBasis& other = q_matches ? tw_uq : tw_q;
      r.clause_ii = match.elements == relaxed.elements;
      r.other_is_strict = other.elements == strict.elements;
    }
    r.ok = r.matches == 1 && r.clause_ii && r.other_is_strict;
  } else {
    r.clause = 3;
    r.ok = r.twisted_rank_q <= r.rank && r.twisted_rank_uq <= r.rank;
  }
  return r;
}

bool multiquadratic_test(const QElt& c, const Integer& D) {
  if (c.s == 0 && c.t == 0) throw InvalidInput("multiquadratic_test: c = 0");
  const Rational n = c.s * c.s - Rational(D) * c.t * c.t;
  return is_rational_square(n) || is_rational_square(n * Rational(D));
}

// ---------------------------------------------------------------- case 2

TwistCertificate demo_case2(const CurveQ& E, const CurveQ& A, const SearchBounds& b, const Integer& d) {
  const int dE = degree(E), dA = degree(A);
  if (dE > 2 || (dA != 3 && dA != 6)) {
    throw InvalidInput("demo_case2 needs E of 2-torsion degree 1 or 2 and A of degree 3 or 6 (got " + std::to_string(dE) +
                       ", " + std::to_string(dA) + ")");
  }
  const DescentOptions opt = b.descent();
  const CurveQ Ed = twisted_curve(E, d), Ad = twisted_curve(A, d);
  const SelmerBasis sel = selmer_group(E, d, Backend::internal_only, nullptr, SelmerVariant::classical(), opt);
  const std::vector<Place> S = pair_places(E, A, d);
  const std::vector<std::uint64_t> S_fin = finite_primes(S);
  const Cubic fA = two_division_cubic(A).twist(d);

  std::vector<PrimePredicate> preds{
      PrimePredicate::congruence(1, 8),
      PrimePredicate::squares(as_rationals(S_fin)),
      PrimePredicate::custom("Sel2(E) generators square at q", [&](std::uint64_t q) { return trivial_at(sel, q); }),
      PrimePredicate::four_torsion_local(Ed),
      PrimePredicate::cubic_type(fA, CubicSplitting::irreducible),
  };
  std::uint64_t start = 3;
  std::string last_failure;
  while (start <= b.prime_bound) {
    const std::uint64_t q = find_prime(preds, b.prime_bound, S_fin, start);
    start = q + 1;
    ConstructedCharacter cc;
    try {
      cc = construct_global_character(S, {{Place::prime(q), LocalPrescription::Requirement::ramified}}, {}, b.twist_bound);
    } catch (const NotRepresentable& e) {
      last_failure = e.what();
      continue;
    }
    if (boost::multiprecision::abs(cc.chi.d()) > b.twist_bound) continue;
    const Integer d_new = product_class(d, cc.chi.d());
    const SelmerBasis after = selmer_group(E, d_new, Backend::internal_only, nullptr, SelmerVariant::classical(), opt);

    TwistCertificate cert;
    cert.case_label = "case 2";
    cert.chi = cc.chi;
    cert.q = q;
    cert.auxiliary = cc.auxiliary;
    cert.steps.push_back({"case 2", cc.chi.d(), q});
    cert.ranks.push_back({twist_name(E, d), d, sel.rank, Provenance::internal});
    cert.ranks.push_back({twist_name(E, d_new), d_new, after.rank, Provenance::internal});
    const std::vector<Place> places = with_primes(S, {q});
    int hE = 0, hA = 0;
    bool offE = true, offA = true;
    add_local_reports(cert, Ed, twist_name(E, d), cc.chi.d(), places, hE, offE, q);
    add_local_reports(cert, Ad, twist_name(A, d), cc.chi.d(), places, hA, offA, q);
    add_claim(cert, "r2(E^chi) = r2(E) + 2 (" + std::to_string(after.rank) + " = " + std::to_string(sel.rank) + " + 2)",
              after.rank == sel.rank + 2);
    add_claim(cert, "prime_class(E, q) = 2", prime_class(Ed, q) == 2);
    add_claim(cert, "prime_class(A, q) = 0", prime_class(Ad, q) == 0);
    add_claim(cert, "sum of h_E = 2", hE == 2);
    add_claim(cert, "h_A = 0 at every place, so Sel2(A^chi) = Sel2(A)", hA == 0 && offA);
    const KummerMap km_after = KummerMap::from_cubic(two_division_cubic(E).twist(d_new));
    bool witness = false;
    for (const auto& t : km_after.torsion_coords(Place::prime(q))) witness = witness || !t.is_zero();
    add_claim(cert, "a rational 2-torsion image in Sel2(E^chi) restricts nontrivially at q", witness);
    cert.gap_increase = static_cast<long>(after.rank) - static_cast<long>(sel.rank);
    if (cert.ok()) return cert;
    last_failure = "q = " + std::to_string(q) + " failed certification";
  }
  throw NotFound("demo_case2: no certified prime up to " + std::to_string(b.prime_bound) +
                 (last_failure.empty() ? "" : " (last: " + last_failure + ")"));
}

// ---------------------------------------------------------------- case 3

TwistCertificate demo_case3(const CurveQ& E, const CurveQ& A, const SearchBounds& b, const Integer& d) {
  const int dE = degree(E), dA = degree(A);
  if (dE > 2 || dA != 2) {
    throw InvalidInput("demo_case3 needs E of 2-torsion degree 1 or 2 and A of degree 2 (got " + std::to_string(dE) +
                       ", " + std::to_string(dA) + ")");
  }
  if (same_two_torsion_field(E, A)) throw RefusedSameTorsionField("demo_case3: E and A have the same 2-torsion field");
  const DescentOptions opt = b.descent();
  auto sel_of = [&](const CurveQ& C, const Integer& t) {
    return selmer_group(C, t, Backend::internal_only, nullptr, SelmerVariant::classical(), opt);
  };
  const SelmerBasis selE = sel_of(E, d), selA = sel_of(A, d);
  const CurveQ Ed = twisted_curve(E, d), Ad = twisted_curve(A, d);
  const std::vector<Place> S = pair_places(E, A, d);
  const std::vector<std::uint64_t> S_fin = finite_primes(S);

  // First twist: both ranks grow by 2 and Sel2(A^chi) gains an element outside the multiquadratic field.
  const std::vector<PrimePredicate> preds1{
      PrimePredicate::congruence(1, 8),
      PrimePredicate::squares(as_rationals(S_fin)),
      PrimePredicate::custom("Sel2(E), Sel2(A) generators square at q",
                             [&](std::uint64_t q) { return trivial_at(selE, q) && trivial_at(selA, q); }),
      PrimePredicate::four_torsion_local(Ed),
      PrimePredicate::four_torsion_local(Ad),
  };
  std::optional<ConstructedCharacter> chi1;
  Integer d1;
  std::optional<SelmerBasis> selE1, selA1;
  QElt s_witness;
  std::uint64_t start = 3;
  while (!chi1 && start <= b.prime_bound) {
    const std::uint64_t q = find_prime(preds1, b.prime_bound, S_fin, start);
    start = q + 1;
    ConstructedCharacter cc;
    try {
      cc = construct_global_character(S, {{Place::prime(q), LocalPrescription::Requirement::ramified}}, {}, b.twist_bound);
    } catch (const NotRepresentable&) {
      continue;
    }
    if (boost::multiprecision::abs(cc.chi.d()) > b.twist_bound) continue;
    const Integer dd = product_class(d, cc.chi.d());
    SelmerBasis e1 = sel_of(E, dd), a1 = sel_of(A, dd);
    if (e1.rank != selE.rank + 2 || a1.rank != selA.rank + 2) continue;
    std::optional<QElt> s;
    for (const auto& el : a1.elements.elements()) {
      if (el.is_zero()) continue;
      const QElt c = a1.field_element(el);
      if (!multiquadratic_test(c, *a1.field_D)) {
        s = c;
        break;
      }
    }
    if (!s) continue;
    chi1 = cc;
    d1 = dd;
    selE1.emplace(std::move(e1));
    selA1.emplace(std::move(a1));
    s_witness = *s;
  }
  if (!chi1) throw NotFound("demo_case3: no first twist certified up to " + std::to_string(b.prime_bound));

  // Second twist: E grows by 2 while A does not grow, through a prime where res_q(Sel2(A^chi1)) != 0.
  const CurveQ E1 = twisted_curve(E, d1), A1 = twisted_curve(A, d1);
  const std::vector<Place> S1 = pair_places(E, A, d1);
  const std::vector<std::uint64_t> S1_fin = finite_primes(S1);
  const Cubic fA1 = two_division_cubic(A).twist(d1);
  const std::vector<PrimePredicate> preds2{
      PrimePredicate::congruence(1, 8),
      PrimePredicate::squares(as_rationals(S1_fin)),
      PrimePredicate::custom("Sel2(E^chi1) generators square at q", [&](std::uint64_t q) { return trivial_at(*selE1, q); }),
      PrimePredicate::four_torsion_local(E1),
      PrimePredicate::custom("res_q(Sel2(A^chi1)) != 0",
                             [&](std::uint64_t q) {
                               return local_root_count(fA1, Place::prime(q)) == 3 && !trivial_at(*selA1, q);
                             }),
  };
  start = 3;
  while (start <= b.prime_bound) {
    const std::uint64_t q = find_prime(preds2, b.prime_bound, S1_fin, start);
    start = q + 1;
    const CrucialReport crE = crucial_trichotomy(E, q, opt, d1);
    if (crE.clause != 1 || !crE.ok) continue;
    ConstructedCharacter cc;
    try {
      cc = construct_global_character(
          S1, {{Place::prime(q), LocalPrescription::Requirement::ramified_class, *crE.matching}}, {}, b.twist_bound);
    } catch (const NotRepresentable&) {
      continue;
    }
    if (boost::multiprecision::abs(cc.chi.d()) > b.twist_bound) continue;
    const Integer d2 = product_class(d1, cc.chi.d());
    const SelmerBasis e2 = sel_of(E, d2), a2 = sel_of(A, d2);
    const CrucialReport crA = crucial_trichotomy(A, q, opt, d1);

    TwistCertificate cert;
    cert.case_label = "case 3";
    cert.chi = QuadChar(product_class(chi1->chi.d(), cc.chi.d()));
    cert.q = q;
    cert.auxiliary = cc.auxiliary;
    cert.steps.push_back({"simultaneous +2", chi1->chi.d(), chi1->ell});
    cert.steps.push_back({"E +2, A capped", cc.chi.d(), q});
    cert.ranks = {{twist_name(E, d), d, selE.rank, Provenance::internal},
                  {twist_name(A, d), d, selA.rank, Provenance::internal},
                  {twist_name(E, d1), d1, selE1->rank, Provenance::internal},
                  {twist_name(A, d1), d1, selA1->rank, Provenance::internal},
                  {twist_name(E, d2), d2, e2.rank, Provenance::internal},
                  {twist_name(A, d2), d2, a2.rank, Provenance::internal}};
    int h = 0;
    bool off = true;
    add_local_reports(cert, Ed, twist_name(E, d), chi1->chi.d(), with_primes(S, {chi1->ell}), h, off, chi1->ell);
    add_local_reports(cert, Ad, twist_name(A, d), chi1->chi.d(), with_primes(S, {chi1->ell}), h, off, chi1->ell);
    int hE = 0, hA = 0;
    bool offE = true, offA = true;
    add_local_reports(cert, E1, twist_name(E, d1), cc.chi.d(), with_primes(S1, {q}), hE, offE, q);
    add_local_reports(cert, A1, twist_name(A, d1), cc.chi.d(), with_primes(S1, {q}), hA, offA, q);
    add_claim(cert, "step 1: r2(E^chi1) = r2(E) + 2", selE1->rank == selE.rank + 2);
    add_claim(cert, "step 1: r2(A^chi1) = r2(A) + 2", selA1->rank == selA.rank + 2);
    add_claim(cert, "step 1: Sel2(A^chi1) contains " + QuadField(*selA1->field_D).str(s_witness) +
                        ", whose square root lies outside the multiquadratic field",
              !multiquadratic_test(s_witness, *selA1->field_D));
    add_claim(cert, "step 2: res_q(Sel2(E^chi1)) = 0 and exactly one ramified image matches", crE.ok && crE.clause == 1);
    add_claim(cert, "step 2: res_q(Sel2(A^chi1)) != 0 and both ramified twists have rank <= r2(A^chi1)",
              crA.clause == 3 && crA.ok);
    add_claim(cert, "step 2: r2(E^chi) = r2(E^chi1) + 2", e2.rank == selE1->rank + 2);
    add_claim(cert, "step 2: r2(A^chi) <= r2(A^chi1)", a2.rank <= selA1->rank);
    add_claim(cert, "step 2: h vanishes off q for both curves", offE && offA);
    const long gap = (static_cast<long>(e2.rank) - static_cast<long>(a2.rank)) -
                     (static_cast<long>(selE.rank) - static_cast<long>(selA.rank));
    cert.gap_increase = gap;
    add_claim(cert, "r2(E^chi) - r2(A^chi) >= r2(E) - r2(A) + 2", gap >= 2);
    if (cert.ok()) return cert;
  }
  throw NotFound("demo_case3: no second twist certified up to " + std::to_string(b.prime_bound));
}

// ---------------------------------------------------------------- case 1

bool in_P0(const CurveQ& E, const CurveQ& A, std::uint64_t q) {
  for (const auto* C : {&E, &A}) {
    const Cubic f = two_division_cubic(*C);
    if (f.discriminant() % q == 0 || root_count_mod(f, q) != 0) return false;
  }
  return true;
}

TwistCertificate demo_case1(const CurveQ& E, const CurveQ& A, const Datastore& store, const SearchBounds& b,
                            const Integer& d) {
  const int dE = degree(E), dA = degree(A);
  if ((dE != 3 && dE != 6) || (dA != 3 && dA != 6)) {
    throw InvalidInput("demo_case1 needs two curves of 2-torsion degree 3 or 6 (got " + std::to_string(dE) + ", " +
                       std::to_string(dA) + ")");
  }
  if (same_two_torsion_field(E, A)) throw RefusedSameTorsionField("demo_case1: E and A have the same 2-torsion field");
  auto ingested = [&](const CurveQ& C, const Integer& t) {
    return selmer_group(C, t, Backend::ingested, &store, SelmerVariant::classical(), b.descent()).rank;
  };
  const std::size_t rE = ingested(E, d), rA = ingested(A, d);
  const CurveQ Ed = twisted_curve(E, d), Ad = twisted_curve(A, d);
  const std::vector<Place> S = pair_places(E, A, d);
  const std::vector<std::uint64_t> S_fin = finite_primes(S);
  const std::vector<PrimePredicate> preds{
      PrimePredicate::cubic_type(two_division_cubic(E).twist(d), CubicSplitting::three_linear),
      PrimePredicate::cubic_type(two_division_cubic(A).twist(d), CubicSplitting::irreducible),
  };
  const RelaxSet p0 = [&](std::uint64_t r) { return in_P0(Ed, Ad, r); };
  std::uint64_t start = 3;
  while (start <= b.prime_bound) {
    const std::uint64_t q = find_prime(preds, b.prime_bound, S_fin, start);
    start = q + 1;
    for (auto target : {LocalCharKind::ramified_q, LocalCharKind::ramified_uq}) {
      ConstructedCharacter cc;
      try {
        cc = construct_global_character(
            S, {{Place::prime(q), LocalPrescription::Requirement::ramified_class, target}}, p0, b.prime_bound);
      } catch (const NotRepresentable&) {
        continue;
      }
      if (boost::multiprecision::abs(cc.chi.d()) > b.twist_bound) continue;
      const Integer d_new = product_class(d, cc.chi.d());
      const std::size_t rE_new = ingested(E, d_new), rA_new = ingested(A, d_new);

      TwistCertificate cert;
      cert.case_label = "case 1";
      cert.chi = cc.chi;
      cert.q = q;
      cert.auxiliary = cc.auxiliary;
      cert.steps.push_back({"case 1", cc.chi.d(), q});
      cert.ranks = {{twist_name(E, d), d, rE, Provenance::ingested},
                    {twist_name(A, d), d, rA, Provenance::ingested},
                    {twist_name(E, d_new), d_new, rE_new, Provenance::ingested},
                    {twist_name(A, d_new), d_new, rA_new, Provenance::ingested}};
      const std::vector<Place> places = with_primes(with_primes(S, {q}), cc.auxiliary);
      int hE = 0, hA = 0;
      bool offE = true, offA = true;
      add_local_reports(cert, Ed, twist_name(E, d), cc.chi.d(), places, hE, offE, q);
      add_local_reports(cert, Ad, twist_name(A, d), cc.chi.d(), places, hA, offA, q);
      add_claim(cert, "q in P_{E,2} and P_{A,0}", prime_class(Ed, q) == 2 && prime_class(Ad, q) == 0);
      bool aux_ok = true;
      for (auto r : cc.auxiliary) aux_ok = aux_ok && in_P0(Ed, Ad, r);
      add_claim(cert, "auxiliary primes lie in P0", aux_ok);
      add_claim(cert, "h_E = h_A = 0 off q", offE && offA);
      add_claim(cert, "h_A(q) = 0", hA == 0);
      add_claim(cert, "ingested: r2(A^chi) = r2(A) (externally backed)", rA_new == rA);
      add_claim(cert, "ingested: r2(E^chi) = r2(E) + 2 (externally backed)", rE_new == rE + 2);
      cert.gap_increase = (static_cast<long>(rE_new) - static_cast<long>(rA_new)) -
                          (static_cast<long>(rE) - static_cast<long>(rA));
      if (cert.ok()) return cert;
    }
  }
  throw NotFound("demo_case1: no certified character up to " + std::to_string(b.prime_bound));
}

// ---------------------------------------------------------------- chaining

TheoremCase classify_pair(const CurveQ& E, const CurveQ& A) {
  if (same_two_torsion_field(E, A)) {
    throw RefusedSameTorsionField(E.name() + " and " + A.name() +
                                  " have the same 2-torsion field; no rank divergence is claimed in that case");
  }
  const int dE = degree(E), dA = degree(A);
  if (dE <= 2 && (dA == 3 || dA == 6)) return TheoremCase::case2;
  if (dE <= 2 && dA == 2) return TheoremCase::case3;
  if ((dE == 3 || dE == 6) && (dA == 3 || dA == 6)) return TheoremCase::case1;
  throw Unsupported("no case applies to 2-torsion degrees (" + std::to_string(dE) + ", " + std::to_string(dA) +
                    "); try exchanging the curves");
}

std::vector<TwistCertificate> gap_amplifier(const CurveQ& E, const CurveQ& A, int target_gap, const SearchBounds& b,
                                            const Datastore* store, std::optional<TheoremCase> forced) {
  std::vector<TwistCertificate> chain;
  if (target_gap <= 0) return chain;
  const TheoremCase c = forced ? *forced : classify_pair(E, A);
  if (c == TheoremCase::case1 && !store) throw MissingIngestedRank("case 1 needs a datastore", E.label() + " : 1 : ?");
  Integer d = 1;
  long total = 0;
  while (total < target_gap) {
    try {
      TwistCertificate cert = c == TheoremCase::case2   ? demo_case2(E, A, b, d)
                              : c == TheoremCase::case3 ? demo_case3(E, A, b, d)
                                                        : demo_case1(E, A, *store, b, d);
      const Integer d_next = product_class(d, cert.chi.d());
      const TheoremCase again = classify_pair(twisted_curve(E, d_next), twisted_curve(A, d_next));
      add_claim(cert, "the twisted pair is classified in the same case", again == c);
      if (!cert.gap_increase || *cert.gap_increase < 2) {
        throw NotFound("round " + std::to_string(chain.size() + 1) + " did not increase the gap");
      }
      total += *cert.gap_increase;
      d = d_next;
      chain.push_back(std::move(cert));
    } catch (const NotFound& e) {
      throw PartialChain("gap_amplifier: stopped after " + std::to_string(chain.size()) + " round(s): " + e.what(), chain);
    }
  }
  return chain;
}

// ---------------------------------------------------------------- Delta kernel

DeltaKernelReport delta_kernel_sampling(const CurveQ& E, const CurveQ& A, std::uint64_t bound, int samples) {
  const Cubic fE = two_division_cubic(E), fA = two_division_cubic(A);
  const std::vector<Place> S = pair_places(E, A, 1);
  const std::vector<std::uint64_t> S_fin = finite_primes(S);
  const QS2Group G = qs2_basis(S);
  DeltaKernelReport r;
  const Integer dE = squarefree_part(fE.discriminant()), dA = squarefree_part(fA.discriminant());
  for (const Integer& x : {Integer(1), dE, dA, product_class(dE, dA)}) {
    if (std::find(r.subgroup.begin(), r.subgroup.end(), x) == r.subgroup.end()) r.subgroup.push_back(x);
  }
  std::sort(r.subgroup.begin(), r.subgroup.end());
  const auto p0 = PrimePredicate::custom("q in P0", [&](std::uint64_t q) { return in_P0(E, A, q); });
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << G.dim()); ++bits) {
    const Integer alpha = G.element(F2Vector(G.dim(), bits));
    if (std::find(r.subgroup.begin(), r.subgroup.end(), alpha) != r.subgroup.end()) continue;
    try {
      r.killed.emplace_back(alpha, find_prime({p0, PrimePredicate::legendre_is(alpha, -1)}, bound, S_fin));
    } catch (const NotFound&) {
      r.not_killed.push_back(alpha);
    }
  }
  r.subgroup_survives = true;
  for (std::uint64_t q = 3; static_cast<int>(r.sample_primes.size()) < samples && q <= bound; q += 2) {
    if (!is_prime(q) || std::find(S_fin.begin(), S_fin.end(), q) != S_fin.end() || !in_P0(E, A, q)) continue;
    r.sample_primes.push_back(q);
    for (const auto& x : r.subgroup) {
      if (legendre(x, q) != 1) r.subgroup_survives = false;
    }
  }
  if (static_cast<int>(r.sample_primes.size()) < samples) r.subgroup_survives = false;
  return r;
}

}  // namespace selmer
