#include <doctest.h>

#include "selmer/arith.hpp"
#include "selmer/characters.hpp"
#include "selmer/curves.hpp"
#include "selmer/errors.hpp"

using namespace selmer;

using Req = LocalPrescription::Requirement;

namespace {

std::vector<LocalPrescription> trivial_on(const std::vector<Place>& S) {
  std::vector<LocalPrescription> out;
  for (auto v : S) out.push_back({v, Req::trivial});
  return out;
}

}  // namespace

TEST_SUITE("characters") {
  TEST_CASE("local values") {
    const QuadChar triv;
    for (auto v : {Place::infinity(), Place::prime(2), Place::prime(7)})
      for (long long r : {-3, 2, 5, 7}) CHECK(chi_local_value(triv, v, r) == 1);
    for (long long r : {1, -1, 3, 5, 7, -5}) CHECK(chi_local_value(QuadChar(73), Place::prime(2), r) == 1);
    CHECK(chi_local_value(QuadChar(-1), Place::infinity(), -1) == -1);
    CHECK_THROWS_AS(QuadChar(12), InvalidInput);
    CHECK(QuadChar(-7).str() == "chi_-7");
  }

  TEST_CASE("ramification") {
    CHECK(is_ramified_at(QuadChar(73), Place::prime(73)));
    CHECK_FALSE(is_ramified_at(QuadChar(73), Place::prime(5)));
    CHECK(is_ramified_at(QuadChar(-1), Place::prime(2)));
    CHECK_FALSE(is_ramified_at(QuadChar(5), Place::prime(2)));
    CHECK(is_ramified_at(QuadChar(3), Place::prime(2)));
  }

  TEST_CASE("prime search") {
    CHECK(find_prime({PrimePredicate::congruence(1, 8), PrimePredicate::legendre_is(3, 1)}, 100) == 73);
    const Cubic f{0, -3, -1};
    CHECK(find_prime({PrimePredicate::cubic_type(f, CubicSplitting::irreducible)}, 10) == 5);
    CHECK_THROWS_AS(find_prime({PrimePredicate::congruence(1, 4), PrimePredicate::congruence(3, 4)}, 1000),
                    InvalidInput);
    CHECK_THROWS_AS(find_prime({PrimePredicate::congruence(1, 8), PrimePredicate::legendre_is(3, 1)}, 70), NotFound);
    CHECK(find_prime({PrimePredicate::congruence(1, 8)}, 100, {17}) == 41);
    const auto [r, m] = combine_congruences({PrimePredicate::congruence(1, 8), PrimePredicate::congruence(2, 3)});
    CHECK(m == 24);
    CHECK(r == 17);
  }

  TEST_CASE("four-torsion predicate") {
    const auto pred = PrimePredicate::four_torsion_local(CurveQ::short_model(-1, 0));
    for (std::uint64_t q : {17, 41, 73, 89, 97, 113}) {
      CHECK(pred(q) == is_four_torsion_local(CurveQ::short_model(-1, 0), q));
    }
  }

  TEST_CASE("global characters with prescribed local behaviour") {
    const std::vector<Place> S{Place::infinity(), Place::prime(2), Place::prime(3)};
    auto pres = trivial_on(S);
    pres.push_back({Place::prime(73), Req::ramified});
    const auto c = construct_global_character(S, pres, {}, 1000);
    CHECK(c.chi.d() == 73);
    CHECK(c.auxiliary.empty());

    auto pres7 = trivial_on(S);
    pres7.push_back({Place::prime(7), Req::ramified});
    CHECK_THROWS_AS(construct_global_character(S, pres7, {}, 1000), NotRepresentable);

    // an auxiliary prime r = 7 mod 8 repairs the 2-adic component of 7
    const RelaxSet r78 = [](std::uint64_t r) { return r % 8 == 7; };
    const auto c7 = construct_global_character(S, pres7, r78, 1000);
    CHECK(c7.chi.d() == 217);
    CHECK(c7.auxiliary == std::vector<std::uint64_t>{31});
    for (const auto& p : pres7) CHECK(p.satisfied_by(c7.chi.d()));
  }

  TEST_CASE("unramified nontrivial prescriptions are flagged") {
    const std::vector<Place> S{Place::infinity(), Place::prime(2)};
    auto pres = trivial_on(S);
    pres.push_back({Place::prime(5), Req::unramified_nontrivial});
    const RelaxSet any = [](std::uint64_t) { return true; };
    const auto c = construct_global_character(S, pres, any, 1000);
    CHECK(c.extension);
    CHECK(pres.back().satisfied_by(c.chi.d()));
    CHECK_FALSE(is_ramified_at(c.chi, Place::prime(5)));
  }
}
