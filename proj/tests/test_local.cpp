#include <doctest.h>

#include <random>

#include "selmer/arith.hpp"
#include "selmer/characters.hpp"
#include "selmer/curves.hpp"
#include "selmer/errors.hpp"
#include "selmer/local.hpp"

using namespace selmer;

namespace {

CurveQ sm(long long a, long long b) { return CurveQ::short_model(a, b); }

F2Vector coords4(std::int64_t a, std::int64_t b, std::uint64_t q) {
  return square_class_coords(a, Place::prime(q)).concat(square_class_coords(b, Place::prime(q)));
}

}  // namespace

TEST_SUITE("local") {
  TEST_CASE("Frobenius orders and prime classes") {
    CHECK(frobenius_order_on_M(sm(-3, -1), 5) == 3);
    CHECK(frobenius_order_on_M(sm(-3, -1), 17) == 1);
    for (std::uint64_t q : {3, 5, 7, 11, 13}) CHECK(frobenius_order_on_M(sm(-1, 0), q) == 1);
    CHECK(prime_class(sm(-3, -1), 5) == 0);
    CHECK(prime_class(sm(1, 0), 5) == 2);
    CHECK(prime_class(sm(1, 0), 7) == 1);
  }

  TEST_CASE("local Kummer dimensions") {
    CHECK(dim_local_kummer(sm(-1, 0), 1, Place::prime(5)) == 2);
    CHECK(dim_local_kummer(sm(-3, -1), 1, Place::prime(5)) == 0);
    CHECK(dim_local_kummer(sm(-1, 0), 1, Place::infinity()) == 1);
    CHECK(dim_local_kummer(sm(-1, 0), 1, Place::prime(2)) == 3);
    CHECK(dim_local_kummer(sm(1, 0), 1, Place::infinity()) == 0);
  }

  TEST_CASE("h values") {
    for (auto v : {Place::infinity(), Place::prime(2), Place::prime(5), Place::prime(7)})
      CHECK(h_value(sm(-1, 0), v, LocalCharKind::trivial) == 0);
    CHECK(h_value(sm(-1, 0), Place::prime(7), LocalCharKind::ramified_q) == 2);
    CHECK(h_value(sm(-3, -1), Place::prime(5), LocalCharKind::ramified_q) == 0);
    CHECK(h_value(sm(1, 0), Place::prime(7), LocalCharKind::ramified_uq) == 1);
    CHECK(h_value(sm(-1, 0), Place::prime(7), LocalCharKind::unramified) == 0);
  }

  TEST_CASE("condition reports at good primes") {
    for (std::uint64_t q : {5, 7, 11, 13, 17}) {
      const auto r = local_condition_report(sm(-1, 0), 1, Place::prime(q));
      CHECK(r.dim_beta_trivial == 2);
      CHECK(r.dim_beta_chi == r.dim_beta_trivial);
      CHECK(r.h <= r.dim_beta_trivial);
      REQUIRE(r.prime_class);
      CHECK(*r.prime_class == 2);
    }
  }

  TEST_CASE("local pairing") {
    const std::uint64_t q = 5;
    const F2Vector one = coords4(1, 1, q);
    for (std::uint64_t b = 0; b < 16; ++b) CHECK_FALSE(pairing_local(one, F2Vector(4, b), q));
    for (std::uint64_t a = 1; a < 16; ++a) {
      bool nondeg = false;
      for (std::uint64_t b = 0; b < 16; ++b) nondeg = nondeg || pairing_local(F2Vector(4, a), F2Vector(4, b), q);
      CHECK(nondeg);
    }
    for (std::uint64_t a = 0; a < 16; ++a) {
      for (std::uint64_t b = 0; b < 16; ++b) {
        CHECK(pairing_local(F2Vector(4, a), F2Vector(4, b), q) == pairing_local(F2Vector(4, b), F2Vector(4, a), q));
      }
    }
  }

  TEST_CASE("local Kummer images are Lagrangian and pairwise disjoint") {
    const CurveQ E = sm(-1, 0);
    std::mt19937_64 rng(1);
    for (std::uint64_t q : {17, 41, 73}) {
      std::vector<F2Subspace> imgs;
      for (auto k : {LocalCharKind::trivial, LocalCharKind::ramified_q, LocalCharKind::ramified_uq,
                     LocalCharKind::unramified}) {
        const auto img = local_kummer_image(E, q, k, rng);
        CHECK(img.image.dim() == 2);
        for (const auto& x : img.image.basis())
          for (const auto& y : img.image.basis()) CHECK_FALSE(pairing_local(x, y, q));
        imgs.push_back(img.image);
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK(imgs[i].intersect(imgs[j]).dim() == 0);
      // the image for the trivial character contains the 2-torsion classes
      const auto& triv = imgs[0];
      CHECK(triv.contains(coords4(2, -1, q)));  // T = (-1, 0) maps to ((-1)(-2), -1)
    }
    CHECK_THROWS_AS(local_kummer_image(sm(1, 0), 7, LocalCharKind::trivial, rng), InvalidInput);
  }

  TEST_CASE("discriminant is a square at primes of class 0 or 2 for irreducible cubics") {
    for (const auto& E : {sm(-3, -1), sm(0, -2)}) {
      const Rational disc = discriminant(E);
      int seen = 0;
      for (std::uint64_t q = 5; q < 3000 && seen < 50; q += 2) {
        if (!is_prime(q) || !has_good_reduction(E, q)) continue;
        const int c = prime_class(E, q);
        if (c == 1) continue;
        ++seen;
        CHECK(is_square_in_Qv(disc, Place::prime(q)));
      }
      CHECK(seen == 50);
    }
  }

  TEST_CASE("P0 primes are plentiful for a cubic/sextic pair") {
    const CurveQ E = sm(-3, -1), A = sm(0, -2);
    int n = 0;
    for (std::uint64_t q = 5; q < 10000; q += 2) {
      if (is_prime(q) && has_good_reduction(E, q) && has_good_reduction(A, q) && prime_class(E, q) == 0 &&
          prime_class(A, q) == 0)
        ++n;
    }
    CHECK(n >= 10);
  }

  TEST_CASE("p-adic roots") {
    const auto rs = padic_roots(Cubic{0, -1, 0}, 2, 6);
    CHECK(rs.size() == 3);
    CHECK(local_root_count(Cubic{0, -3, -1}, Place::prime(17)) == 3);
    CHECK(local_root_count(Cubic{0, -3, -1}, Place::prime(5)) == 0);
    CHECK(local_root_count(Cubic{0, -3, -1}, Place::infinity()) == 3);
    CHECK(local_root_count(Cubic{0, 1, 0}, Place::infinity()) == 1);
  }
}
