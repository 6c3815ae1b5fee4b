#include <doctest.h>

#include "selmer/errors.hpp"
#include "selmer/f2.hpp"

using namespace selmer;

namespace {

F2QuadSpace hyperbolic() { return standard_metabolic(1); }

F2Subspace first_halves(std::size_t n) {
  std::vector<F2Vector> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(F2Vector::unit(2 * n, 2 * i));
  return F2Subspace::span(2 * n, g);
}

}  // namespace

TEST_SUITE("f2") {
  TEST_CASE("vectors") {
    F2Vector v = F2Vector::parse("10110");
    CHECK(v.dim() == 5);
    CHECK(v.weight() == 3);
    CHECK(v.leading() == 3);
    CHECK(v.str() == "10110");
    CHECK((v + v).is_zero());
    CHECK(v.dot(F2Vector::parse("00110")) == false);
    CHECK(v.concat(F2Vector::parse("1")).str() == "101101");
    CHECK(v.slice(2, 2).str() == "11");
    CHECK_THROWS_AS(v += F2Vector(4), DimensionMismatch);
  }

  TEST_CASE("subspace equality is canonical") {
    const auto a = F2Vector::parse("1100"), b = F2Vector::parse("0110"), c = F2Vector::parse("1010");
    CHECK(F2Subspace::span(4, {a, b}) == F2Subspace::span(4, {b, c}));
    CHECK(F2Subspace::span(4, {a, b}) == F2Subspace::span(4, {a, c, b}));
    CHECK(F2Subspace::span(4, {a, b}).dim() == 2);
    CHECK(F2Subspace::span(4, {a, b}).contains(c));
    CHECK_FALSE(F2Subspace::span(4, {a, b}).contains(F2Vector::parse("1000")));
  }

  TEST_CASE("annihilator, intersection, kernel") {
    const auto X = F2Subspace::span(4, {F2Vector::parse("1100"), F2Vector::parse("0011")});
    const auto ann = X.annihilator();
    CHECK(ann.dim() == 2);
    for (const auto& f : ann.basis()) {
      for (const auto& x : X.basis()) CHECK_FALSE(f.dot(x));
    }
    const auto Y = F2Subspace::span(4, {F2Vector::parse("1100"), F2Vector::parse("1000")});
    CHECK(X.intersect(Y).dim() == 1);
    CHECK((X + Y).dim() == 3);
    std::vector<F2Vector> images{F2Vector::parse("10"), F2Vector::parse("10"), F2Vector::parse("01")};
    const auto K = kernel(images, 3);
    CHECK(K.dim() == 1);
    CHECK(K.contains(F2Vector::parse("110")));
    CHECK(X.elements().size() == 4);
  }

  TEST_CASE("subspace enumeration counts Gaussian binomials") {
    int n2 = 0, n3 = 0;
    for_each_subspace(4, 2, [&](const F2Subspace&) { ++n2; });
    for_each_subspace(5, 3, [&](const F2Subspace&) { ++n3; });
    CHECK(n2 == 35);
    CHECK(n3 == 155);
  }

  TEST_CASE("quadratic form evaluation") {
    const auto H = hyperbolic();
    CHECK_FALSE(H.eval_q(F2Vector(2)));
    CHECK(H.eval_q(F2Vector::parse("11")));
    const F2QuadSpace zero({false, false}, {F2Vector(2), F2Vector(2)});
    for (unsigned b = 0; b < 4; ++b) CHECK_FALSE(zero.eval_q(F2Vector(2, b)));
  }

  TEST_CASE("the bilinear form is alternating") {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto V = standard_metabolic(n);
      for (std::uint64_t b = 0; b < (1u << (2 * n)); ++b) CHECK_FALSE(V.bilinear(F2Vector(2 * n, b), F2Vector(2 * n, b)));
    }
  }

  TEST_CASE("Lagrangian tests") {
    const auto H = hyperbolic();
    CHECK(H.is_lagrangian(F2Subspace::span(2, {F2Vector::parse("10")})));
    CHECK_FALSE(H.is_lagrangian(F2Subspace::span(2, {F2Vector::parse("11")})));
    const auto HH = standard_metabolic(2);
    CHECK(HH.is_lagrangian(F2Subspace::span(4, {F2Vector::parse("1000"), F2Vector::parse("0010")})));
    CHECK(H.lagrangians().size() == 2);
    CHECK(standard_metabolic(0).dim() == 0);
    CHECK(HH.is_metabolic());
  }

  TEST_CASE("disjoint Lagrangian counts") {
    CHECK(count_disjoint_lagrangians(standard_metabolic(1), first_halves(1)) == 1);
    CHECK(count_disjoint_lagrangians(standard_metabolic(2), first_halves(2)) == 2);
    CHECK(count_disjoint_lagrangians(standard_metabolic(3), first_halves(3)) == 8);
  }

  TEST_CASE("the count does not depend on the chosen Lagrangian") {
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto V = standard_metabolic(n);
      const std::size_t expected = std::size_t{1} << (n * (n - 1) / 2);
      for (const auto& X : V.lagrangians()) CHECK(count_disjoint_lagrangians(V, X) == expected);
    }
  }
}
