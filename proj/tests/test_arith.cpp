#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "selmer/arith.hpp"
#include "selmer/errors.hpp"
#include "selmer/poly_mod.hpp"
#include "selmer/quadfield.hpp"

using namespace selmer;

namespace {

// Finite places where (a,b) can be nontrivial.
std::vector<Place> places_of(long long a, long long b) {
  std::set<std::uint64_t> ps{2};
  for (long long n : {std::llabs(a), std::llabs(b)}) {
    for (long long p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      ps.insert(p);
      while (n % p == 0) n /= p;
    }
    if (n > 1) ps.insert(n);
  }
  std::vector<Place> v{Place::infinity()};
  for (auto p : ps) v.push_back(Place::prime(p));
  return v;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("Legendre symbols") {
    for (std::uint64_t p : {3, 5, 7, 11, 73, 97}) CHECK(legendre(1, p) == 1);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 73) == 1);
    CHECK(legendre(14, 7) == 0);
    for (std::uint64_t p : {3, 5, 7, 11, 13, 41}) {
      for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a) {
        bool sq = false;
        for (std::uint64_t x = 1; x < p; ++x) sq = sq || (x * x) % p == static_cast<std::uint64_t>(a);
        CHECK(legendre(a, p) == (sq ? 1 : -1));
      }
    }
  }

  TEST_CASE("primality and factor helpers") {
    CHECK(is_prime(std::uint64_t{97}));
    CHECK_FALSE(is_prime(std::uint64_t{91}));
    CHECK(is_prime(std::uint64_t{1000003}));
    CHECK(next_prime(100) == 101);
    CHECK(squarefree_part(Integer(-72)) == -2);
    CHECK(is_squarefree(Integer(30)));
    CHECK_FALSE(is_squarefree(Integer(12)));
    CHECK(valuation(Integer(96), 2) == 5);
    CHECK(is_rational_square(parse_rational("9/4")));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK_THROWS(parse_rational("1/0"));
  }

  TEST_CASE("Hilbert symbol examples") {
    CHECK(hilbert_symbol(-1, -1, Place::infinity()) == -1);
    CHECK(hilbert_symbol(-1, -1, Place::prime(2)) == -1);
    for (long long b : {-7, -1, 2, 3, 10})
      for (auto v : {Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(7)})
        CHECK(hilbert_symbol(1, b, v) == 1);
  }

  TEST_CASE("Hilbert symbols agree with brute-force solvability") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> dist(-60, 60);
    for (long long p : {2, 3, 5, 7, 11, 13}) {
      for (int i = 0; i < 40; ++i) {
        long long a = 0, b = 0;
        while (a == 0) a = dist(rng);
        while (b == 0) b = dist(rng);
        CHECK_MESSAGE(hilbert_symbol(a, b, Place::prime(p)) == oracle::hilbert(a, b, p),
                      "(" << a << "," << b << ")_" << p);
      }
    }
  }

  TEST_CASE("Hilbert symbol: product formula, symmetry, bilinearity") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> dist(-10000, 10000);
    auto draw = [&] {
      long long x = 0;
      while (x == 0) x = dist(rng);
      return x;
    };
    for (int i = 0; i < 100; ++i) {
      const long long a = draw(), b = draw();
      int prod = 1;
      for (auto v : places_of(a, b)) prod *= hilbert_symbol(a, b, v);
      CHECK_MESSAGE(prod == 1, a << " " << b);
    }
    for (auto v : {Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(5), Place::prime(7),
                   Place::prime(97)}) {
      for (int i = 0; i < 50; ++i) {
        const long long a1 = draw(), a2 = draw(), b = draw();
        CHECK(hilbert_symbol(a1, b, v) == hilbert_symbol(b, a1, v));
        CHECK(hilbert_symbol(Rational(a1) * a2, b, v) == hilbert_symbol(a1, b, v) * hilbert_symbol(a2, b, v));
      }
    }
  }

  TEST_CASE("square classes") {
    CHECK(is_square_in_Qv(17, Place::prime(2)));
    CHECK_FALSE(is_square_in_Qv(-1, Place::infinity()));
    CHECK(is_square_in_Qv(64, Place::prime(7)));
    CHECK(square_class(18, Place::prime(3)).rep == 2);
    CHECK(square_class(-4, Place::infinity()).rep == -1);
    CHECK(square_class(12, Place::prime(2)).rep == -5);
    CHECK(square_class_dim(Place::prime(2)) == 3);
    CHECK(square_class_dim(Place::prime(5)) == 2);
    CHECK(square_class_dim(Place::infinity()) == 1);
    for (std::int64_t r : {1, -1, 2, -2, 5, -5, 10, -10}) {
      const auto c = square_class_coords(r, Place::prime(2));
      CHECK(square_class_from_coords(c, Place::prime(2)).rep == r);
    }
  }

  TEST_CASE("square test agrees with exhaustive root search") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> dist(-100000, 100000);
    for (int i = 0; i < 250; ++i) {
      long long r = 0;
      while (r == 0) r = dist(rng);
      for (long long p : {2, 3, 5, 7, 13}) {
        const long long k = p == 2 ? 7 : 5;
        long long m = 1;
        for (int j = 0; j < k; ++j) m *= p;
        // strip even powers, then search for a root of the unit part modulo p^k
        long long n = r;
        int v = 0;
        while (n % p == 0) {
          n /= p;
          ++v;
        }
        bool sq = false;
        if (v % 2 == 0) {
          const long long target = ((n % m) + m) % m;
          for (long long x = 1; x < m && !sq; x += 1) sq = x % p != 0 && (x * x) % m == target;
        }
        CHECK_MESSAGE(is_square_in_Qv(r, Place::prime(p)) == sq, r << " at " << p);
      }
    }
  }

  TEST_CASE("polynomials mod p") {
    const std::uint64_t p = 17;
    const PolyP f = polyp::from_signed({-1, -3, 0, 1}, p);  // x^3 - 3x - 1
    CHECK(polyp::degree(f) == 3);
    const auto rs = polyp::roots(f, p);
    CHECK(rs.size() == 3);  // root 4, and the cofactor has discriminant 15, a square mod 17
    CHECK(std::find(rs.begin(), rs.end(), 4) != rs.end());
    CHECK(polyp::roots(polyp::from_signed({-1, -3, 0, 1}, 5), 5).empty());
    CHECK(polyp::eval(f, 4, p) == 0);
  }

  TEST_CASE("quadratic fields") {
    const QuadField K(2);
    const QElt c{1, 1};
    CHECK(K.norm(c) == -1);
    CHECK(K.norm(K.fundamental_unit()) == -1);
    CHECK(K.mul(c, K.inv(c)) == QElt{1, 0});
    CHECK(K.is_square(QElt{3, 2}));  // (1 + sqrt2)^2
    CHECK(K.splitting(7) == 1);
    CHECK(K.splitting(3) == -1);
    CHECK(K.splitting(2) == 0);
    CHECK(ClassGroup(QuadField(-5)).order() == 2);
    CHECK(ClassGroup(QuadField(-1)).order() == 1);
    CHECK(ClassGroup(QuadField(-23)).order() == 3);
    CHECK_THROWS_AS(QuadField(4), InvalidInput);
  }

  TEST_CASE("K(S,2) has the expected dimension") {
    for (long long D : {-1, 2, -5, 5, -15, 3, 7}) {
      const QuadField K(D);
      for (const std::vector<std::uint64_t>& S : {std::vector<std::uint64_t>{2}, {2, 3}, {2, 3, 5, 7}}) {
        CHECK(ks2_basis(K, S).size() == expected_ks2_dim(K, S));
      }
    }
  }
}
