#include <doctest.h>

#include <fstream>

#include "selmer/curves.hpp"
#include "selmer/datastore.hpp"
#include "selmer/errors.hpp"
#include "selmer/theorems.hpp"

using namespace selmer;

#ifndef SELMER_TEST_DATA
#define SELMER_TEST_DATA "tests/data"
#endif

namespace {

CurveQ sm(long long a, long long b, std::string label) { return CurveQ::short_model(a, b, std::move(label)); }

const CurveQ x3mx = sm(-1, 0, "x3mx");
const CurveQ x3px = sm(1, 0, "x3px");
const CurveQ x3m3xm1 = sm(-3, -1, "x3m3xm1");
const CurveQ x3m2 = sm(0, -2, "x3m2");

int sum_h(const TwistCertificate& c, const std::string& curve) {
  int s = 0;
  for (const auto& l : c.local_reports) {
    if (l.curve == curve) s += l.report.h;
  }
  return s;
}

}  // namespace

TEST_SUITE("theorems") {
  TEST_CASE("multiquadratic test") {
    CHECK(multiquadratic_test(QElt{3, 0}, 2));
    CHECK_FALSE(multiquadratic_test(QElt{1, 1}, 2));
    CHECK_FALSE(multiquadratic_test(QElt{0, 1}, 2));  // N = -2, N D = -4
    CHECK(multiquadratic_test(QElt{2, 1}, 2));        // N = 2, N D = 4
  }

  TEST_CASE("case routing") {
    CHECK(classify_pair(x3mx, x3m3xm1) == TheoremCase::case2);
    CHECK(classify_pair(x3mx, x3m2) == TheoremCase::case2);
    CHECK(classify_pair(x3mx, x3px) == TheoremCase::case3);
    CHECK(classify_pair(x3m3xm1, x3m2) == TheoremCase::case1);
    CHECK_THROWS_AS(classify_pair(x3mx, sm(-4, 0, "x3m4x")), RefusedSameTorsionField);
    CHECK_THROWS_AS(classify_pair(x3m2, x3mx), Unsupported);
  }

  TEST_CASE("crucial trichotomy") {
    for (std::uint64_t q : {17, 41, 73}) {
      const auto r = crucial_trichotomy(x3mx, q);
      CHECK(r.clause == 1);
      CHECK(r.matches == 1);
      CHECK(r.clause_ii);
      CHECK(r.other_is_strict);
      CHECK(r.ok);
    }
    for (std::uint64_t q : {3, 5, 7}) {
      const auto r = crucial_trichotomy(x3mx, q);
      CHECK(r.clause == 3);
      CHECK(r.res_dim > 0);
      CHECK(r.twisted_rank_q <= r.rank);
      CHECK(r.twisted_rank_uq <= r.rank);
      CHECK(r.ok);
    }
    CHECK_THROWS_AS(crucial_trichotomy(x3mx, 2), InvalidInput);
  }

  TEST_CASE("case 2 certificate") {
    SearchBounds b;
    const auto c = demo_case2(x3mx, x3m3xm1, b);
    CHECK(c.ok());
    CHECK(c.q <= b.prime_bound);
    REQUIRE(c.gap_increase);
    CHECK(*c.gap_increase == 2);
    CHECK(sum_h(c, "x3mx") == 2);
    CHECK(sum_h(c, "x3m3xm1") == 0);
    for (const auto& l : c.local_reports) {
      if (l.curve == "x3m3xm1") CHECK(l.report.h == 0);
    }
    // rerunning reproduces the certificate
    const auto again = demo_case2(x3mx, x3m3xm1, b);
    CHECK(again.chi == c.chi);
    REQUIRE(again.ranks.size() == c.ranks.size());
    for (std::size_t i = 0; i < c.ranks.size(); ++i) CHECK(again.ranks[i].rank == c.ranks[i].rank);
  }

  TEST_CASE("case 3 certificate") {
    const auto c = demo_case3(x3mx, x3px, SearchBounds{});
    CHECK(c.ok());
    REQUIRE(c.gap_increase);
    CHECK(*c.gap_increase >= 2);
  }

  TEST_CASE("gap amplifier") {
    CHECK(gap_amplifier(x3mx, x3px, 0, SearchBounds{}).empty());
    const auto chain = gap_amplifier(x3mx, x3px, 4, SearchBounds{});
    CHECK(chain.size() <= 2);
    long total = 0;
    for (const auto& c : chain) {
      CHECK(c.ok());
      CHECK(c.case_label == chain.front().case_label);
      total += c.gap_increase.value_or(0);
    }
    CHECK(total >= 4);
  }

  TEST_CASE("case 1 certificate with ingested ranks") {
    const std::set<std::string> labels{"x3m3xm1", "x3m2"};
    const auto store = Datastore::load_file(SELMER_TEST_DATA "/case1.ranks", &labels);
    const auto c = demo_case1(x3m3xm1, x3m2, store, SearchBounds{});
    CHECK(c.ok());
    for (const auto& r : c.ranks) CHECK(r.provenance == Provenance::ingested);
    for (const auto& l : c.local_reports) {
      if (l.report.place.p() != c.q) CHECK(l.report.h == 0);
    }
    CHECK_THROWS_AS(demo_case1(x3m3xm1, x3m2, Datastore{}, SearchBounds{}), MissingIngestedRank);
  }

  TEST_CASE("P0 membership") {
    // x^3 - 2 has the root 3 mod 5
    CHECK_FALSE(in_P0(x3m3xm1, x3m2, 5));
    for (std::uint64_t q = 5; q < 500; q += 2) {
      if (!is_prime(q) || q == 3) continue;
      if (in_P0(x3m3xm1, x3m2, q)) {
        CHECK(prime_class(x3m3xm1, q) == 0);
        CHECK(prime_class(x3m2, q) == 0);
      }
    }
  }

  TEST_CASE("delta kernel") {
    const auto r = delta_kernel_sampling(x3m3xm1, x3m2, 100000, 50);
    CHECK(r.not_killed.empty());
    CHECK(r.subgroup_survives);
    CHECK(r.sample_primes.size() == 50);
    for (const auto& [cls, q] : r.killed) {
      CHECK(q < 100000);
      CHECK(in_P0(x3m3xm1, x3m2, q));
      CHECK(legendre(cls, q) == -1);
    }
  }
}
