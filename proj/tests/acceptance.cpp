// Acceptance run: one PASS/FAIL line per criterion, with wall time against its limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "selmer/arith.hpp"
#include "selmer/curves.hpp"
#include "selmer/descent.hpp"
#include "selmer/f2.hpp"
#include "selmer/local.hpp"
#include "selmer/theorems.hpp"

using namespace selmer;

namespace {

const CurveQ x3mx = CurveQ::short_model(-1, 0, "x3mx");
const CurveQ x3px = CurveQ::short_model(1, 0, "x3px");
const CurveQ x3m3xm1 = CurveQ::short_model(-3, -1, "x3m3xm1");
const CurveQ x3m2 = CurveQ::short_model(0, -2, "x3m2");

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<Place> hilbert_places(long long a, long long b) {
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

Outcome lagrangians() {
  std::ostringstream os;
  bool ok = true;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<F2Vector> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(F2Vector::unit(2 * n, 2 * i));
    const std::size_t c = count_disjoint_lagrangians(standard_metabolic(n), F2Subspace::span(2 * n, g));
    const std::size_t want = std::size_t{1} << (n * (n - 1) / 2);
    ok = ok && c == want;
    os << "n=" << n << ":" << c << " ";
  }
  return {ok, os.str()};
}

Outcome hilbert() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long long> dist(-10000, 10000);
  auto draw = [&] {
    long long x = 0;
    while (x == 0) x = dist(rng);
    return x;
  };
  int bad_product = 0, bad_sym = 0, bad_bilin = 0;
  for (int i = 0; i < 200; ++i) {
    const long long a = draw(), b = draw();
    int prod = 1;
    for (auto v : hilbert_places(a, b)) prod *= hilbert_symbol(a, b, v);
    bad_product += prod != 1;
  }
  const std::vector<Place> places{Place::infinity(), Place::prime(2), Place::prime(3),
                                  Place::prime(5),   Place::prime(7), Place::prime(97)};
  for (int i = 0; i < 200; ++i) {
    const long long a1 = draw(), a2 = draw(), b = draw();
    for (auto v : places) {
      bad_sym += hilbert_symbol(a1, b, v) != hilbert_symbol(b, a1, v);
      bad_bilin += hilbert_symbol(Rational(a1) * a2, b, v) != hilbert_symbol(a1, b, v) * hilbert_symbol(a2, b, v);
    }
  }
  std::ostringstream os;
  os << "product failures " << bad_product << "/200, symmetry " << bad_sym << ", bilinearity " << bad_bilin;
  return {bad_product == 0 && bad_sym == 0 && bad_bilin == 0, os.str()};
}

Outcome descent_oracle() {
  const auto s = selmer_group(x3mx, 1);
  const auto o = oracle::selmer({{-1, 0, 1}});
  std::vector<std::pair<long long, long long>> e;
  for (const auto& [a, b] : s.canonical_pairs()) e.emplace_back(static_cast<long long>(a), static_cast<long long>(b));
  std::sort(e.begin(), e.end());
  std::ostringstream os;
  os << "engine rank " << s.rank << ", oracle group order " << o.size();
  return {s.rank == 2 && o.size() == 4 && e == o, os.str()};
}

Outcome poitou_tate() {
  std::ostringstream os;
  bool ok = true;
  int found = 0;
  for (std::uint64_t q = 3; found < 5; q += 2) {
    if (!is_prime(q) || !has_good_reduction(x3mx, q) || prime_class(x3mx, q) != 2) continue;
    ++found;
    const auto r = verify_ptd(x3mx, 1, q);
    const auto relaxed = selmer_group(x3mx, 1, Backend::internal_only, nullptr, SelmerVariant::relaxed(q));
    const F2Subspace img = res_q(relaxed, q);
    bool isotropic = true;
    for (const auto& x : img.elements())
      for (const auto& y : img.elements()) isotropic = isotropic && !pairing_local(x, y, q);
    const bool here = r.relaxed == r.strict + 2 && img.dim() == 2 && isotropic && r.ok;
    ok = ok && here;
    os << "q=" << q << ":" << r.strict << "/" << r.relaxed << (here ? " " : "(x) ");
  }
  return {ok, os.str()};
}

Outcome parity() {
  std::ostringstream os;
  bool ok = true;
  for (const CurveQ* E : {&x3mx, &x3px}) {
    int passed = 0, failed = 0;
    Integer d = 1;
    while (passed + failed < 25) {
      ++d;
      if (!is_squarefree(d) || !is_admissible_twist(*E, d)) continue;
      (kramer_parity_check(*E, d).ok ? passed : failed)++;
    }
    ok = ok && failed == 0;
    os << E->label() << " " << passed << "/25 up to d=" << to_string(d) << "  ";
  }
  return {ok, os.str()};
}

Outcome trichotomy() {
  std::vector<std::uint64_t> c1, c3;
  int violations = 0;
  for (std::uint64_t q = 3; (c1.size() < 3 || c3.size() < 3) && q < 2000; q += 2) {
    if (!is_prime(q) || !has_good_reduction(x3mx, q) || prime_class(x3mx, q) != 2) continue;
    const auto r = crucial_trichotomy(x3mx, q);
    auto& bucket = r.clause == 1 ? c1 : c3;
    if (bucket.size() >= 3) continue;
    bucket.push_back(q);
    if (r.clause == 1 && !(r.matches == 1 && r.ok)) ++violations;
    if (r.clause == 3 && !(r.twisted_rank_q <= r.rank && r.twisted_rank_uq <= r.rank && r.ok)) ++violations;
  }
  std::ostringstream os;
  os << "clause (i) at";
  for (auto q : c1) os << " " << q;
  os << "; clause (iii) at";
  for (auto q : c3) os << " " << q;
  os << "; violations " << violations;
  return {c1.size() == 3 && c3.size() == 3 && violations == 0, os.str()};
}

Outcome case2() {
  SearchBounds b;
  b.prime_bound = 100000;
  const auto c = demo_case2(x3mx, x3m3xm1, b);
  std::size_t before = 0, after = 0;
  bool internal = true;
  for (const auto& r : c.ranks) {
    if (r.curve == "x3mx") before = r.rank;
    if (r.curve == "x3mx^" + to_string(c.chi.d())) after = r.rank;
    if (r.curve.rfind("x3mx", 0) == 0) internal = internal && r.provenance == Provenance::internal;
  }
  bool h_zero = true;
  for (const auto& l : c.local_reports) {
    if (l.curve == "x3m3xm1") h_zero = h_zero && l.report.h == 0;
  }
  std::ostringstream os;
  os << "chi_" << to_string(c.chi.d()) << ", q=" << c.q << ", r2(E) " << before << " -> " << after
     << ", all h_A = 0: " << (h_zero ? "yes" : "no");
  return {c.ok() && after == before + 2 && internal && h_zero && c.q <= b.prime_bound, os.str()};
}

Outcome case3() {
  SearchBounds b;
  b.twist_bound = 1000000;
  const auto chain = gap_amplifier(x3mx, x3px, 4, b);
  long gap = 0;
  bool ok = chain.size() <= 2;
  std::ostringstream os;
  for (const auto& c : chain) {
    ok = ok && c.ok();
    gap += c.gap_increase.value_or(0);
    os << "chi_" << to_string(c.chi.d()) << " ";
  }
  os << "rounds " << chain.size() << ", gap increase " << gap;
  return {ok && gap >= 4, os.str()};
}

Outcome delta_kernel() {
  const auto r = delta_kernel_sampling(x3m3xm1, x3m2, 100000, 50);
  std::map<Integer, std::uint64_t> killed(r.killed.begin(), r.killed.end());
  bool ok = r.not_killed.empty() && r.subgroup_survives && r.sample_primes.size() == 50;
  std::ostringstream os;
  for (long long c : {-1, 2, 3, -2, 6, -6}) {
    const auto it = killed.find(c);
    const bool here = it != killed.end() && it->second < 100000 && in_P0(x3m3xm1, x3m2, it->second) &&
                      legendre(Integer(c), it->second) == -1;
    ok = ok && here;
    os << c << "@" << (it == killed.end() ? 0 : it->second) << " ";
  }
  os << "; subgroup survives at " << r.sample_primes.size() << " primes: " << (r.subgroup_survives ? "yes" : "no");
  return {ok, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "Lagrangian counts", 1, lagrangians},
      {2, "Hilbert product formula", 5, hilbert},
      {3, "descent oracle", 10, descent_oracle},
      {4, "strict/relaxed identity", 120, poitou_tate},
      {5, "parity", 600, parity},
      {6, "trichotomy", 300, trichotomy},
      {7, "case 2 certificate", 300, case2},
      {8, "case 3 gap amplification", 900, case3},
      {9, "discriminant kernel sampling", 600, delta_kernel},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && dt <= c.limit_s;
    failures += !pass;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3fs (limit %.0fs)", dt, c.limit_s);
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.name << "  " << buf << "  "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
