#include "selmer/characters.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "selmer/errors.hpp"

namespace selmer {

QuadChar::QuadChar(Integer d) : d_(std::move(d)) {
  if (d_ == 0) throw InvalidInput("QuadChar: d = 0");
  if (!is_squarefree(d_)) throw InvalidInput("QuadChar: " + to_string(d_) + " is not squarefree");
}

std::string QuadChar::str() const { return "chi_" + to_string(d_); }

int chi_local_value(const QuadChar& chi, Place v, const Rational& r) {
  if (r == 0) throw InvalidInput("chi_local_value: r = 0");
  return hilbert_symbol(Rational(chi.d()), r, v);
}

bool is_ramified_at(const QuadChar& chi, Place v) {
  if (v.is_infinite()) throw InvalidInput("is_ramified_at: infinite place");
  const std::uint64_t p = v.p();
  if (p != 2) return chi.d() % p == 0;
  // Units of Q_2 modulo squares are generated by -1 and 5.
  return chi_local_value(chi, v, -1) == -1 || chi_local_value(chi, v, 5) == -1;
}

// ---------------------------------------------------------------- predicates

PrimePredicate PrimePredicate::congruence(std::int64_t r, std::uint64_t m) {
  if (m == 0) throw InvalidInput("congruence: modulus 0");
  const std::uint64_t rr = mod(Integer(r), m);
  PrimePredicate p;
  p.name_ = "q = " + std::to_string(rr) + " mod " + std::to_string(m);
  p.test_ = [rr, m](std::uint64_t q) { return q % m == rr; };
  p.cong_ = std::make_pair(rr, m);
  return p;
}

PrimePredicate PrimePredicate::legendre_is(Integer a, int eps) {
  if (eps != 1 && eps != -1) throw InvalidInput("legendre_is: eps must be +1 or -1");
  PrimePredicate p;
  p.name_ = "(" + to_string(a) + "|q) = " + std::to_string(eps);
  p.test_ = [a = std::move(a), eps](std::uint64_t q) { return legendre(a, q) == eps; };
  return p;
}

PrimePredicate PrimePredicate::squares(std::vector<Rational> rs) {
  PrimePredicate p;
  std::ostringstream os;
  os << "squares mod q:";
  for (const auto& r : rs) os << ' ' << to_string(r);
  p.name_ = os.str();
  p.test_ = [rs = std::move(rs)](std::uint64_t q) {
    for (const auto& r : rs) {
      if (r == 0 || valuation(r, q) != 0) return false;
      if (legendre(Integer(mod(r, q)), q) != 1) return false;
    }
    return true;
  };
  return p;
}

PrimePredicate PrimePredicate::cubic_type(Cubic f, CubicSplitting type) {
  PrimePredicate p;
  p.name_ = f.str() + " " + to_string(type) + " mod q";
  const Integer disc = f.discriminant();
  p.test_ = [f = std::move(f), type, disc](std::uint64_t q) {
    if (disc % q == 0) return false;
    const int roots = root_count_mod(f, q);
    switch (type) {
      case CubicSplitting::three_linear:
        return roots == 3;
      case CubicSplitting::linear_quadratic:
        return roots == 1;
      case CubicSplitting::irreducible:
        return roots == 0;
    }
    return false;
  };
  return p;
}

PrimePredicate PrimePredicate::four_torsion_local(CurveQ E) {
  PrimePredicate p;
  p.name_ = "E[4] locally rational for " + E.name();
  p.test_ = [E = std::move(E)](std::uint64_t q) { return has_good_reduction(E, q) && is_four_torsion_local(E, q); };
  return p;
}

PrimePredicate PrimePredicate::custom(std::string name, std::function<bool(std::uint64_t)> test) {
  PrimePredicate p;
  p.name_ = std::move(name);
  p.test_ = std::move(test);
  return p;
}

namespace {

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

// a x = 1 mod m via extended gcd; a and m coprime.
Integer inv(const Integer& a, const Integer& m) {
  Integer r0 = floor_mod(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return floor_mod(s0, m);
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> combine_congruences(const std::vector<PrimePredicate>& preds) {
  Integer r = 0, m = 1;
  for (const auto& p : preds) {
    if (!p.modulus()) continue;
    const Integer r2 = p.modulus()->first, m2 = p.modulus()->second;
    const Integer g = boost::multiprecision::gcd(m, m2);
    if ((r2 - r) % g != 0) throw InvalidInput("find_prime: inconsistent congruences (" + p.name() + ")");
    const Integer m2g = m2 / g;
    const Integer k = m2g == 1 ? Integer(0) : floor_mod(((r2 - r) / g) * inv(m / g, m2g), m2g);
    r = r + m * k;
    m = m * m2g;
    r = floor_mod(r, m);
    if (m > Integer(std::numeric_limits<std::uint64_t>::max() / 4)) throw InvalidInput("find_prime: combined modulus too large");
  }
  return {static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(m)};
}

std::uint64_t find_prime(const std::vector<PrimePredicate>& preds, std::uint64_t bound,
                         const std::vector<std::uint64_t>& exclude, std::uint64_t start) {
  const auto [r, m] = combine_congruences(preds);
  if (std::gcd(r, m) != 1) {
    // Only a prime dividing m could satisfy the congruence.
    const std::uint64_t g = std::gcd(r, m);
    if (!is_prime(g) || g % 2 == 0 || g < start || g > bound) {
      throw NotFound("find_prime: congruence " + std::to_string(r) + " mod " + std::to_string(m) +
                     " admits no odd prime in [" + std::to_string(start) + ", " + std::to_string(bound) + "]");
    }
  }
  for (std::uint64_t q = std::max<std::uint64_t>(start, 3); q <= bound; ++q) {
    if (q % m != r || !is_prime(q)) continue;
    if (std::find(exclude.begin(), exclude.end(), q) != exclude.end()) continue;
    bool ok = true;
    for (const auto& p : preds) {
      if (!p(q)) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  std::ostringstream os;
  os << "find_prime: no prime in [" << start << ", " << bound << "] satisfies";
  for (const auto& p : preds) os << " {" << p.name() << "}";
  throw NotFound(os.str());
}

// ---------------------------------------------------------------- construction

bool LocalPrescription::satisfied_by(const Integer& d) const {
  const LocalCharKind k = local_character(d, place);
  using R = Requirement;
  switch (requirement) {
    case R::trivial:
      return k == LocalCharKind::trivial;
    case R::unramified:
      if (place.is_infinite()) return true;
      return k == LocalCharKind::trivial || k == LocalCharKind::unramified;
    case R::unramified_nontrivial:
      return k == LocalCharKind::unramified;
    case R::ramified:
      if (place.is_infinite()) return k != LocalCharKind::trivial;
      return is_ramified_at(QuadChar(squarefree_part(d)), place);
    case R::ramified_class:
      return k == target;
  }
  return false;
}

std::string LocalPrescription::str() const {
  using R = Requirement;
  std::string r;
  switch (requirement) {
    case R::trivial:
      r = "trivial";
      break;
    case R::unramified:
      r = "unramified";
      break;
    case R::unramified_nontrivial:
      r = "unramified nontrivial";
      break;
    case R::ramified:
      r = "ramified";
      break;
    case R::ramified_class:
      r = to_string(target);
      break;
  }
  return r + " at " + place.str();
}

ConstructedCharacter construct_global_character(const std::vector<Place>& S,
                                                const std::vector<LocalPrescription>& prescriptions,
                                                const RelaxSet& relax_set, std::uint64_t bound) {
  using R = LocalPrescription::Requirement;
  const LocalPrescription* at_ell = nullptr;
  for (const auto& p : prescriptions) {
    const bool in_S = std::find(S.begin(), S.end(), p.place) != S.end();
    if (in_S) continue;
    if (p.place.is_infinite() || p.place.p() == 2) throw InvalidInput("construct_global_character: " + p.str() + " outside S");
    if (at_ell) throw InvalidInput("construct_global_character: more than one designated prime");
    at_ell = &p;
  }
  if (!at_ell) throw InvalidInput("construct_global_character: no designated prime");
  if (at_ell->requirement == R::trivial || at_ell->requirement == R::unramified) {
    throw InvalidInput("construct_global_character: the designated prime needs a nontrivial prescription");
  }
  std::vector<LocalPrescription> all = prescriptions;
  for (const auto& v : S) {
    const bool covered = std::any_of(prescriptions.begin(), prescriptions.end(),
                                     [&](const LocalPrescription& p) { return p.place == v; });
    if (!covered) all.push_back({v, R::trivial, LocalCharKind::trivial});
  }
  const std::uint64_t ell = at_ell->place.p();
  const bool extension = at_ell->requirement == R::unramified_nontrivial;

  std::vector<std::string> failures;
  auto check = [&](const Integer& d) {
    for (const auto& p : all) {
      if (!p.satisfied_by(d)) {
        if (failures.size() < 6) failures.push_back("d = " + to_string(d) + " fails " + p.str());
        return false;
      }
    }
    return true;
  };
  auto finish = [&](const Integer& d, std::vector<std::uint64_t> aux) {
    return ConstructedCharacter{QuadChar(d), ell, std::move(aux), extension};
  };

  if (!extension) {
    for (const Integer& d : {Integer(ell), Integer(-Integer(ell))}) {
      if (check(d)) return finish(d, {});
    }
  }
  if (relax_set) {
    for (std::uint64_t r = 3; r <= bound; r += 2) {
      if (r == ell || !is_prime(r) || std::find(S.begin(), S.end(), Place::prime(r)) != S.end()) continue;
      if (!relax_set(r)) continue;
      const Integer base = extension ? Integer(r) : Integer(ell) * r;
      for (const Integer& d : {base, Integer(-base)}) {
        if (check(d)) return finish(d, {r});
      }
    }
  }
  std::ostringstream os;
  os << "construct_global_character: no admissible d for " << at_ell->str()
     << (relax_set ? " with auxiliary primes up to " + std::to_string(bound) : std::string(" without auxiliary primes"));
  for (const auto& f : failures) os << "; " << f;
  throw NotRepresentable(os.str());
}

}  // namespace selmer
