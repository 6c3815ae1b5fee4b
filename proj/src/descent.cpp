#include "selmer/descent.hpp"

#include <algorithm>
#include <sstream>

#include "selmer/errors.hpp"

namespace selmer {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- Q(S,2)

F2Vector QS2Group::coords(const Rational& r) const {
  if (r == 0) throw InvalidInput("QS2Group::coords: zero");
  F2Vector c(basis.size());
  c.set(0, r < 0);
  Integer n = mp::abs(num(r)) * den(r);
  for (std::size_t i = 1; i < basis.size(); ++i) {
    const auto p = static_cast<std::uint64_t>(basis[i]);
    int v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    c.set(i, v % 2);
  }
  if (!is_rational_square(Rational(n))) throw InvalidInput("QS2Group::coords: " + to_string(r) + " has support outside S");
  return c;
}

Integer QS2Group::element(const F2Vector& c) const {
  Integer r = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (c.get(i)) r *= basis[i];
  }
  return r;
}

QS2Group qs2_basis(const std::vector<Place>& S) {
  QS2Group g;
  g.S = S;
  std::sort(g.S.begin(), g.S.end());
  g.S.erase(std::unique(g.S.begin(), g.S.end()), g.S.end());
  if (std::find(g.S.begin(), g.S.end(), Place::infinity()) == g.S.end() ||
      std::find(g.S.begin(), g.S.end(), Place::prime(2)) == g.S.end()) {
    throw InvalidInput("qs2_basis: S must contain infinity and 2");
  }
  g.basis.push_back(-1);
  for (const auto& v : g.S) {
    if (v.is_finite()) g.basis.push_back(v.p());
  }
  return g;
}

// ---------------------------------------------------------------- variants

SelmerVariant SelmerVariant::strict(std::uint64_t q) {
  SelmerVariant v;
  v.mode_ = Mode::strict;
  v.q_ = q;
  return v;
}

SelmerVariant SelmerVariant::relaxed(std::uint64_t q) {
  SelmerVariant v;
  v.mode_ = Mode::relaxed;
  v.q_ = q;
  return v;
}

SelmerVariant SelmerVariant::twisted(std::uint64_t q, LocalCharKind psi) {
  if (psi == LocalCharKind::other) throw InvalidInput("twisted variant: unsupported local character");
  SelmerVariant v;
  v.mode_ = Mode::twisted;
  v.q_ = q;
  v.psi_ = psi;
  return v;
}

SelmerVariant SelmerVariant::parse(const std::string& text) {
  if (text == "classical" || text.empty()) return classical();
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto prime = [&]() -> std::uint64_t {
    if (parts.size() < 2) throw InvalidInput("variant '" + text + "' needs a prime");
    try {
      std::size_t used = 0;
      const auto q = std::stoull(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
      return q;
    } catch (const std::exception&) {
      throw InvalidInput("variant '" + text + "': bad prime");
    }
  };
  if (parts[0] == "strict" && parts.size() == 2) return strict(prime());
  if (parts[0] == "relaxed" && parts.size() == 2) return relaxed(prime());
  if (parts[0] == "twisted" && parts.size() == 3) {
    const std::string& k = parts[2];
    if (k == "trivial") return twisted(prime(), LocalCharKind::trivial);
    if (k == "unramified") return twisted(prime(), LocalCharKind::unramified);
    if (k == "q") return twisted(prime(), LocalCharKind::ramified_q);
    if (k == "uq") return twisted(prime(), LocalCharKind::ramified_uq);
  }
  throw InvalidInput("unknown variant '" + text + "' (classical, strict:q, relaxed:q, twisted:q:{trivial,unramified,q,uq})");
}

std::string SelmerVariant::str() const {
  switch (mode_) {
    case Mode::classical:
      return "classical";
    case Mode::strict:
      return "strict:" + std::to_string(q_);
    case Mode::relaxed:
      return "relaxed:" + std::to_string(q_);
    case Mode::twisted: {
      std::string k = "trivial";
      if (psi_ == LocalCharKind::unramified) k = "unramified";
      if (psi_ == LocalCharKind::ramified_q) k = "q";
      if (psi_ == LocalCharKind::ramified_uq) k = "uq";
      return "twisted:" + std::to_string(q_) + ":" + k;
    }
  }
  return "?";
}

std::string to_string(Representation r) {
  switch (r) {
    case Representation::full_pairs:
      return "full-2-torsion pairs";
    case Representation::etale:
      return "etale";
    case Representation::opaque:
      return "opaque";
  }
  return "?";
}

std::string to_string(Provenance p) { return p == Provenance::internal ? "internal" : "ingested"; }

Backend parse_backend(const std::string& text) {
  if (text == "auto") return Backend::automatic;
  if (text == "internal" || text == "internal-only") return Backend::internal_only;
  if (text == "ingested") return Backend::ingested;
  throw InvalidInput("unknown backend '" + text + "' (auto, internal-only, ingested)");
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::automatic:
      return "auto";
    case Backend::internal_only:
      return "internal-only";
    case Backend::ingested:
      return "ingested";
  }
  return "?";
}

// ---------------------------------------------------------------- SelmerBasis

std::size_t SelmerBasis::ambient_dim() const {
  switch (representation) {
    case Representation::full_pairs:
      return 2 * rational.dim();
    case Representation::etale:
      return field_gens.size();
    case Representation::opaque:
      break;
  }
  return 0;
}

std::pair<Integer, Integer> SelmerBasis::pair(const F2Vector& element) const {
  if (representation != Representation::full_pairs) throw InvalidInput("SelmerBasis::pair: not a full-2-torsion group");
  const std::size_t n = rational.dim();
  return {rational.element(element.slice(0, n)), rational.element(element.slice(n, n))};
}

QElt SelmerBasis::field_element(const F2Vector& element) const {
  if (representation != Representation::etale) throw InvalidInput("SelmerBasis::field_element: not an etale group");
  const QuadField K(*field_D);
  QElt x{1, 0};
  for (std::size_t i = 0; i < field_gens.size(); ++i) {
    if (element.get(i)) x = K.mul(x, field_gens[i]);
  }
  return x;
}

F2Vector SelmerBasis::local_coords(const F2Vector& element, Place v) const {
  switch (representation) {
    case Representation::full_pairs: {
      const auto [d1, d2] = pair(element);
      return square_class_coords(Rational(d1), v).concat(square_class_coords(Rational(d2), v));
    }
    case Representation::etale:
      return QuadField(*field_D).local_coords(field_element(element), v);
    case Representation::opaque:
      break;
  }
  throw InvalidInput("local coordinates of an ingested Selmer group are not available");
}

std::vector<std::pair<Integer, Integer>> SelmerBasis::canonical_pairs() const {
  std::vector<std::pair<Integer, Integer>> out;
  for (const auto& e : elements.elements()) out.push_back(pair(e));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- descent core

namespace {

struct PlaceCondition {
  Place v = Place::infinity();
  std::vector<F2Vector> images;  // local coordinates of each ambient generator
  F2Subspace W;
};

F2Subspace solve(std::size_t ambient_dim, const std::vector<PlaceCondition>& conds) {
  std::vector<std::vector<bool>> cols(ambient_dim);
  for (const auto& c : conds) {
    const F2Subspace ann = c.W.annihilator();
    for (const auto& lambda : ann.basis()) {
      for (std::size_t i = 0; i < ambient_dim; ++i) cols[i].push_back(lambda.dot(c.images[i]));
    }
  }
  const std::size_t rows = ambient_dim ? cols[0].size() : 0;
  std::vector<F2Vector> images(ambient_dim, F2Vector(rows));
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    for (std::size_t r = 0; r < rows; ++r) images[i].set(r, cols[i][r]);
  }
  return kernel(images, ambient_dim);
}

std::vector<Place> base_places(const Cubic& f) {
  std::vector<Place> S{Place::infinity(), Place::prime(2)};
  for (auto p : prime_divisors(f.discriminant())) {
    if (p != 2) S.push_back(Place::prime(p));
  }
  return S;
}

void check_variant_prime(const Cubic& f, const SelmerVariant& variant) {
  if (variant.mode() == SelmerVariant::Mode::classical) return;
  const std::uint64_t q = variant.q();
  if (q == 2 || !is_prime(q)) throw InvalidInput("variant prime " + std::to_string(q) + " is not an odd prime");
  if (f.discriminant() % q == 0) throw InvalidInput("variant prime " + std::to_string(q) + " is a bad prime of the twist");
  if (local_root_count(f, Place::prime(q)) != 3) {
    throw InvalidInput("variant prime " + std::to_string(q) + " does not have full local 2-torsion");
  }
}

F2Subspace condition_at(const KummerMap& km, Place v, const SelmerVariant& variant, std::mt19937_64& rng) {
  if (variant.mode() != SelmerVariant::Mode::classical && v.is_finite() && v.p() == variant.q()) {
    const std::size_t n = km.local_dim(v);
    switch (variant.mode()) {
      case SelmerVariant::Mode::strict:
        return F2Subspace::zero(n);
      case SelmerVariant::Mode::relaxed:
        return F2Subspace::full(n);
      case SelmerVariant::Mode::twisted:
        return km.twisted(local_character_rep(variant.psi(), v.p())).local_image(v, rng);
      case SelmerVariant::Mode::classical:
        break;
    }
  }
  return km.local_image(v, rng);
}

void spot_check(const SelmerBasis& sel, const KummerMap& km, const DescentOptions& opt, std::mt19937_64& rng) {
  const Integer disc = km.cubic().discriminant();
  int done = 0;
  for (int attempt = 0; done < opt.spot_checks && attempt < 1000; ++attempt) {
    const std::uint64_t p = next_prime(3 + rng() % 500);
    if (disc % p == 0 || p == sel.variant.q()) continue;
    const Place v = Place::prime(p);
    const F2Subspace W = km.local_image(v, rng);
    for (const auto& b : sel.elements.basis()) {
      if (!W.contains(sel.local_coords(b, v))) {
        throw Error("descent: Selmer element fails the local condition at the good prime " + std::to_string(p));
      }
    }
    ++done;
  }
}

void check_cap(std::size_t dim, const DescentOptions& opt) {
  if (dim > opt.candidate_cap) {
    throw Unsupported("descent: ambient dimension " + std::to_string(dim) + " exceeds the candidate cap " +
                      std::to_string(opt.candidate_cap));
  }
}

}  // namespace

SelmerBasis complete_two_descent(const CurveQ& E, const Integer& d, const SelmerVariant& variant,
                                 const DescentOptions& opt) {
  if (d == 0 || !is_squarefree(d)) throw InvalidInput("twist " + to_string(d) + " is not a nonzero squarefree integer");
  const Cubic f = two_division_cubic(E).twist(d);
  const KummerMap km = KummerMap::from_cubic(f);
  if (!km.is_full()) throw InvalidInput("complete_two_descent: " + E.name() + " twisted by " + to_string(d) +
                                        " does not have full rational 2-torsion");
  check_variant_prime(f, variant);
  std::vector<Place> S = base_places(f);
  if (variant.mode() != SelmerVariant::Mode::classical) S.push_back(Place::prime(variant.q()));

  SelmerBasis sel(E);
  sel.twist = d;
  sel.variant = variant;
  sel.representation = Representation::full_pairs;
  sel.rational = qs2_basis(S);
  sel.S = sel.rational.S;
  sel.kummer = km;
  const std::size_t n = sel.rational.dim();
  check_cap(2 * n, opt);

  std::mt19937_64 rng(opt.seed);
  std::vector<PlaceCondition> conds;
  for (const auto& v : sel.S) {
    PlaceCondition c;
    c.v = v;
    const std::size_t dv = square_class_dim(v);
    for (std::size_t i = 0; i < n; ++i) {
      c.images.push_back(square_class_coords(Rational(sel.rational.basis[i]), v).concat(F2Vector(dv)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      c.images.push_back(F2Vector(dv).concat(square_class_coords(Rational(sel.rational.basis[i]), v)));
    }
    c.W = condition_at(km, v, variant, rng);
    conds.push_back(std::move(c));
  }
  sel.elements = solve(2 * n, conds);
  sel.rank = sel.elements.dim();
  sel.source = "complete 2-descent";
  spot_check(sel, km, opt, rng);
  return sel;
}

SelmerBasis quadratic_field_descent(const CurveQ& E, const Integer& d, const SelmerVariant& variant,
                                    const DescentOptions& opt) {
  if (d == 0 || !is_squarefree(d)) throw InvalidInput("twist " + to_string(d) + " is not a nonzero squarefree integer");
  const Cubic f = two_division_cubic(E).twist(d);
  if (f.integer_roots().size() != 1) {
    throw InvalidInput("quadratic_field_descent: " + E.name() + " twisted by " + to_string(d) +
                       " does not have exactly one rational 2-torsion point");
  }
  const KummerMap km = KummerMap::from_cubic(f);
  const QuadField& K = km.field();
  if (mp::abs(K.D()) > 1000000) {
    throw Unsupported("quadratic_field_descent: |D| = " + to_string(Integer(mp::abs(K.D()))) + " exceeds 10^6; ingest the rank instead");
  }
  check_variant_prime(f, variant);
  std::vector<Place> S = base_places(f);
  if (variant.mode() != SelmerVariant::Mode::classical) S.push_back(Place::prime(variant.q()));
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::vector<std::uint64_t> S_fin;
  for (const auto& v : S) {
    if (v.is_finite()) S_fin.push_back(v.p());
  }

  SelmerBasis sel(E);
  sel.twist = d;
  sel.variant = variant;
  sel.representation = Representation::etale;
  sel.S = S;
  sel.rational = qs2_basis(S);
  sel.field_D = K.D();
  check_cap(expected_ks2_dim(K, S_fin), opt);
  sel.field_gens = ks2_basis(K, S_fin);
  sel.kummer = km;

  std::mt19937_64 rng(opt.seed);
  std::vector<PlaceCondition> conds;
  for (const auto& v : S) {
    PlaceCondition c;
    c.v = v;
    for (const auto& g : sel.field_gens) c.images.push_back(K.local_coords(g, v));
    c.W = condition_at(km, v, variant, rng);
    conds.push_back(std::move(c));
  }
  sel.elements = solve(sel.field_gens.size(), conds);
  sel.rank = sel.elements.dim();
  sel.source = "descent over Q x Q(sqrt " + to_string(K.D()) + ")";
  spot_check(sel, km, opt, rng);
  return sel;
}

SelmerBasis selmer_group(const CurveQ& E, const Integer& d, Backend backend, const Datastore* store,
                   const SelmerVariant& variant, const DescentOptions& opt) {
  if (d == 0 || !is_squarefree(d)) throw InvalidInput("twist " + to_string(d) + " is not a nonzero squarefree integer");
  const std::size_t roots = two_division_cubic(E).twist(d).integer_roots().size();
  const bool explicit_ok = roots == 3 || roots == 1;
  if (backend != Backend::ingested && explicit_ok) {
    return roots == 3 ? complete_two_descent(E, d, variant, opt) : quadratic_field_descent(E, d, variant, opt);
  }
  const std::string record = E.label() + " : " + to_string(d) + " : ?";
  if (backend == Backend::internal_only) {
    throw MissingIngestedRank("no internal descent for " + E.name() + " (irreducible 2-division cubic); add the record '" +
                                  record + "' to a datastore",
                              record);
  }
  if (variant.mode() != SelmerVariant::Mode::classical) {
    throw Unsupported("variant Selmer groups need an explicit backend");
  }
  const std::optional<int> r = store ? store->rank(E.label(), d) : std::nullopt;
  if (!r) {
    throw MissingIngestedRank("no ingested 2-Selmer rank for " + E.name() + " twisted by " + to_string(d) +
                                  "; add the record '" + record + "'",
                              record);
  }
  SelmerBasis sel(E);
  sel.twist = d;
  sel.variant = variant;
  sel.representation = Representation::opaque;
  sel.provenance = Provenance::ingested;
  sel.source = store->source();
  sel.rank = static_cast<std::size_t>(*r);
  return sel;
}

// ---------------------------------------------------------------- restriction

namespace {

void check_res_prime(const SelmerBasis& sel, std::uint64_t q) {
  if (sel.representation == Representation::opaque) throw InvalidInput("res_q: ingested Selmer group has no explicit elements");
  if (q == 2 || !is_prime(q)) throw InvalidInput("res_q: " + std::to_string(q) + " is not an odd prime");
  const Cubic& f = sel.kummer->cubic();
  if (f.discriminant() % q == 0 || local_root_count(f, Place::prime(q)) != 3) {
    throw InvalidInput("res_q: " + std::to_string(q) + " is not a good prime with full local 2-torsion");
  }
}

}  // namespace

F2Vector res_q(const SelmerBasis& sel, const F2Vector& element, std::uint64_t q) {
  check_res_prime(sel, q);
  return sel.local_coords(element, Place::prime(q));
}

std::pair<SquareClass, SquareClass> res_q_classes(const SelmerBasis& sel, const F2Vector& element, std::uint64_t q) {
  const F2Vector c = res_q(sel, element, q);
  const Place v = Place::prime(q);
  return {square_class_from_coords(c.slice(0, 2), v), square_class_from_coords(c.slice(2, 2), v)};
}

F2Subspace res_q(const SelmerBasis& sel, std::uint64_t q) {
  check_res_prime(sel, q);
  F2Subspace out = F2Subspace::zero(4);
  for (const auto& b : sel.elements.basis()) out.insert(res_q(sel, b, q));
  return out;
}

PtdReport verify_ptd(const CurveQ& E, const Integer& d, std::uint64_t q, const DescentOptions& opt) {
  PtdReport r;
  r.q = q;
  const SelmerBasis strict = selmer_group(E, d, Backend::internal_only, nullptr, SelmerVariant::strict(q), opt);
  const SelmerBasis classical = selmer_group(E, d, Backend::internal_only, nullptr, SelmerVariant::classical(), opt);
  const SelmerBasis relaxed = selmer_group(E, d, Backend::internal_only, nullptr, SelmerVariant::relaxed(q), opt);
  r.strict = strict.rank;
  r.classical = classical.rank;
  r.relaxed = relaxed.rank;
  r.res_classical_dim = res_q(classical, q).dim();
  const F2Subspace res = res_q(relaxed, q);
  r.res_relaxed_dim = res.dim();
  r.res_relaxed_isotropic = true;
  for (const auto& x : res.basis()) {
    for (const auto& y : res.basis()) {
      if (pairing_local(x, y, q)) r.res_relaxed_isotropic = false;
    }
  }
  r.ok = r.relaxed == r.strict + 2 && r.relaxed >= r.classical && r.classical >= r.strict && r.res_relaxed_dim == 2 &&
         r.res_relaxed_isotropic;
  return r;
}

bool is_admissible_twist(const CurveQ& E, const Integer& d) {
  if (local_character(d, Place::infinity()) != LocalCharKind::trivial) return false;
  if (local_character(d, Place::prime(2)) != LocalCharKind::trivial) return false;
  for (auto p : bad_primes(E)) {
    if (local_character(d, Place::prime(p)) != LocalCharKind::trivial) return false;
  }
  return true;
}

ParityReport kramer_parity_check(const CurveQ& E, const Integer& d, const DescentOptions& opt, const Datastore* store) {
  if (d == 0 || !is_squarefree(d)) throw InvalidInput("twist " + to_string(d) + " is not a nonzero squarefree integer");
  if (!is_admissible_twist(E, d)) {
    throw Unsupported("kramer_parity_check: chi_" + to_string(d) + " is not trivial at infinity, 2 and the bad primes of " +
                      E.name());
  }
  ParityReport r;
  r.d = d;
  r.rank_E = selmer_group(E, 1, Backend::automatic, store, SelmerVariant::classical(), opt).rank;
  r.rank_twist = selmer_group(E, d, Backend::automatic, store, SelmerVariant::classical(), opt).rank;
  for (auto p : prime_divisors(d)) {
    const Place v = Place::prime(p);
    const int h = h_value(E, v, local_character(d, v));
    r.h_values.emplace_back(v, h);
    r.sum_h += h;
  }
  r.ok = (r.rank_E + r.rank_twist + static_cast<std::size_t>(r.sum_h)) % 2 == 0;
  return r;
}

}  // namespace selmer
