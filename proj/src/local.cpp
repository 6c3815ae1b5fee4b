#include "selmer/local.hpp"

#include <algorithm>

#include "selmer/errors.hpp"

namespace selmer {

namespace {

using IntPoly = std::vector<Integer>;  // lowest degree first

Integer eval(const IntPoly& g, const Integer& x) {
  Integer acc = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly derivative(const IntPoly& g) {
  IntPoly d;
  for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * static_cast<unsigned>(i));
  return d;
}

// g(r + p y) as a polynomial in y.
IntPoly shift_scale(const IntPoly& g, const Integer& r, const Integer& p) {
  IntPoly h{0};
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    IntPoly next(h.size() + 1, 0);
    for (std::size_t i = 0; i < h.size(); ++i) {
      next[i] += h[i] * r;
      next[i + 1] += h[i] * p;
    }
    next[0] += *it;
    h = std::move(next);
  }
  while (h.size() > 1 && h.back() == 0) h.pop_back();
  return h;
}

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer old_r = floor_mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error("inverse_mod: not invertible");
  return floor_mod(old_s, m);
}

void panayi(IntPoly g, std::uint64_t p, int k, const Integer& prefix, const Integer& scale, int depth,
            std::vector<Integer>& out) {
  const Integer P = p;
  int v = kInfiniteValuation;
  for (const auto& c : g) {
    if (c != 0) v = std::min(v, valuation(c, p));
  }
  if (v == kInfiniteValuation) throw Error("padic_roots: zero polynomial");
  if (v > 0) {
    const Integer pv = ipow(P, static_cast<unsigned>(v));
    for (auto& c : g) c /= pv;
  }
  PolyP gp;
  for (const auto& c : g) gp.push_back(mod(c, p));
  polyp::trim(gp);
  if (polyp::degree(gp) <= 0) return;
  const IntPoly dg = derivative(g);
  const Integer pk = ipow(P, static_cast<unsigned>(k));
  for (auto r : polyp::roots(gp, p)) {
    const Integer R = r;
    if (mod(eval(dg, R), p) != 0) {
      // Simple root: Newton iteration to precision p^k.
      Integer x = R;
      for (int prec = 1; prec < k;) {
        prec = std::min(2 * prec, k);
        const Integer m = ipow(P, static_cast<unsigned>(prec));
        x = floor_mod(x - eval(g, x) * inverse_mod(eval(dg, x), m), m);
      }
      out.push_back(floor_mod(prefix + scale * x, pk));
    } else if (depth >= k) {
      out.push_back(floor_mod(prefix + scale * R, pk));
    } else {
      panayi(shift_scale(g, R, P), p, k, prefix + scale * R, scale * P, depth + 1, out);
    }
  }
}

}  // namespace

std::vector<Integer> padic_roots(const Cubic& f, std::uint64_t p, int k) {
  if (!is_prime(p)) throw InvalidInput("padic_roots: " + std::to_string(p) + " is not prime");
  std::vector<Integer> out;
  panayi({f.c, f.b, f.a, 1}, p, k, 0, 1, 1, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int local_root_count(const Cubic& f, Place v) {
  const Integer disc = f.discriminant();
  if (disc == 0) throw InvalidInput("local_root_count: repeated root");
  if (v.is_infinite()) return disc > 0 ? 3 : 1;
  const std::uint64_t p = v.p();
  if (disc % p != 0) return static_cast<int>(polyp::roots(f.mod(p), p).size());
  return static_cast<int>(padic_roots(f, p, valuation(disc, p) + 4).size());
}

namespace {

int dim_from_roots(int roots) { return roots == 3 ? 2 : (roots == 1 ? 1 : 0); }

void require_odd_good(const CurveQ& E, std::uint64_t q) {
  if (q == 2 || !is_prime(q)) throw InvalidInput(std::to_string(q) + " is not an odd prime");
  if (!has_good_reduction(E, q)) throw InvalidInput(E.name() + " has bad reduction at " + std::to_string(q));
}

}  // namespace

int local_two_torsion_dim(const CurveQ& E, Place v) {
  return dim_from_roots(local_root_count(two_division_cubic(E), v));
}

int frobenius_order_on_M(const CurveQ& E, std::uint64_t q) {
  require_odd_good(E, q);
  const int roots = local_root_count(two_division_cubic(E), Place::prime(q));
  return roots == 3 ? 1 : (roots == 1 ? 2 : 3);
}

int prime_class(const CurveQ& E, std::uint64_t q) {
  require_odd_good(E, q);
  return local_two_torsion_dim(E, Place::prime(q));
}

int dim_local_kummer(const CurveQ& E, const Integer& d, Place v) {
  const int t = dim_from_roots(local_root_count(two_division_cubic(E).twist(d), v));
  if (v.is_infinite()) return std::max(t - 1, 0);
  return v.p() == 2 ? t + 1 : t;
}

std::string to_string(LocalCharKind k) {
  switch (k) {
    case LocalCharKind::trivial:
      return "trivial";
    case LocalCharKind::unramified:
      return "unramified";
    case LocalCharKind::ramified_q:
      return "ramified(q)";
    case LocalCharKind::ramified_uq:
      return "ramified(uq)";
    case LocalCharKind::other:
      return "nontrivial";
  }
  return "?";
}

LocalCharKind local_character(const Integer& d, Place v) {
  if (d == 0) throw InvalidInput("local_character: d = 0");
  if (v.is_infinite()) return d > 0 ? LocalCharKind::trivial : LocalCharKind::other;
  const std::uint64_t p = v.p();
  if (p == 2) {
    const int val = valuation(d, 2);
    if (val % 2) return LocalCharKind::other;
    const auto r = mod(Integer(d >> val), 8);
    if (r == 1) return LocalCharKind::trivial;
    if (r == 5) return LocalCharKind::unramified;
    return LocalCharKind::other;
  }
  const F2Vector c = square_class_coords(Rational(d), v);
  if (!c.get(0)) return c.get(1) ? LocalCharKind::unramified : LocalCharKind::trivial;
  return c.get(1) ? LocalCharKind::ramified_uq : LocalCharKind::ramified_q;
}

Integer local_character_rep(LocalCharKind k, std::uint64_t q) {
  switch (k) {
    case LocalCharKind::trivial:
      return 1;
    case LocalCharKind::unramified:
      return least_nonresidue(q);
    case LocalCharKind::ramified_q:
      return q;
    case LocalCharKind::ramified_uq:
      return Integer(least_nonresidue(q)) * q;
    case LocalCharKind::other:
      break;
  }
  throw InvalidInput("local_character_rep: no representative for this kind");
}

int h_value(const CurveQ& E, Place v, LocalCharKind chi) {
  if (chi == LocalCharKind::trivial) return 0;
  if (v.is_finite() && v.p() != 2) {
    const int dim = local_two_torsion_dim(E, v);
    if (dim == 0) return 0;
    if (has_good_reduction(E, v.p())) {
      if (chi == LocalCharKind::unramified) return 0;
      if (chi == LocalCharKind::ramified_q || chi == LocalCharKind::ramified_uq) return dim;
    }
  }
  throw Unsupported("h_value: nontrivial character at " + v.str() + ", a place of bad reduction or above 2");
}

LocalConditionReport local_condition_report(const CurveQ& E, const Integer& d, Place v) {
  LocalConditionReport r;
  r.place = v;
  r.dim_beta_trivial = dim_local_kummer(E, 1, v);
  r.dim_beta_chi = dim_local_kummer(E, d, v);
  r.h = h_value(E, v, local_character(d, v));
  if (v.is_finite() && v.p() != 2 && has_good_reduction(E, v.p())) r.prime_class = prime_class(E, v.p());
  return r;
}

// ---------------------------------------------------------------- KummerMap

KummerMap KummerMap::full(std::array<Integer, 3> roots) {
  KummerMap k;
  k.full_ = true;
  k.roots_ = roots;
  const Integer &e1 = roots[0], &e2 = roots[1], &e3 = roots[2];
  k.f_ = {-(e1 + e2 + e3), e1 * e2 + e1 * e3 + e2 * e3, -e1 * e2 * e3};
  if (k.f_.discriminant() == 0) throw InvalidInput("KummerMap: repeated root");
  return k;
}

KummerMap KummerMap::quadratic(Integer e, Integer s, Integer m, Integer D) {
  KummerMap k;
  k.full_ = false;
  const Integer four_t = s * s - m * m * D;
  if (four_t % 4 != 0) throw InvalidInput("KummerMap: non-integral quadratic factor");
  const Integer t = four_t / 4;
  k.f_ = {s - e, t - e * s, -e * t};
  k.e_ = std::move(e);
  k.s_ = std::move(s);
  k.m_ = std::move(m);
  k.roots_ = {k.e_, 0, 0};
  k.field_.emplace(std::move(D));
  if (k.f_.discriminant() == 0) throw InvalidInput("KummerMap: repeated root");
  return k;
}

KummerMap KummerMap::from_cubic(const Cubic& f) {
  const auto r = f.integer_roots();
  if (r.size() == 3) return full({r[0], r[1], r[2]});
  if (r.size() != 1) throw Unsupported("KummerMap: cubic " + f.str() + " has no rational root");
  const Integer& e = r[0];
  const Integer s = f.a + e;
  const Integer t = f.b + e * s;
  const Integer D0 = s * s - 4 * t;
  const Integer D = squarefree_part(D0);
  const Integer m = boost::multiprecision::sqrt(Integer(D0 / D));
  return quadratic(e, s, m, D);
}

KummerMap KummerMap::twisted(const Integer& psi) const {
  if (psi == 0) throw InvalidInput("KummerMap::twisted: zero");
  if (full_) return full({roots_[0] * psi, roots_[1] * psi, roots_[2] * psi});
  return quadratic(e_ * psi, s_ * psi, m_ * psi, field_->D());
}

std::size_t KummerMap::local_dim(Place v) const {
  return full_ ? 2 * square_class_dim(v) : field_->local_dim(v);
}

F2Vector KummerMap::point_coords(const Rational& x, Place v) const {
  if (full_) {
    const Rational e1(roots_[0]), e2(roots_[1]), e3(roots_[2]);
    Rational c1 = x - e1, c2 = x - e2;
    if (x == e1) c1 = (e1 - e2) * (e1 - e3);
    if (x == e2) c2 = (e2 - e1) * (e2 - e3);
    return square_class_coords(c1, v).concat(square_class_coords(c2, v));
  }
  // x - theta = (x + s/2) - (m/2) sqrt D
  return field_->local_coords({x + Rational(s_, 2), Rational(-m_, 2)}, v);
}

std::vector<F2Vector> KummerMap::torsion_coords(Place v) const {
  if (full_) return {point_coords(Rational(roots_[0]), v), point_coords(Rational(roots_[1]), v),
                     point_coords(Rational(roots_[2]), v)};
  return {point_coords(Rational(e_), v)};
}

int KummerMap::target_dim(Place v) const {
  const int t = dim_from_roots(local_root_count(f_, v));
  if (v.is_infinite()) return std::max(t - 1, 0);
  return v.p() == 2 ? t + 1 : t;
}

namespace {

Integer random_below(const Integer& n, std::mt19937_64& rng) {
  Integer r = 0;
  for (Integer span = 1; span < n * 1024; span <<= 64) r = (r << 64) | Integer(rng());
  return r % n;
}

Rational eval_cubic(const Cubic& f, const Rational& x) {
  return ((x + Rational(f.a)) * x + Rational(f.b)) * x + Rational(f.c);
}

}  // namespace

F2Subspace KummerMap::local_image(Place v, std::mt19937_64& rng) const {
  const std::size_t target = static_cast<std::size_t>(target_dim(v));
  F2Subspace W = F2Subspace::zero(local_dim(v));
  for (const auto& c : torsion_coords(v)) W.insert(c);
  auto consider = [&](const Rational& x) {
    const Rational fx = eval_cubic(f_, x);
    if (fx == 0 || !is_square_in_Qv(fx, v)) return false;
    W.insert(point_coords(x, v));
    if (W.dim() > target) throw Error("local_image: image exceeds the local dimension at " + v.str());
    return W.dim() == target;
  };
  if (W.dim() > target) throw Error("local_image: torsion image exceeds the local dimension at " + v.str());
  if (W.dim() == target) return W;
  if (v.is_infinite()) {
    // Three real roots; the bounded component meets x = -s/2 when e is the largest root.
    if (!full_ && consider(Rational(-s_, 2))) return W;
    const auto r = f_.integer_roots();
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      if (consider(Rational(r[i] + r[i + 1], 2))) return W;
    }
    throw PrecisionExhausted("local_image: no point on the bounded real component found");
  }
  const std::uint64_t p = v.p();
  const Integer P = p;
  for (int prec = 3; prec <= 24; prec *= 2) {
    const Integer pk = ipow(P, static_cast<unsigned>(prec));
    std::vector<Integer> centers{0};
    if (full_) {
      centers.insert(centers.end(), roots_.begin(), roots_.end());
    } else {
      centers.push_back(e_);
    }
    for (const auto& r : padic_roots(f_, p, prec)) centers.push_back(r);
    const Integer spread = ipow(P, static_cast<unsigned>(std::min(prec, 3)));
    for (int round = 0; round < 4; ++round) {
      for (const auto& c : centers) {
        Integer pj = 1;
        for (int j = 0; j <= prec; ++j, pj *= P) {
          if (consider(Rational(c + pj * random_below(spread, rng)))) return W;
        }
      }
      Integer p2j = P * P;
      for (int j = 1; j <= prec / 2; ++j, p2j *= P * P) {
        Integer t = random_below(spread, rng);
        if (t % p == 0) t += 1;
        if (consider(Rational(t, p2j))) return W;
      }
      for (int i = 0; i < 8; ++i) {
        if (consider(Rational(random_below(pk, rng)))) return W;
      }
    }
  }
  throw PrecisionExhausted("local_image: reached dimension " + std::to_string(W.dim()) + " of " +
                           std::to_string(target) + " at " + v.str() + " for y^2 = " + f_.str());
}

// ---------------------------------------------------------------- pairing

bool pairing_local(const std::pair<SquareClass, SquareClass>& x, const std::pair<SquareClass, SquareClass>& y,
                   std::uint64_t q) {
  for (const auto* c : {&x.first, &x.second, &y.first, &y.second}) {
    if (c->place.is_infinite() || c->place.p() != q) throw InvalidInput("pairing_local: classes at different places");
  }
  const Place v = Place::prime(q);
  const int s = hilbert_symbol(Rational(x.first.rep), Rational(y.second.rep), v) *
                hilbert_symbol(Rational(x.second.rep), Rational(y.first.rep), v);
  return s == -1;
}

bool pairing_local(const F2Vector& x, const F2Vector& y, std::uint64_t q) {
  if (x.dim() != 4 || y.dim() != 4) throw DimensionMismatch("pairing_local: expected 4 coordinates");
  if (q == 2) throw InvalidInput("pairing_local: q must be odd");
  const Place v = Place::prime(q);
  auto cls = [&](const F2Vector& z, std::size_t off) { return square_class_from_coords(z.slice(off, 2), v); };
  return pairing_local({cls(x, 0), cls(x, 2)}, {cls(y, 0), cls(y, 2)}, q);
}

LocalKummerImage local_kummer_image(const CurveQ& E, std::uint64_t q, LocalCharKind chi, std::mt19937_64& rng) {
  if (prime_class(E, q) != 2) throw InvalidInput("local_kummer_image: E(Q_q)[2] is not full at " + std::to_string(q));
  const KummerMap km = KummerMap::from_cubic(two_division_cubic(E));
  const Place v = Place::prime(q);
  LocalKummerImage out;
  out.prime = q;
  out.character = chi;
  out.image = km.twisted(local_character_rep(chi, q)).local_image(v, rng);
  return out;
}

}  // namespace selmer
