#include "selmer/quadfield.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "selmer/errors.hpp"

namespace selmer {

namespace mp = boost::multiprecision;

namespace {

// g = gcd(a, b) >= 0 with g = x a + y b.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer old_r = a, r = b, old_x = 1, xx = 0, old_y = 0, yy = 1;
  while (r != 0) {
    const Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * xx;
    old_x = xx;
    xx = t;
    t = old_y - q * yy;
    old_y = yy;
    yy = t;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_x = -old_x;
    old_y = -old_y;
  }
  x = old_x;
  y = old_y;
  return old_r;
}

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += (m < 0 ? Integer(-m) : m);
  return r;
}

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  const Integer r = mp::sqrt(n);
  return r * r == n;
}

}  // namespace

// ---------------------------------------------------------------- QuadField

QuadField::QuadField(Integer D) : D_(std::move(D)) {
  if (D_ == 0 || D_ == 1 || !is_squarefree(D_)) throw InvalidInput("QuadField: D must be squarefree and not 0 or 1");
  disc_ = mod(D_, 4) == 1 ? D_ : Integer(4 * D_);
  init_two_adic();
}

int QuadField::splitting(std::uint64_t p) const {
  if (p == 2) {
    const auto r = mod(D_, 8);
    if (r == 1) return 1;
    if (r == 5) return -1;
    return 0;
  }
  return legendre(D_, p);
}

QElt QuadField::inv(const QElt& x) const {
  const Rational n = norm(x);
  if (n == 0) throw InvalidInput("QuadField::inv: zero");
  return {x.s / n, -x.t / n};
}

bool QuadField::is_square(const QElt& x) const {
  if (x.s == 0 && x.t == 0) return true;
  const Rational n = norm(x);
  if (!is_rational_square(n)) return false;
  const Rational r = rational_sqrt(n);
  for (const Rational& sign_r : {r, Rational(-r)}) {
    const Rational X = (x.s + sign_r) / 2;
    if (!is_rational_square(X)) continue;
    const Rational a = rational_sqrt(X);
    if (a != 0) {
      const Rational b = x.t / (2 * a);
      if (a * a + Rational(D_) * b * b == x.s) return true;
    } else if (x.t == 0 && is_rational_square(x.s / Rational(D_))) {
      return true;
    }
  }
  return false;
}

std::string QuadField::str(const QElt& x) const {
  std::string out = to_string(x.s);
  if (x.t != 0) {
    out += (x.t < 0 ? " - " : " + ");
    const Rational m = x.t < 0 ? Rational(-x.t) : x.t;
    if (m != 1) out += to_string(m) + "*";
    out += "sqrt(" + D_.str() + ")";
  }
  return out;
}

std::size_t QuadField::local_dim(Place v) const {
  if (v.is_infinite()) return is_real() ? 2 : 0;
  const std::size_t base = square_class_dim(v);
  if (splitting(v.p()) == 1) return 2 * base;
  return v.p() == 2 ? 4 : 2;
}

std::pair<Integer, Integer> QuadField::omega_coords_mod(const QElt& x, std::uint64_t m) const {
  if (mod(D_, 4) == 1) {
    // s + t sqrt D = (s - t) + 2t omega, omega = (1 + sqrt D)/2
    return {Integer(mod(Rational(x.s - x.t), m)), Integer(mod(Rational(2 * x.t), m))};
  }
  return {Integer(mod(x.s, m)), Integer(mod(x.t, m))};
}

namespace {

// Arithmetic on integral elements a + b omega modulo 2^k.
struct OmegaRing {
  bool half;     // omega = (1 + sqrt D)/2
  Integer D;
  std::int64_t m;  // modulus

  std::pair<std::int64_t, std::int64_t> mul(std::pair<std::int64_t, std::int64_t> x,
                                            std::pair<std::int64_t, std::int64_t> y) const {
    const std::int64_t ac = x.first * y.first, bd = x.second * y.second;
    const std::int64_t cross = x.first * y.second + x.second * y.first;
    std::int64_t r0, r1;
    if (half) {
      const std::int64_t k = static_cast<std::int64_t>(mod(Integer((D - 1) / 4), static_cast<std::uint64_t>(m)));
      r0 = ac + bd * k;
      r1 = cross + bd;
    } else {
      r0 = ac + bd * static_cast<std::int64_t>(mod(D, static_cast<std::uint64_t>(m)));
      r1 = cross;
    }
    return {((r0 % m) + m) % m, ((r1 % m) + m) % m};
  }
};

}  // namespace

void QuadField::init_two_adic() {
  const auto r = mod(D_, 8);
  if (r == 1) return;  // split at 2: handled through the two embeddings
  two_ = TwoAdic{};
  std::pair<std::int64_t, std::int64_t> pibar;
  int k0;
  if (r == 5) {
    two_.f = 2;
    two_.pi = {2, 0};
    pibar = {2, 0};
    k0 = 4;
  } else if (r == 2 || r == 6) {
    two_.pi = {0, 1};
    pibar = {0, -1};
    k0 = 3;
  } else {
    two_.pi = {1, 1};
    pibar = {1, -1};
    k0 = 3;
  }
  const OmegaRing ring{r == 5, D_, 64};
  const std::int64_t test_mod = std::int64_t{1} << k0;
  auto unit_sq = [&](std::pair<std::int64_t, std::int64_t> u) {
    for (std::int64_t a = 0; a < 8; ++a) {
      for (std::int64_t b = 0; b < 8; ++b) {
        auto x2 = ring.mul({a, b}, {a, b});
        std::pair<std::int64_t, std::int64_t> z{u.first - x2.first, u.second - x2.second};
        auto w = ring.mul({((z.first % 64) + 64) % 64, ((z.second % 64) + 64) % 64},
                          {((pibar.first % 64) + 64) % 64, ((pibar.second % 64) + 64) % 64});
        if (w.first % test_mod == 0 && w.second % test_mod == 0) return true;
      }
    }
    return false;
  };
  auto is_unit = [&](std::pair<std::int64_t, std::int64_t> u) {
    // Norm parity of a + b omega.
    const std::int64_t a = u.first, b = u.second;
    std::int64_t n;
    if (r == 5) {
      n = a * a + a * b + b * b * static_cast<std::int64_t>(mod(Integer((D_ - 1) / 4), 64));
    } else {
      n = a * a - b * b * static_cast<std::int64_t>(mod(D_, 64));
    }
    return ((n % 2) + 2) % 2 == 1;
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> basis;
  auto reduce_class = [&](std::pair<std::int64_t, std::int64_t> u) -> int {
    // Returns the subset mask T with u * prod(T) a square, or -1.
    for (unsigned mask = 0; mask < (1U << basis.size()); ++mask) {
      auto w = u;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (mask >> i & 1U) w = ring.mul(w, basis[i]);
      }
      if (unit_sq(w)) return static_cast<int>(mask);
    }
    return -1;
  };
  for (std::int64_t a = 0; a < 8 && basis.size() < 3; ++a) {
    for (std::int64_t b = 0; b < 8 && basis.size() < 3; ++b) {
      if (!is_unit({a, b})) continue;
      if (reduce_class({a, b}) < 0) basis.push_back({a, b});
    }
  }
  if (basis.size() != 3) throw Error("QuadField: 2-adic unit basis incomplete");
  for (const auto& u : basis) {
    if (r == 5) {
      // a + b (1 + sqrt D)/2
      two_.unit_basis.push_back({Rational(u.first) + Rational(u.second, 2), Rational(u.second, 2)});
    } else {
      two_.unit_basis.push_back({Rational(u.first), Rational(u.second)});
    }
  }
  for (std::int64_t a = 0; a < 8; ++a) {
    for (std::int64_t b = 0; b < 8; ++b) {
      if (!is_unit({a, b})) continue;
      two_.unit_table[{static_cast<int>(a), static_cast<int>(b)}] = static_cast<unsigned>(reduce_class({a, b}));
    }
  }
}

F2Vector QuadField::local_coords(const QElt& x_in, Place v) const {
  if (x_in.s == 0 && x_in.t == 0) throw InvalidInput("local_coords: zero element");
  F2Vector out(local_dim(v));
  if (v.is_infinite()) {
    if (!is_real()) return out;
    // Signs of s + t sqrt D and s - t sqrt D.
    auto negative = [&](const Rational& s, const Rational& t) {
      if (s >= 0 && t >= 0) return false;
      if (s <= 0 && t <= 0) return true;
      const Rational lhs = s * s, rhs = Rational(D_) * t * t;
      return s > 0 ? lhs < rhs : lhs > rhs;
    };
    out.set(0, negative(x_in.s, x_in.t));
    out.set(1, negative(x_in.s, -x_in.t));
    return out;
  }
  const std::uint64_t p = v.p();
  const int sp = splitting(p);
  QElt x = x_in;
  if (sp == 1) {
    // Make x p-integral by a square factor, then use both embeddings sqrt D -> +-r.
    const int m = std::min(valuation(x.s, p), valuation(x.t, p));
    if (m < 0) {
      const Rational scale(ipow(Integer(p), static_cast<unsigned>(2 * ((-m + 1) / 2))));
      x = {x.s * scale, x.t * scale};
    }
    const int vN = valuation(norm(x), p);
    const int k = vN + 4;
    const Integer pk = ipow(Integer(p), static_cast<unsigned>(k));
    const std::uint64_t base = square_class_dim(v);
    const Integer root = padic_sqrt(D_, p, k + 1);
    const Integer s = [&] {
      const Integer inv_den = [&] {
        Integer res = 0, y;
        ext_gcd(den(x.s), pk, res, y);
        return res;
      }();
      return floor_mod(num(x.s) * inv_den, pk);
    }();
    const Integer t = [&] {
      Integer res = 0, y;
      ext_gcd(den(x.t), pk, res, y);
      return floor_mod(num(x.t) * res, pk);
    }();
    for (int sign = 0; sign < 2; ++sign) {
      const Integer val = floor_mod(sign == 0 ? Integer(s + t * root) : Integer(s - t * root), pk);
      if (val == 0) throw PrecisionExhausted("local_coords: split embedding vanished to precision");
      const F2Vector c = square_class_coords(Rational(val), v);
      for (std::size_t i = 0; i < base; ++i) out.set(sign * base + i, c.get(i));
    }
    return out;
  }
  if (p != 2 && sp == -1) {
    const int w = std::min(valuation(x.s, p), valuation(x.t, p));
    const Rational scale = w >= 0 ? Rational(1, ipow(Integer(p), static_cast<unsigned>(w)))
                                  : Rational(ipow(Integer(p), static_cast<unsigned>(-w)));
    const QElt u{x.s * scale, x.t * scale};
    out.set(0, w % 2 != 0);
    out.set(1, legendre(Integer(mod(norm(u), p)), p) == -1);
    return out;
  }
  if (p != 2) {
    // Ramified: uniformizer sqrt D.
    const int w = valuation(norm(x), p);
    const int half = (w >= 0 ? w : w - 1) / 2;  // floor(w/2)
    const Rational Dh = half >= 0 ? Rational(ipow(D_, static_cast<unsigned>(half)))
                                  : Rational(1, ipow(D_, static_cast<unsigned>(-half)));
    const Rational s1 = (w - 2 * half == 0) ? Rational(x.s / Dh) : Rational(x.t / Dh);
    out.set(0, w % 2 != 0);
    out.set(1, legendre(Integer(mod(s1, p)), p) == -1);
    return out;
  }
  // Non-split at 2.
  const int vN = valuation(norm(x), 2);
  const int w = vN / two_.f;
  QElt u = x;
  const QElt step = w >= 0 ? inv(two_.pi) : two_.pi;
  for (int i = 0; i < std::abs(w); ++i) u = mul(u, step);
  const auto [a, b] = omega_coords_mod(u, 8);
  const auto it = two_.unit_table.find({static_cast<int>(a), static_cast<int>(b)});
  if (it == two_.unit_table.end()) throw Error("local_coords: 2-adic unit part is not a unit");
  out.set(0, w % 2 != 0);
  for (int i = 0; i < 3; ++i) out.set(1 + i, it->second >> i & 1U);
  return out;
}

QElt QuadField::fundamental_unit() const {
  if (!is_real()) throw InvalidInput("fundamental_unit: imaginary field");
  const bool half = mod(D_, 4) == 1;
  // Continued fraction of omega = (P + sqrt D)/Q.
  Integer P = half ? 1 : 0, Q = half ? 2 : 1;
  const Integer sqrtD = mp::sqrt(D_);
  Integer p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (int iter = 0; iter < 100000; ++iter) {
    const Integer a = (P + sqrtD) / Q;
    const Integer p = a * p_prev + p_prev2, q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    // p - q omega
    const QElt e = half ? QElt{Rational(p) - Rational(q, 2), Rational(-q, 2)} : QElt{Rational(p), Rational(-q)};
    const Rational n = norm(e);
    if (n == 1 || n == -1) return e;
    P = a * Q - P;
    Q = (D_ - P * P) / Q;
  }
  throw Unsupported("fundamental_unit: continued fraction period too long");
}

QElt QuadField::torsion_unit() const {
  if (D_ == -1) return {0, 1};
  return {-1, 0};
}

// ---------------------------------------------------------------- forms

namespace {

bool is_reduced_indefinite(const Form& f, const Integer& disc) {
  const Integer aa = mp::abs(f.a);
  if (f.b <= 0 || f.b * f.b >= disc) return false;
  if ((2 * aa + f.b) * (2 * aa + f.b) <= disc) return false;
  const Integer lo = 2 * aa - f.b;
  return lo <= 0 || lo * lo < disc;
}

Form normalize_indefinite(const Form& f, const Integer& disc) {
  const Integer s = mp::sqrt(disc);
  const Integer aa = mp::abs(f.a);
  const Integer m = 2 * aa;
  Integer b;
  if (aa > s) {
    b = floor_mod(f.b, m);
    if (b > aa) b -= m;
  } else {
    const Integer lo = s - m + 1;
    b = lo + floor_mod(f.b - lo, m);
  }
  return {f.a, b, (b * b - disc) / (4 * f.a)};
}

Form rho(const Form& f, const Integer& disc) { return normalize_indefinite({f.c, -f.b, f.a}, disc); }

std::vector<Form> cycle_of(const Form& reduced, const Integer& disc) {
  std::vector<Form> out{reduced};
  Form g = rho(reduced, disc);
  while (g != reduced) {
    out.push_back(g);
    g = rho(g, disc);
    if (out.size() > 1000000) throw Unsupported("form cycle too long");
  }
  return out;
}

}  // namespace

Form reduce_form(const Form& f_in) {
  const Integer disc = f_in.discriminant();
  if (disc < 0) {
    Form f = f_in;
    if (f.a < 0) throw InvalidInput("reduce_form: negative definite form");
    for (;;) {
      const Integer m = 2 * f.a;
      Integer b = floor_mod(f.b, m);
      if (b > f.a) b -= m;
      f = {f.a, b, (b * b - disc) / (4 * f.a)};
      if (f.a > f.c) {
        f = {f.c, -f.b, f.a};
        continue;
      }
      if ((f.a == f.c || f.b == f.a) && f.b < 0) f.b = -f.b;
      return f;
    }
  }
  Form f = normalize_indefinite(f_in, disc);
  for (int iter = 0; !is_reduced_indefinite(f, disc); ++iter) {
    f = rho(f, disc);
    if (iter > 100000) throw Unsupported("reduce_form: no convergence");
  }
  return f;
}

Form compose_forms(const Form& f, const Form& g) {
  const Integer disc = f.discriminant();
  if (g.discriminant() != disc) throw InvalidInput("compose_forms: discriminants differ");
  const Integer beta = (f.b + g.b) / 2;
  Integer u1, v1, u2, w2;
  const Integer e1 = ext_gcd(f.a, g.a, u1, v1);
  const Integer e = ext_gcd(e1, beta, u2, w2);
  const Integer u = u2 * u1, v = u2 * v1, w = w2;
  const Integer a3 = f.a * g.a / (e * e);
  const Integer B = (u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + disc) / 2) / e;
  const Integer b3 = floor_mod(B, 2 * a3);
  const Integer num_c = b3 * b3 - disc;
  if (num_c % (4 * a3) != 0) throw Error("compose_forms: non-integral result");
  return {a3, b3, num_c / (4 * a3)};
}

namespace {

std::vector<Form> all_reduced_forms(const Integer& disc) {
  std::vector<Form> out;
  if (disc < 0) {
    for (Integer a = 1; 3 * a * a <= -disc; ++a) {
      for (Integer b = -a + 1; b <= a; ++b) {
        if (floor_mod(b - disc, 2) != 0) continue;
        const Integer num_c = b * b - disc;
        if (num_c % (4 * a) != 0) continue;
        const Integer c = num_c / (4 * a);
        if (c < a || (c == a && b < 0)) continue;
        if (mp::gcd(mp::gcd(a, Integer(mp::abs(b))), c) != 1) continue;
        out.push_back({a, b, c});
      }
    }
    return out;
  }
  const Integer s = mp::sqrt(disc);
  for (Integer b = 1; b <= s; ++b) {
    if (floor_mod(b - disc, 2) != 0) continue;
    const Integer N = (disc - b * b) / 4;  // = -a c > 0
    for (Integer aa = 1; 2 * aa < s + b + 1; ++aa) {
      if (N % aa != 0) continue;
      for (const Integer& a : {aa, Integer(-aa)}) {
        const Form f{a, b, -N / a};
        if (!is_reduced_indefinite(f, disc)) continue;
        if (mp::gcd(mp::gcd(aa, b), Integer(mp::abs(f.c))) != 1) continue;
        out.push_back(f);
      }
    }
  }
  return out;
}

}  // namespace

std::size_t narrow_form_class_number(const Integer& disc) {
  const auto forms = all_reduced_forms(disc);
  if (disc < 0) return forms.size();
  std::set<Form> seen;
  std::size_t classes = 0;
  for (const auto& f : forms) {
    if (seen.count(f)) continue;
    ++classes;
    for (const auto& g : cycle_of(f, disc)) seen.insert(g);
  }
  return classes;
}

ClassGroup::ClassGroup(const QuadField& K) : disc_(K.discriminant()) {
  principal_ = mod(disc_, 4) == 0 ? Form{1, 0, -disc_ / 4} : Form{1, 1, (1 - disc_) / 4};
  const auto forms = all_reduced_forms(disc_);
  if (disc_ < 0) {
    for (const auto& f : forms) {
      index_[f] = classes_.size();
      classes_.push_back(f);
    }
    return;
  }
  for (const auto& f : forms) {
    if (index_.count(f)) continue;
    auto members = cycle_of(f, disc_);
    const auto neg = cycle_of(reduce_form({-f.a, f.b, -f.c}), disc_);
    members.insert(members.end(), neg.begin(), neg.end());
    const Form rep = *std::min_element(members.begin(), members.end());
    for (const auto& g : members) index_[g] = classes_.size();
    classes_.push_back(rep);
  }
}

Form ClassGroup::canonical(const Form& f) const { return classes_.at(class_of(f)); }

std::size_t ClassGroup::class_of(const Form& f) const {
  if (f.discriminant() != disc_) throw InvalidInput("class_of: wrong discriminant");
  const auto it = index_.find(reduce_form(f));
  if (it == index_.end()) throw Error("class_of: reduced form not enumerated");
  return it->second;
}

std::size_t ClassGroup::compose(std::size_t i, std::size_t j) const {
  return class_of(compose_forms(classes_.at(i), classes_.at(j)));
}

std::size_t ClassGroup::prime_class(std::uint64_t p) const {
  const Integer P = p;
  for (Integer b = 0; b < 2 * P; ++b) {
    const Integer num_c = b * b - disc_;
    if (num_c % (4 * P) == 0) return class_of({P, b, num_c / (4 * P)});
  }
  throw InvalidInput("prime_class: " + std::to_string(p) + " is inert");
}

std::size_t ClassGroup::two_rank_mod(const std::vector<std::size_t>& extra) const {
  std::vector<std::size_t> gens = extra;
  for (std::size_t i = 0; i < order(); ++i) gens.push_back(compose(i, i));
  std::vector<bool> in(order(), false);
  std::vector<std::size_t> members{identity()};
  in[identity()] = true;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (auto g : gens) {
      const auto h = compose(members[k], g);
      if (!in[h]) {
        in[h] = true;
        members.push_back(h);
      }
    }
  }
  std::size_t quotient = order() / members.size(), r = 0;
  while (quotient > 1) {
    quotient /= 2;
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------- K(S,2)

std::size_t expected_ks2_dim(const QuadField& K, const std::vector<std::uint64_t>& S_fin) {
  const ClassGroup G(K);
  std::size_t dim = K.is_real() ? 2 : 1;
  std::vector<std::size_t> extra;
  for (auto p : S_fin) {
    const int sp = K.splitting(p);
    dim += sp == 1 ? 2 : 1;
    if (sp >= 0) extra.push_back(G.prime_class(p));
  }
  return dim + G.two_rank_mod(extra);
}

namespace {

// Cornacchia: x^2 + n y^2 = m for a prime m (or m = 4p when four_p), n > 0.
std::optional<std::pair<Integer, Integer>> cornacchia(std::uint64_t n, std::uint64_t p, bool four_p) {
  if (p == 2 || n % p == 0) return std::nullopt;
  const std::uint64_t minus_n = (p - n % p) % p;
  if (legendre(Integer(minus_n), p) != 1) return std::nullopt;
  Integer r = sqrt_mod(minus_n, p);
  Integer a = p;
  if (four_p) {
    if ((r % 2) != (n % 2)) r = p - r;
    a = 2 * Integer(p);
  } else if (2 * r > a) {
    r = a - r;
  }
  const Integer m = four_p ? 4 * Integer(p) : Integer(p);
  const Integer limit = mp::sqrt(m);
  Integer b = r;
  while (b > limit) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  const Integer rest = m - b * b;
  if (rest % n != 0) return std::nullopt;
  const Integer c = rest / n;
  if (!is_perfect_square(c)) return std::nullopt;
  return std::make_pair(b, mp::sqrt(c));
}

}  // namespace

std::vector<QElt> ks2_basis(const QuadField& K, const std::vector<std::uint64_t>& S_fin) {
  for (auto p : S_fin) {
    if (!is_prime(p)) throw InvalidInput("ks2_basis: " + std::to_string(p) + " is not prime");
  }
  const std::size_t target = expected_ks2_dim(K, S_fin);
  const bool half = mod(K.D(), 4) == 1;

  // Auxiliary characters at split primes outside S.
  struct Aux {
    std::uint64_t p;
    std::uint64_t root;  // image of sqrt D
  };
  std::vector<Aux> aux;
  for (std::uint64_t p = 3; aux.size() < 40; p += 2) {
    if (!is_prime(p) || std::find(S_fin.begin(), S_fin.end(), p) != S_fin.end()) continue;
    if (K.splitting(p) != 1) continue;
    aux.push_back({p, sqrt_mod(mod(K.D(), p), p)});
  }
  std::vector<Place> places{Place::infinity()};
  for (auto p : S_fin) places.push_back(Place::prime(p));

  auto character = [&](const QElt& x, bool& ok) {
    F2Vector c(0);
    for (const auto& v : places) c = c.concat(K.local_coords(x, v));
    F2Vector a(aux.size());
    for (std::size_t i = 0; i < aux.size(); ++i) {
      const auto p = aux[i].p;
      if (valuation(x.s, p) < 0 || valuation(x.t, p) < 0) {
        ok = false;
        return c;
      }
      const std::uint64_t val =
          (mod(x.s, p) + mulmod(mod(x.t, p), aux[i].root, p)) % p;
      if (val == 0) {
        ok = false;
        return c;
      }
      a.set(i, legendre(Integer(val), p) == -1);
    }
    ok = true;
    return c.concat(a);
  };

  std::vector<QElt> basis;
  F2Subspace span;
  bool have_span = false;
  auto try_add = [&](const QElt& x) {
    bool ok = false;
    const F2Vector c = character(x, ok);
    if (!ok) return;
    if (!have_span) {
      span = F2Subspace::zero(c.dim());
      have_span = true;
    }
    if (span.insert(c)) basis.push_back(x);
  };

  try_add(K.torsion_unit());
  if (K.is_real()) try_add(K.fundamental_unit());
  for (auto p : S_fin) try_add({Rational(p), 0});
  if (!K.is_real() && K.D() > -(Integer(1) << 62)) {
    // Generators of principal primes of large norm, which the height search below would reach slowly.
    const auto n = static_cast<std::uint64_t>(-K.D());
    for (auto p : S_fin) {
      if (basis.size() >= target || K.splitting(p) != 1) continue;
      if (auto xy = cornacchia(n, p, false)) {
        try_add({Rational(xy->first), Rational(xy->second)});
      } else if (half) {
        if (auto XY = cornacchia(n, p, true)) try_add({Rational(XY->first, 2), Rational(XY->second, 2)});
      }
    }
  }
  for (Integer H = 1; basis.size() < target; ++H) {
    if (H > 5000) throw Unsupported("ks2_basis: generator search exhausted for D = " + K.D().str());
    for (Integer b = 1; b <= H && basis.size() < target; ++b) {
      for (Integer a = -H; a <= H && basis.size() < target; ++a) {
        if (mp::abs(a) != H && b != H) continue;
        if (mp::gcd(Integer(mp::abs(a)), b) != 1) continue;
        // a + b omega
        const QElt x = half ? QElt{Rational(a) + Rational(b, 2), Rational(b, 2)} : QElt{Rational(a), Rational(b)};
        Integer n = mp::abs(num(K.norm(x)));
        for (auto p : S_fin) {
          while (n % p == 0) n /= p;
        }
        if (!is_perfect_square(n)) continue;
        try_add(x);
      }
    }
  }
  return basis;
}

}  // namespace selmer
