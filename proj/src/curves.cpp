#include "selmer/curves.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <istream>
#include <map>
#include <sstream>

#include "selmer/errors.hpp"

namespace selmer {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------- Cubic

Integer Cubic::discriminant() const {
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

Cubic Cubic::twist(const Integer& d) const { return {a * d, b * d * d, c * d * d * d}; }

namespace {

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t count = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace

std::vector<Integer> Cubic::integer_roots() const {
  std::vector<Integer> roots;
  Integer r0;
  if (c == 0) {
    r0 = 0;
  } else {
    bool found = false;
    for (const auto& t : divisors(c)) {
      for (const Integer& cand : {Integer(t), Integer(-t)}) {
        if (eval(cand) == 0) {
          r0 = cand;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) return roots;
  }
  roots.push_back(r0);
  // x^2 + s x + t = f(x) / (x - r0)
  const Integer s = a + r0;
  const Integer t = b + r0 * s;
  const Integer disc = s * s - 4 * t;
  if (disc >= 0) {
    const Integer sq = mp::sqrt(disc);
    if (sq * sq == disc) {
      roots.push_back((-s + sq) / 2);
      roots.push_back((-s - sq) / 2);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

PolyP Cubic::mod(std::uint64_t p) const {
  return {selmer::mod(c, p), selmer::mod(b, p), selmer::mod(a, p), 1 % p};
}

std::string Cubic::str() const {
  std::ostringstream os;
  os << "x^3";
  auto term = [&](const Integer& k, const char* mono) {
    if (k == 0) return;
    os << (k < 0 ? " - " : " + ");
    const Integer m = k < 0 ? Integer(-k) : k;
    if (m != 1 || *mono == '\0') os << m;
    os << mono;
  };
  term(a, "x^2");
  term(b, "x");
  term(c, "");
  return os.str();
}

// ---------------------------------------------------------------- CurveQ

CurveQ::CurveQ(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6, std::string label)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)}, label_(std::move(label)) {
  if (discriminant() == 0) throw InvalidInput("singular Weierstrass model " + str());
}

CurveQ CurveQ::short_model(Rational a4, Rational a6, std::string label) {
  return CurveQ(0, 0, 0, std::move(a4), std::move(a6), std::move(label));
}

CurveQ CurveQ::from_cubic(const Cubic& f, std::string label) {
  return CurveQ(0, Rational(f.a), 0, Rational(f.b), Rational(f.c), std::move(label));
}

Rational CurveQ::b2() const { return a1() * a1() + 4 * a2(); }
Rational CurveQ::b4() const { return 2 * a4() + a1() * a3(); }
Rational CurveQ::b6() const { return a3() * a3() + 4 * a6(); }
Rational CurveQ::b8() const {
  return a1() * a1() * a6() + 4 * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
}
Rational CurveQ::c4() const { return b2() * b2() - 24 * b4(); }
Rational CurveQ::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }

Rational CurveQ::discriminant() const {
  const Rational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

CurveQ CurveQ::with_label(std::string label) const {
  CurveQ E = *this;
  E.label_ = std::move(label);
  return E;
}

std::string CurveQ::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) s += ",";
    s += to_string(a_[i]);
  }
  return s + "]";
}

Rational discriminant(const CurveQ& E) { return E.discriminant(); }

CurveQ quadratic_twist(const CurveQ& E, const Integer& d) {
  if (d == 0 || !is_squarefree(d)) throw InvalidInput("twist parameter " + d.str() + " is not squarefree");
  std::string label = E.label().empty() ? "" : E.label() + "^" + d.str();
  if (d == 1) return E.with_label(E.label());
  const Rational dd(d);
  if (E.a1() == 0 && E.a3() == 0) {
    return CurveQ(0, E.a2() * dd, 0, E.a4() * dd * dd, E.a6() * dd * dd * dd, label);
  }
  return CurveQ(0, E.b2() / 4 * dd, 0, E.b4() / 2 * dd * dd, E.b6() / 4 * dd * dd * dd, label);
}

Cubic two_division_cubic(const CurveQ& E) {
  // y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4, then x -> x / u^2.
  const std::array<Rational, 3> k{E.b2() / 4, E.b4() / 2, E.b6() / 4};
  const std::array<unsigned, 3> weight{2, 4, 6};
  Integer u = 1;
  Integer dens = 1;
  for (const auto& r : k) dens *= den(r);
  if (dens != 1) {
    for (const auto& [p, e] : factor(dens)) {
      int need = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        const int v = valuation(den(k[i]), static_cast<std::uint64_t>(p));
        need = std::max<int>(need, (v + static_cast<int>(weight[i]) - 1) / static_cast<int>(weight[i]));
      }
      u *= ipow(p, static_cast<unsigned>(need));
    }
  }
  const Rational uu(u);
  const Rational A = k[0] * uu * uu, B = k[1] * uu * uu * uu * uu, C = k[2] * uu * uu * uu * uu * uu * uu;
  return {num(A), num(B), num(C)};
}

std::string to_string(CubicSplitting s) {
  switch (s) {
    case CubicSplitting::three_linear:
      return "three linear";
    case CubicSplitting::linear_quadratic:
      return "linear x quadratic";
    case CubicSplitting::irreducible:
      return "irreducible";
  }
  return "?";
}

TwoTorsionFieldInfo classify_two_torsion_field(const CurveQ& E) {
  TwoTorsionFieldInfo info;
  info.cubic = two_division_cubic(E);
  info.rational_roots = info.cubic.integer_roots();
  info.disc_square_class = squarefree_part(info.cubic.discriminant());
  switch (info.rational_roots.size()) {
    case 3:
      info.factorization = CubicSplitting::three_linear;
      info.degree = 1;
      break;
    case 1:
      info.factorization = CubicSplitting::linear_quadratic;
      info.degree = 2;
      break;
    default:
      info.factorization = CubicSplitting::irreducible;
      info.degree = info.disc_square_class == 1 ? 3 : 6;
      break;
  }
  return info;
}

namespace {

using Complex = mp::cpp_complex_100;
using Real = mp::cpp_bin_float_100;

std::array<Complex, 3> complex_roots(const Cubic& f) {
  // Durand-Kerner iteration.
  const Complex a(Real(f.a.str())), b(Real(f.b.str())), c(Real(f.c.str()));
  auto eval = [&](const Complex& z) { return ((z + a) * z + b) * z + c; };
  Real radius = 1;
  for (const Integer* k : {&f.a, &f.b, &f.c}) {
    const Real bound = Real(Integer(mp::abs(*k)).str()) + 1;
    if (bound > radius) radius = bound;
  }
  std::array<Complex, 3> z{Complex(Real("0.4"), Real("0.9")), Complex(Real("0.4"), Real("0.9")),
                           Complex(Real("0.4"), Real("0.9"))};
  z[0] *= radius;
  z[1] = z[0] * z[0] / radius;
  z[2] = z[1] * z[0] / radius;
  for (int iter = 0; iter < 2000; ++iter) {
    Real change = 0;
    for (int i = 0; i < 3; ++i) {
      Complex denom(1);
      for (int j = 0; j < 3; ++j) {
        if (j != i) denom *= (z[i] - z[j]);
      }
      const Complex step = eval(z[i]) / denom;
      z[i] -= step;
      const Real size = mp::abs(step);
      if (size > change) change = size;
    }
    if (change < Real("1e-80") * radius) break;
  }
  return z;
}

// Elements of Q[x]/(f) as coefficient triples.
using Elt = std::array<Rational, 3>;

Elt mul_mod(const Elt& x, const Elt& y, const Cubic& f) {
  std::array<Rational, 5> prod;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) prod[i + j] += x[i] * y[j];
  }
  // theta^3 = -a theta^2 - b theta - c
  for (int k = 4; k >= 3; --k) {
    const Rational t = prod[k];
    prod[k] = 0;
    prod[k - 1] -= t * Rational(f.a);
    prod[k - 2] -= t * Rational(f.b);
    prod[k - 3] -= t * Rational(f.c);
  }
  return {prod[0], prod[1], prod[2]};
}

bool is_root_in_field(const Cubic& g, const Elt& gamma, const Cubic& f) {
  // g(gamma) by Horner.
  Elt acc{Rational(1), 0, 0};
  acc = mul_mod(acc, gamma, f);
  acc[0] += Rational(g.a);
  acc = mul_mod(acc, gamma, f);
  acc[0] += Rational(g.b);
  acc = mul_mod(acc, gamma, f);
  acc[0] += Rational(g.c);
  return acc[0] == 0 && acc[1] == 0 && acc[2] == 0;
}

// Does g have a root in Q[x]/(f)? f, g irreducible monic integral cubics.
bool has_root_in_cubic_field(const Cubic& f, const Cubic& g) {
  const auto theta = complex_roots(f);
  const auto alpha = complex_roots(g);
  // Any root lies in (1/disc f) Z[theta].
  const Integer D = mp::abs(f.discriminant());
  const Real Dr(D.str());
  const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& perm : perms) {
    // Solve u + v theta_i + w theta_i^2 = alpha_perm(i) (Vandermonde).
    std::array<std::array<Complex, 4>, 3> m;
    for (int i = 0; i < 3; ++i) m[i] = {Complex(1), theta[i], theta[i] * theta[i], alpha[perm[i]]};
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r) {
        if (mp::abs(m[r][col]) > mp::abs(m[piv][col])) piv = r;
      }
      std::swap(m[piv], m[col]);
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const Complex factor_rc = m[r][col] / m[col][col];
        for (int k = col; k < 4; ++k) m[r][k] -= factor_rc * m[col][k];
      }
    }
    Elt gamma;
    bool plausible = true;
    for (int i = 0; i < 3; ++i) {
      const Complex x = m[i][3] / m[i][i] * Complex(Dr);
      if (mp::abs(x.imag()) > Real("1e-20")) {
        plausible = false;
        break;
      }
      const Real rounded = mp::round(x.real());
      if (mp::abs(x.real() - rounded) > Real("1e-20")) {
        plausible = false;
        break;
      }
      gamma[i] = Rational(rounded.convert_to<Integer>(), D);
    }
    if (plausible && is_root_in_field(g, gamma, f)) return true;
  }
  return false;
}

}  // namespace

bool same_two_torsion_field(const CurveQ& E, const CurveQ& A) {
  const auto e = classify_two_torsion_field(E);
  const auto a = classify_two_torsion_field(A);
  if (e.degree != a.degree) return false;
  if (e.degree == 1) return true;
  if (e.disc_square_class != a.disc_square_class) return false;
  if (e.degree == 2) return true;
  // Cheap screen: equal fields give equal splitting types at every prime unramified in both.
  const Integer disc_prod = e.cubic.discriminant() * a.cubic.discriminant();
  for (std::uint64_t p = 3; p < 1000; p += 2) {
    if (!is_prime(p) || disc_prod % p == 0) continue;
    if (root_count_mod(e.cubic, p) != root_count_mod(a.cubic, p)) return false;
  }
  return has_root_in_cubic_field(e.cubic, a.cubic);
}

// ---------------------------------------------------------------- reduction

namespace {

struct IntModel {
  std::array<Integer, 5> a;
};

Integer disc_of(const std::array<Integer, 5>& a) {
  const Integer &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  const Integer b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  const Integer b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

// Integral model isomorphic to E: a_i -> k^i a_i.
std::array<Integer, 5> integral_model(const CurveQ& E) {
  const std::array<unsigned, 5> weight{1, 2, 3, 4, 6};
  Integer k = 1;
  Integer dens = 1;
  for (const auto& r : E.coefficients()) dens *= den(r);
  if (dens != 1) {
    for (const auto& [p, e] : factor(dens)) {
      int need = 0;
      for (std::size_t i = 0; i < 5; ++i) {
        const int v = valuation(den(E.coefficients()[i]), static_cast<std::uint64_t>(p));
        need = std::max<int>(need, (v + static_cast<int>(weight[i]) - 1) / static_cast<int>(weight[i]));
      }
      k *= ipow(p, static_cast<unsigned>(need));
    }
  }
  std::array<Integer, 5> out;
  for (std::size_t i = 0; i < 5; ++i) {
    out[i] = num(E.coefficients()[i] * Rational(ipow(k, weight[i])));
  }
  return out;
}

// One step x = u^2 x' + r, y = u^3 y' + s u^2 x' + t with u = p, if an integral result exists.
bool reduce_once(std::array<Integer, 5>& a, std::uint64_t p) {
  const Integer u = p;
  const Integer u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  const Integer &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  for (Integer r = 0; r < u2; ++r) {
    for (Integer s = 0; s < u; ++s) {
      const Integer n1 = a1 + 2 * s;
      if (n1 % u != 0) continue;
      const Integer n2 = a2 - s * a1 + 3 * r - s * s;
      if (n2 % u2 != 0) continue;
      for (Integer t = 0; t < u3; ++t) {
        const Integer n3 = a3 + r * a1 + 2 * t;
        if (n3 % u3 != 0) continue;
        const Integer n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        if (n4 % u4 != 0) continue;
        const Integer n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        if (n6 % u6 != 0) continue;
        a = {n1 / u, n2 / u2, n3 / u3, n4 / u4, n6 / u6};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

int minimal_discriminant_valuation(const CurveQ& E, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  auto a = integral_model(E);
  Integer disc = disc_of(a);
  int v = valuation(disc, p);
  if (p >= 5) {
    const Integer b2 = a[0] * a[0] + 4 * a[1], b4 = 2 * a[3] + a[0] * a[2], b6 = a[2] * a[2] + 4 * a[4];
    const Integer c4 = b2 * b2 - 24 * b4;
    const Integer c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    const int k = std::min({valuation(c4, p) / 4, valuation(c6, p) / 6, v / 12});
    return v - 12 * k;
  }
  while (v >= 12 && reduce_once(a, p)) v -= 12;
  return v;
}

bool has_good_reduction(const CurveQ& E, std::uint64_t p) { return minimal_discriminant_valuation(E, p) == 0; }

std::vector<std::uint64_t> bad_primes(const CurveQ& E) {
  std::vector<std::uint64_t> out;
  for (auto p : prime_divisors(disc_of(integral_model(E)))) {
    if (!has_good_reduction(E, p)) out.push_back(p);
  }
  return out;
}

int root_count_mod(const Cubic& f, std::uint64_t p) { return static_cast<int>(polyp::roots(f.mod(p), p).size()); }

bool is_four_torsion_local(const CurveQ& E, std::uint64_t q) {
  if (q == 2 || !is_prime(q)) throw InvalidInput("is_four_torsion_local: q must be an odd prime");
  if (!has_good_reduction(E, q)) throw InvalidInput("is_four_torsion_local: bad reduction at " + std::to_string(q));
  const Cubic cub = two_division_cubic(E);
  const PolyP f = cub.mod(q);
  if (polyp::roots(f, q).size() != 3) return false;
  // x(2P) = Phi / Psi with Phi = f'^2 - 4 f (a + 2x), Psi = 4 f.
  const PolyP fp = polyp::derivative(f, q);
  const PolyP lin{selmer::mod(cub.a, q), 2 % q};
  const PolyP phi = polyp::sub(polyp::mul(fp, fp, q), polyp::scale(polyp::mul(f, lin, q), 4, q), q);
  const PolyP psi = polyp::scale(f, 4, q);
  // Psi^3 f(Phi / Psi) vanishes exactly at x-coordinates of points of order 4.
  const std::uint64_t a = selmer::mod(cub.a, q), b = selmer::mod(cub.b, q), c = selmer::mod(cub.c, q);
  const PolyP phi2 = polyp::mul(phi, phi, q), psi2 = polyp::mul(psi, psi, q);
  PolyP p4 = polyp::mul(phi2, phi, q);
  p4 = polyp::add(p4, polyp::scale(polyp::mul(phi2, psi, q), a, q), q);
  p4 = polyp::add(p4, polyp::scale(polyp::mul(phi, psi2, q), b, q), q);
  p4 = polyp::add(p4, polyp::scale(polyp::mul(psi2, psi, q), c, q), q);
  const auto xs = polyp::roots(p4, q);
  if (xs.size() != 6) return false;
  for (auto x : xs) {
    if (legendre(Integer(polyp::eval(f, x, q)), q) != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- text format

CurveQ parse_curve_line(const std::string& text, int line) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("line " + std::to_string(line) + ": expected 'label : a1 a2 a3 a4 a6'", line);
  std::istringstream lab(text.substr(0, colon));
  std::string label, extra;
  if (!(lab >> label) || (lab >> extra)) throw ParseError("line " + std::to_string(line) + ": malformed label", line);
  std::istringstream rest(text.substr(colon + 1));
  std::vector<std::string> fields;
  for (std::string f; rest >> f;) fields.push_back(f);
  if (fields.size() != 5) {
    throw ParseError("line " + std::to_string(line) + ": expected 5 coefficients, got " + std::to_string(fields.size()), line);
  }
  try {
    std::array<Rational, 5> a;
    for (std::size_t i = 0; i < 5; ++i) a[i] = parse_rational(fields[i]);
    return CurveQ(a[0], a[1], a[2], a[3], a[4], label);
  } catch (const InvalidInput& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
  }
}

std::vector<CurveQ> parse_curves(std::istream& in) {
  std::vector<CurveQ> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    out.push_back(parse_curve_line(text, line));
  }
  return out;
}

std::string format_curve_line(const CurveQ& E) {
  std::string s = (E.label().empty() ? std::string("_") : E.label()) + " :";
  for (const auto& c : E.coefficients()) s += " " + to_string(c);
  return s;
}

}  // namespace selmer
