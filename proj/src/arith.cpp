#include "selmer/arith.hpp"

#include <algorithm>
#include <boost/multiprecision/miller_rabin.hpp>
#include <limits>

#include "selmer/errors.hpp"

namespace selmer {

namespace mp = boost::multiprecision;

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw InvalidInput("empty integer in '" + text + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw InvalidInput("malformed integer in '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw InvalidInput("malformed rational '" + text + "'");
    }
    return Integer(s[0] == '+' ? s.substr(1) : s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  const Integer d = parse_int(text.substr(slash + 1));
  if (d == 0) throw InvalidInput("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), d);
}

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

std::int64_t to_i64(const Integer& n) {
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    throw Unsupported("integer " + n.str() + " exceeds 64 bits");
  }
  return static_cast<std::int64_t>(n);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  while (e) {
    if (e & 1U) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1U;
  }
  return result;
}

std::uint64_t mod(const Integer& n, std::uint64_t m) {
  Integer r = n % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

namespace {

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InvalidInput("inverse_mod: not invertible");
  old_s %= m;
  if (old_s < 0) old_s += m;
  return old_s;
}

}  // namespace

std::uint64_t mod(const Rational& r, std::uint64_t m) {
  if (m == 1) return 0;
  const Integer inv = inverse_mod(den(r), Integer(m));
  return mod(Integer(num(r) * inv), m);
}

Integer ipow(const Integer& base, unsigned exp) { return mp::pow(base, exp); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // The first seven prime bases are deterministic below 3.4e14; all twelve cover 64 bits.
  const std::size_t nbases = n < 341'550'071'728'321ULL ? 7 : 12;
  const std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::size_t i = 0; i < nbases; ++i) {
    std::uint64_t x = powmod(bases[i], d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime(static_cast<std::uint64_t>(n));
  return mp::miller_rabin_test(n, 40);
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

namespace {

Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (Integer c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = mp::gcd(Integer(mp::abs(x - y)), n);
    }
    if (d != n) return d;
  }
}

void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<std::pair<Integer, int>> factor(const Integer& n_in) {
  if (n_in == 0) throw InvalidInput("factor: zero");
  Integer n = mp::abs(n_in);
  std::vector<Integer> primes;
  for (std::uint64_t p = 2; p < 10000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, int>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> prime_divisors(const Integer& n) {
  std::vector<std::uint64_t> out;
  for (const auto& [p, e] : factor(n)) out.push_back(static_cast<std::uint64_t>(p));
  return out;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor(n)) {
    if (e > 1) return false;
  }
  return true;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw InvalidInput("squarefree_part: zero");
  Integer out = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(n)) {
    if (e % 2) out *= p;
  }
  return out;
}

Integer squarefree_part(const Rational& r) { return squarefree_part(Integer(num(r) * den(r))); }

bool is_rational_square(const Rational& r) {
  if (r < 0) return false;
  if (r == 0) return true;
  const Integer a = num(r), b = den(r);
  const Integer sa = mp::sqrt(a), sb = mp::sqrt(b);
  return sa * sa == a && sb * sb == b;
}

Rational rational_sqrt(const Rational& r) {
  if (!is_rational_square(r)) throw InvalidInput("rational_sqrt: not a square");
  return Rational(mp::sqrt(num(r)), mp::sqrt(den(r)));
}

int valuation(const Integer& n, std::uint64_t p) {
  if (n == 0) return kInfiniteValuation;
  Integer m = n;
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& r, std::uint64_t p) {
  if (r == 0) return kInfiniteValuation;
  return valuation(num(r), p) - valuation(den(r), p);
}

namespace {

int jacobi(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int t = 1;
  while (a != 0) {
    while ((a & 1U) == 0) {
      a >>= 1U;
      const std::uint64_t r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

void require_odd_prime(std::uint64_t p, const char* who) {
  if (p == 2 || !is_prime(p)) throw InvalidInput(std::string(who) + ": " + std::to_string(p) + " is not an odd prime");
}

}  // namespace

int legendre(const Integer& a, std::uint64_t p) {
  require_odd_prime(p, "legendre");
  return jacobi(mod(a, p), p);
}

int legendre(std::int64_t a, std::uint64_t p) { return legendre(Integer(a), p); }

std::uint64_t least_nonresidue(std::uint64_t p) {
  require_odd_prime(p, "least_nonresidue");
  for (std::uint64_t u = 2;; ++u) {
    if (jacobi(u, p) == -1) return u;
  }
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  require_odd_prime(p, "sqrt_mod");
  a %= p;
  if (a == 0) return 0;
  if (jacobi(a, p) != 1) throw InvalidInput("sqrt_mod: not a square");
  // Tonelli-Shanks.
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  const std::uint64_t z = least_nonresidue(p);
  std::uint64_t m = static_cast<std::uint64_t>(s);
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(a, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

Integer padic_sqrt(const Integer& a, std::uint64_t p, int k) {
  const Integer modulus = ipow(Integer(p), static_cast<unsigned>(k));
  if (p == 2) {
    if (mod(a, 8) != 1) throw InvalidInput("padic_sqrt: 2-adic unit is not a square");
    Integer x = 1;
    for (int j = 3; j < k; ++j) {
      const Integer m = ipow(Integer(2), static_cast<unsigned>(j + 1));
      Integer diff = (x * x - a) % m;
      if (diff != 0) x += ipow(Integer(2), static_cast<unsigned>(j - 1));
    }
    return x % modulus;
  }
  Integer x = sqrt_mod(mod(a, p), p);
  if (x == 0) throw InvalidInput("padic_sqrt: not a unit");
  Integer pk = p;
  int precision = 1;
  while (precision < k) {
    precision = std::min(2 * precision, k);
    pk = ipow(Integer(p), static_cast<unsigned>(precision));
    // Newton step x <- x - (x^2 - a) / (2x).
    Integer fx = (x * x - a) % pk;
    Integer step = (fx * inverse_mod(Integer(2 * x), pk)) % pk;
    x = (x - step) % pk;
    if (x < 0) x += pk;
  }
  return x % modulus;
}

Place Place::prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("Place::prime: " + std::to_string(p) + " is not prime");
  return Place(p);
}

std::string Place::str() const { return is_infinite() ? "inf" : std::to_string(p_); }

std::size_t square_class_dim(Place v) {
  if (v.is_infinite()) return 1;
  return v.p() == 2 ? 3 : 2;
}

F2Vector square_class_coords(const Rational& r, Place v) {
  if (r == 0) throw InvalidInput("square class of zero");
  F2Vector c(square_class_dim(v));
  if (v.is_infinite()) {
    c.set(0, r < 0);
    return c;
  }
  const std::uint64_t p = v.p();
  const int val = valuation(r, p);
  c.set(0, val % 2 != 0);
  Rational unit = r;
  if (val > 0) unit /= ipow(Integer(p), static_cast<unsigned>(val));
  if (val < 0) unit *= ipow(Integer(p), static_cast<unsigned>(-val));
  if (p == 2) {
    const std::uint64_t u = mod(unit, 8);
    c.set(1, u == 3 || u == 7);
    c.set(2, u == 3 || u == 5);
  } else {
    c.set(1, jacobi(mod(unit, p), p) == -1);
  }
  return c;
}

SquareClass square_class_from_coords(const F2Vector& c, Place v) {
  if (c.dim() != square_class_dim(v)) throw DimensionMismatch("square_class_from_coords: wrong length");
  if (v.is_infinite()) return {v, c.get(0) ? -1 : 1};
  const auto p = static_cast<std::int64_t>(v.p());
  std::int64_t rep = 1;
  if (v.p() == 2) {
    if (c.get(2)) rep *= 5;
    if (c.get(1)) rep = -rep;
  } else if (c.get(1)) {
    rep = static_cast<std::int64_t>(least_nonresidue(v.p()));
  }
  if (c.get(0)) rep *= p;
  return {v, rep};
}

SquareClass square_class(const Rational& r, Place v) { return square_class_from_coords(square_class_coords(r, v), v); }

bool is_square_in_Qv(const Rational& r, Place v) { return square_class_coords(r, v).is_zero(); }

int hilbert_symbol(const Rational& a_in, const Rational& b_in, Place v) {
  if (a_in == 0 || b_in == 0) throw InvalidInput("hilbert_symbol: zero argument");
  // a and num(a)*den(a) differ by a square.
  const Integer a = num(a_in) * den(a_in);
  const Integer b = num(b_in) * den(b_in);
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const std::uint64_t p = v.p();
  const int alpha = valuation(a, p);
  const int beta = valuation(b, p);
  const Integer u = a / ipow(Integer(p), static_cast<unsigned>(alpha));
  const Integer w = b / ipow(Integer(p), static_cast<unsigned>(beta));
  if (p == 2) {
    const std::uint64_t u8 = mod(u, 8), w8 = mod(w, 8);
    const int eps_u = static_cast<int>(((u8 - 1) / 2) % 2);
    const int eps_w = static_cast<int>(((w8 - 1) / 2) % 2);
    const int om_u = static_cast<int>(((u8 * u8 - 1) / 8) % 2);
    const int om_w = static_cast<int>(((w8 * w8 - 1) / 8) % 2);
    const int e = eps_u * eps_w + alpha * om_w + beta * om_u;
    return e % 2 ? -1 : 1;
  }
  int s = 1;
  if ((alpha % 2) && (beta % 2) && (p % 4 == 3)) s = -s;
  if (beta % 2) s *= jacobi(mod(u, p), p);
  if (alpha % 2) s *= jacobi(mod(w, p), p);
  return s;
}

}  // namespace selmer
