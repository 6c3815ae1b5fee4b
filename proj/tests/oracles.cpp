#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace oracle {

namespace {

long long mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

long long power(long long b, long long e, long long m) {
  __int128 r = 1, x = mod(b, m);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return static_cast<long long>(r);
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> f;
  n = std::llabs(n);
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    f.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) f.push_back(n);
  return f;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

long long squarefree(long long n) {
  if (n == 0) throw std::invalid_argument("squarefree(0)");
  long long s = n < 0 ? -1 : 1;
  n = std::llabs(n);
  for (long long p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k % 2) s *= p;
  }
  return s * n;
}

int hilbert(long long a, long long b, long long p) {
  a = squarefree(a);
  b = squarefree(b);
  const long long m = p == 2 ? 64 : p * p;
  std::vector<char> is_sq(m, 0);
  for (long long z = 0; z < m; ++z) is_sq[z * z % m] = 1;
  for (long long x = 0; x < m; ++x) {
    for (long long y = 0; y < m; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      if (is_sq[mod(mod(a, m) * (x * x % m) + mod(b, m) * (y * y % m), m)]) return 1;
    }
  }
  return -1;
}

int square_class(long long n, long long p) {
  if (n == 0) throw std::invalid_argument("square_class(0)");
  if (p == 0) return n < 0 ? 1 : 0;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  int unit;
  if (p == 2) {
    unit = static_cast<int>(mod(n, 8)) / 2;  // 1,3,5,7 -> 0,1,2,3
  } else {
    unit = power(n, (p - 1) / 2, p) == 1 ? 0 : 1;
  }
  return (v % 2) * 4 + unit;
}

namespace {

// Square classes at p form a group; combine codes by multiplying representatives.
long long class_rep(int code, long long p) {
  if (p == 0) return code ? -1 : 1;
  long long u = 1;
  if (p == 2) {
    u = 2 * (code % 4) + 1;
  } else if (code % 4) {
    for (long long g = 2;; ++g) {
      if (power(g, (p - 1) / 2, p) != 1) {
        u = g;
        break;
      }
    }
  }
  return (code / 4 ? p : 1) * u;
}

int mul_class(int x, int y, long long p) { return square_class(class_rep(x, p) * class_rep(y, p), p); }

// Class of (num / den^2) with den a power of p: equal to the class of num.
void sample(const FullTorsionCurve& E, long long num, long long den2, long long p, std::set<LocalPair>& out) {
  long long v[3];
  for (int i = 0; i < 3; ++i) v[i] = num - E.e[i] * den2;
  if (v[0] == 0 || v[1] == 0 || v[2] == 0) return;
  const int c0 = square_class(v[0], p), c1 = square_class(v[1], p), c2 = square_class(v[2], p);
  if (mul_class(mul_class(c0, c1, p), c2, p) != 0) return;  // f(x) not a square
  out.insert({c0, c1});
}

}  // namespace

std::set<LocalPair> local_image(const FullTorsionCurve& E, long long p) {
  std::set<LocalPair> pts;
  pts.insert({0, 0});
  const long long* e = E.e;
  // 2-torsion points; the coordinate at a root is the product of the other two.
  pts.insert({square_class((e[0] - e[1]) * (e[0] - e[2]), p), square_class(e[0] - e[1], p)});
  pts.insert({square_class(e[1] - e[0], p), square_class((e[1] - e[0]) * (e[1] - e[2]), p)});
  pts.insert({square_class(e[2] - e[0], p), square_class(e[2] - e[1], p)});
  if (p == 0) {
    const long long span = 4 * (std::llabs(e[0]) + std::llabs(e[2]) + 2);
    for (long long k = -span; k <= span; ++k) sample(E, k, 4, p, pts);
  } else {
    const long long range = p == 2 ? 512 : p * p * p;
    long long den2 = 1;
    for (int j = 0; j < 3; ++j, den2 *= p * p) {
      for (long long a = -range; a <= range; ++a) sample(E, a, den2, p, pts);
    }
  }
  std::set<LocalPair> group = pts;
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<LocalPair> cur(group.begin(), group.end());
    for (const auto& x : cur) {
      for (const auto& y : cur) {
        if (group.insert({mul_class(x.first, y.first, p), mul_class(x.second, y.second, p)}).second) grew = true;
      }
    }
  }
  return group;
}

std::vector<long long> bad_places(const FullTorsionCurve& E) {
  std::set<long long> s{0, 2};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (auto p : prime_factors(E.e[j] - E.e[i])) s.insert(p);
    }
  }
  return {s.begin(), s.end()};
}

std::vector<std::pair<long long, long long>> selmer(const FullTorsionCurve& E) {
  const auto places = bad_places(E);
  std::vector<long long> gens{-1};
  for (auto p : places) {
    if (p) gens.push_back(p);
  }
  std::vector<long long> units;
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    long long u = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (mask >> i & 1) u *= gens[i];
    }
    units.push_back(u);
  }
  std::vector<std::set<LocalPair>> images;
  for (auto p : places) images.push_back(local_image(E, p));
  std::vector<std::pair<long long, long long>> out;
  for (auto d0 : units) {
    for (auto d1 : units) {
      bool ok = true;
      for (std::size_t k = 0; k < places.size() && ok; ++k) {
        ok = images[k].count({square_class(d0, places[k]), square_class(d1, places[k])}) > 0;
      }
      if (ok) out.emplace_back(d0, d1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int cubic_roots_mod(long long a, long long b, long long c, long long p) {
  int n = 0;
  for (long long x = 0; x < p; ++x) {
    if (mod(((mod(x + a, p) * x % p + b) % p * x + c), p) == 0) ++n;
  }
  return n;
}

namespace {

struct Pt {
  long long x = 0, y = 0;
  bool inf = true;
};

long long inv(long long a, long long p) { return power(a, p - 2, p); }

Pt add(const Pt& P, const Pt& Q, long long a, long long b, long long p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  long long lam;
  if (P.x == Q.x) {
    if (mod(P.y + Q.y, p) == 0) return {};
    lam = mod((3 * P.x % p * P.x + 2 * a * P.x + b) % p * inv(2 * P.y % p, p), p);
  } else {
    lam = mod(mod(Q.y - P.y, p) * inv(mod(Q.x - P.x, p), p), p);
  }
  const long long x = mod(lam * lam - a - P.x - Q.x, p);
  return {x, mod(lam * mod(P.x - x, p) - P.y, p), false};
}

}  // namespace

int four_torsion_count(long long a, long long b, long long c, long long p) {
  a = mod(a, p);
  b = mod(b, p);
  c = mod(c, p);
  int n = 1;  // the origin
  for (long long x = 0; x < p; ++x) {
    const long long f = mod(((x + a) % p * x % p + b) % p * x + c, p);
    for (long long y = 0; y < p; ++y) {
      if (y * y % p != f) continue;
      const Pt P{x, y, false};
      const Pt P2 = add(P, P, a, b, p);
      if (add(P2, P2, a, b, p).inf) ++n;
    }
  }
  return n;
}

}  // namespace oracle
