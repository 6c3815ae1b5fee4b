#include "selmer/poly_mod.hpp"

#include <algorithm>

#include "selmer/arith.hpp"
#include "selmer/errors.hpp"

namespace selmer {

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw InvalidInput("invmod: zero has no inverse");
  return powmod(a, p - 2, p);
}

namespace polyp {

void trim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const PolyP& f) { return static_cast<int>(f.size()) - 1; }

PolyP from_signed(const std::vector<std::int64_t>& coeffs, std::uint64_t p) {
  PolyP f;
  f.reserve(coeffs.size());
  for (auto c : coeffs) {
    const std::int64_t r = c % static_cast<std::int64_t>(p);
    f.push_back(static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r));
  }
  trim(f);
  return f;
}

std::uint64_t eval(const PolyP& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
  return acc;
}

PolyP add(const PolyP& f, const PolyP& g, std::uint64_t p) {
  PolyP h(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = (h[i] + g[i]) % p;
  trim(h);
  return h;
}

PolyP sub(const PolyP& f, const PolyP& g, std::uint64_t p) {
  PolyP h(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = (h[i] + p - g[i]) % p;
  trim(h);
  return h;
}

PolyP mul(const PolyP& f, const PolyP& g, std::uint64_t p) {
  if (f.empty() || g.empty()) return {};
  PolyP h(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + mulmod(f[i], g[j], p)) % p;
  }
  trim(h);
  return h;
}

PolyP scale(const PolyP& f, std::uint64_t c, std::uint64_t p) {
  PolyP h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = mulmod(f[i], c % p, p);
  trim(h);
  return h;
}

PolyP divmod(PolyP& f, const PolyP& g, std::uint64_t p) {
  if (g.empty()) throw InvalidInput("polynomial division by zero");
  trim(f);
  if (f.size() < g.size()) return {};
  const std::uint64_t lead_inv = invmod(g.back(), p);
  PolyP q(f.size() - g.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::uint64_t c = mulmod(f[k + g.size() - 1], lead_inv, p);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) f[k + j] = (f[k + j] + p - mulmod(c, g[j], p)) % p;
  }
  trim(f);
  trim(q);
  return q;
}

PolyP rem(PolyP f, const PolyP& g, std::uint64_t p) {
  divmod(f, g, p);
  return f;
}

PolyP monic(const PolyP& f, std::uint64_t p) {
  if (f.empty()) return f;
  return scale(f, invmod(f.back(), p), p);
}

PolyP gcd(PolyP f, PolyP g, std::uint64_t p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    PolyP r = rem(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  return monic(f, p);
}

PolyP derivative(const PolyP& f, std::uint64_t p) {
  if (f.size() <= 1) return {};
  PolyP d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mulmod(f[i], i % p, p);
  trim(d);
  return d;
}

PolyP powmod(const PolyP& base, std::uint64_t e, const PolyP& m, std::uint64_t p) {
  PolyP result = rem(PolyP{1}, m, p);
  PolyP b = rem(base, m, p);
  while (e) {
    if (e & 1U) result = rem(mul(result, b, p), m, p);
    b = rem(mul(b, b, p), m, p);
    e >>= 1U;
  }
  return result;
}

namespace {

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const PolyP& g, std::uint64_t p, std::uint64_t& seed, std::vector<std::uint64_t>& out) {
  if (degree(g) <= 0) return;
  if (degree(g) == 1) {
    out.push_back((p - g[0]) % p);
    return;
  }
  if (p == 2) {
    // Both residues are roots.
    out.push_back(0);
    out.push_back(1);
    return;
  }
  for (;;) {
    const std::uint64_t a = seed++ % p;
    const PolyP h = powmod(PolyP{a, 1}, (p - 1) / 2, g, p);
    const PolyP d = gcd(g, sub(h, PolyP{1}, p), p);
    if (degree(d) > 0 && degree(d) < degree(g)) {
      PolyP rest = g;
      const PolyP other = divmod(rest, d, p);
      split_linear(d, p, seed, out);
      split_linear(monic(other, p), p, seed, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> roots(const PolyP& f_in, std::uint64_t p) {
  PolyP f = f_in;
  trim(f);
  if (f.empty()) throw InvalidInput("roots of the zero polynomial");
  std::vector<std::uint64_t> out;
  if (degree(f) == 0) return out;
  f = monic(f, p);
  const PolyP xp = powmod(PolyP{0, 1}, p, f, p);
  const PolyP g = gcd(f, sub(xp, PolyP{0, 1}, p), p);
  std::uint64_t seed = 1;
  split_linear(g, p, seed, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polyp
}  // namespace selmer
