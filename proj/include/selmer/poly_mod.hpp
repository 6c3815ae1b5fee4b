#pragma once

// Dense univariate polynomials over F_p (p prime, below 2^63).
// Coefficients are stored lowest degree first; the zero polynomial is empty.

#include <cstdint>
#include <vector>

namespace selmer {

using PolyP = std::vector<std::uint64_t>;

namespace polyp {

void trim(PolyP& f);
int degree(const PolyP& f);
/// Reduces integer coefficients (lowest degree first) modulo p.
PolyP from_signed(const std::vector<std::int64_t>& coeffs, std::uint64_t p);
std::uint64_t eval(const PolyP& f, std::uint64_t x, std::uint64_t p);
PolyP add(const PolyP& f, const PolyP& g, std::uint64_t p);
PolyP sub(const PolyP& f, const PolyP& g, std::uint64_t p);
PolyP mul(const PolyP& f, const PolyP& g, std::uint64_t p);
PolyP scale(const PolyP& f, std::uint64_t c, std::uint64_t p);
/// Returns the quotient; `f` becomes the remainder.
PolyP divmod(PolyP& f, const PolyP& g, std::uint64_t p);
PolyP rem(PolyP f, const PolyP& g, std::uint64_t p);
PolyP monic(const PolyP& f, std::uint64_t p);
PolyP gcd(PolyP f, PolyP g, std::uint64_t p);
PolyP derivative(const PolyP& f, std::uint64_t p);
/// base^e mod m.
PolyP powmod(const PolyP& base, std::uint64_t e, const PolyP& m, std::uint64_t p);

/// Distinct roots of f in F_p, ascending.
std::vector<std::uint64_t> roots(const PolyP& f, std::uint64_t p);

}  // namespace polyp

std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

}  // namespace selmer
