#pragma once

// Brute-force reference computations used to cross-check the library. They
// only use machine integers and do not call into the local or descent code.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

/// Hilbert symbol (a,b)_p by searching for a primitive solution of z^2 = a x^2 + b y^2
/// modulo p^2 (odd p) or 2^6. a, b nonzero; p small (p^4 must fit comfortably in a loop).
int hilbert(long long a, long long b, long long p);
/// (a,b) at the real place.
inline int hilbert_real(long long a, long long b) { return (a < 0 && b < 0) ? -1 : 1; }

/// Square class of a nonzero integer at p: encoded as a small integer, squares map to 0.
/// p = 0 stands for the real place.
int square_class(long long n, long long p);
/// Squarefree kernel.
long long squarefree(long long n);

/// y^2 = (x - e0)(x - e1)(x - e2) with distinct integers e0 < e1 < e2.
struct FullTorsionCurve {
  long long e[3];
};

using LocalPair = std::pair<int, int>;
/// Image of E(Q_p) in (Q_p^x/squares)^2 under P -> (x - e0, x - e1), by sampling points
/// and closing under multiplication. p = 0 for the real place.
std::set<LocalPair> local_image(const FullTorsionCurve& E, long long p);

/// Places in S: 0 (real), 2 and the primes dividing the root differences.
std::vector<long long> bad_places(const FullTorsionCurve& E);

/// Every (d0, d1) of squarefree S-integers whose local classes lie in the local image
/// at every place of S; the 2-Selmer group in the (x - e0, x - e1) coordinates.
std::vector<std::pair<long long, long long>> selmer(const FullTorsionCurve& E);

/// Number of x in F_p with f(x) = 0, f monic cubic.
int cubic_roots_mod(long long a, long long b, long long c, long long p);

/// Number of points P of E(F_p) with 4P = 0, for y^2 = x^3 + a x^2 + b x + c and odd p,
/// by enumerating the curve and applying the chord-tangent law.
int four_torsion_count(long long a, long long b, long long c, long long p);

bool is_prime(long long n);

}  // namespace oracle
