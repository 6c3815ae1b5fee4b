#include "selmer/f2.hpp"

#include <algorithm>
#include <bit>

#include "selmer/errors.hpp"

namespace selmer {

namespace {

std::size_t words_for(std::size_t dim) { return (dim + 63) / 64; }

}  // namespace

F2Vector::F2Vector(std::size_t dim) : dim_(dim), words_(words_for(dim), 0) {}

F2Vector::F2Vector(std::size_t dim, std::uint64_t bits) : F2Vector(dim) {
  if (dim < 64) bits &= (std::uint64_t{1} << dim) - 1;
  if (!words_.empty()) words_[0] = bits;
}

F2Vector F2Vector::unit(std::size_t dim, std::size_t i) {
  F2Vector v(dim);
  v.set(i);
  return v;
}

F2Vector F2Vector::parse(const std::string& s) {
  F2Vector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      v.set(i);
    } else if (s[i] != '0') {
      throw InvalidInput("F2Vector::parse: unexpected character in '" + s + "'");
    }
  }
  return v;
}

bool F2Vector::get(std::size_t i) const {
  if (i >= dim_) throw DimensionMismatch("F2Vector::get: index out of range");
  return (words_[i / 64] >> (i % 64)) & 1U;
}

void F2Vector::set(std::size_t i, bool value) {
  if (i >= dim_) throw DimensionMismatch("F2Vector::set: index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void F2Vector::flip(std::size_t i) { set(i, !get(i)); }

bool F2Vector::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

int F2Vector::leading() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (words_[w] != 0) return static_cast<int>(w * 64 + 63 - std::countl_zero(words_[w]));
  }
  return -1;
}

int F2Vector::weight() const {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

std::uint64_t F2Vector::low_bits() const { return words_.empty() ? 0 : words_[0]; }

F2Vector& F2Vector::operator+=(const F2Vector& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("F2Vector: adding vectors of different length");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool F2Vector::dot(const F2Vector& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("F2Vector: dot product of different lengths");
  int parity = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) parity ^= std::popcount(words_[w] & other.words_[w]) & 1;
  return parity != 0;
}

F2Vector F2Vector::concat(const F2Vector& tail) const {
  F2Vector out(dim_ + tail.dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (get(i)) out.set(i);
  }
  for (std::size_t i = 0; i < tail.dim_; ++i) {
    if (tail.get(i)) out.set(dim_ + i);
  }
  return out;
}

F2Vector F2Vector::slice(std::size_t begin, std::size_t length) const {
  if (begin + length > dim_) throw DimensionMismatch("F2Vector::slice out of range");
  F2Vector out(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (get(begin + i)) out.set(i);
  }
  return out;
}

std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  for (std::size_t w = a.words_.size(); w-- > 0;) {
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string F2Vector::str() const {
  std::string s(dim_, '0');
  for (std::size_t i = 0; i < dim_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------

F2Subspace F2Subspace::zero(std::size_t ambient_dim) {
  F2Subspace s;
  s.ambient_dim_ = ambient_dim;
  return s;
}

F2Subspace F2Subspace::full(std::size_t ambient_dim) {
  F2Subspace s = zero(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) s.insert(F2Vector::unit(ambient_dim, i));
  return s;
}

F2Subspace F2Subspace::span(std::size_t ambient_dim, std::span<const F2Vector> vectors) {
  F2Subspace s = zero(ambient_dim);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

F2Subspace F2Subspace::span(std::size_t ambient_dim, std::initializer_list<F2Vector> vectors) {
  return span(ambient_dim, std::span<const F2Vector>(vectors.begin(), vectors.size()));
}

void F2Subspace::check_dim(const F2Vector& v) const {
  if (v.dim() != ambient_dim_) {
    throw DimensionMismatch("F2Subspace: vector of length " + std::to_string(v.dim()) +
                            " in ambient of dimension " + std::to_string(ambient_dim_));
  }
}

F2Vector F2Subspace::reduce(const F2Vector& v) const {
  check_dim(v);
  F2Vector r = v;
  for (const auto& b : basis_) {
    if (r.get(static_cast<std::size_t>(b.leading()))) r += b;
  }
  return r;
}

bool F2Subspace::contains(const F2Vector& v) const { return reduce(v).is_zero(); }

bool F2Subspace::contains(const F2Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("F2Subspace::contains: ambient mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const F2Vector& b) { return contains(b); });
}

bool F2Subspace::insert(const F2Vector& v) {
  F2Vector r = reduce(v);
  if (r.is_zero()) return false;
  const auto pivot = static_cast<std::size_t>(r.leading());
  for (auto& b : basis_) {
    if (b.get(pivot)) b += r;
  }
  auto pos = std::find_if(basis_.begin(), basis_.end(),
                          [&](const F2Vector& b) { return static_cast<std::size_t>(b.leading()) < pivot; });
  basis_.insert(pos, std::move(r));
  return true;
}

F2Subspace F2Subspace::operator+(const F2Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("F2Subspace::+: ambient mismatch");
  F2Subspace s = *this;
  for (const auto& b : other.basis_) s.insert(b);
  return s;
}

F2Subspace F2Subspace::intersect(const F2Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("F2Subspace::intersect: ambient mismatch");
  // x in both iff x = sum a_i b_i with (sum a_i b_i) reducing to zero mod other.
  std::vector<F2Vector> images;
  images.reserve(basis_.size());
  for (const auto& b : basis_) images.push_back(other.reduce(b));
  F2Subspace coeffs = kernel(images, basis_.size());
  F2Subspace result = zero(ambient_dim_);
  for (const auto& c : coeffs.basis()) result.insert(apply(basis_, c, ambient_dim_));
  return result;
}

F2Subspace F2Subspace::annihilator() const {
  // Functionals f with f.b = 0 for all basis vectors b.
  std::vector<F2Vector> images;
  images.reserve(ambient_dim_);
  for (std::size_t i = 0; i < ambient_dim_; ++i) {
    F2Vector col(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (basis_[j].get(i)) col.set(j);
    }
    images.push_back(std::move(col));
  }
  return kernel(images, ambient_dim_);
}

std::vector<F2Vector> F2Subspace::elements() const {
  if (basis_.size() > 24) throw Unsupported("F2Subspace::elements: subspace too large to enumerate");
  std::vector<F2Vector> out;
  const std::uint64_t count = std::uint64_t{1} << basis_.size();
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    F2Vector v(ambient_dim_);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if ((mask >> j) & 1U) v += basis_[j];
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string F2Subspace::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) s += ",";
    s += basis_[i].str();
  }
  return s + ">";
}

// ---------------------------------------------------------------------------

F2Vector apply(std::span<const F2Vector> images, const F2Vector& v, std::size_t codomain_dim) {
  if (v.dim() != images.size()) throw DimensionMismatch("apply: vector length does not match the map's domain");
  F2Vector out(codomain_dim);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (v.get(i)) out += images[i];
  }
  return out;
}

F2Subspace kernel(std::span<const F2Vector> images, std::size_t domain_dim) {
  if (images.size() != domain_dim) throw DimensionMismatch("kernel: expected one image per domain basis vector");
  if (domain_dim == 0) return F2Subspace::zero(0);
  const std::size_t m = images.front().dim();
  // Identity block in the low coordinates, image block in the high ones: the
  // echelon vectors whose leading coordinate falls in the identity block span the kernel.
  F2Subspace rows = F2Subspace::zero(domain_dim + m);
  for (std::size_t i = 0; i < domain_dim; ++i) {
    if (images[i].dim() != m) throw DimensionMismatch("kernel: images of different lengths");
    rows.insert(F2Vector::unit(domain_dim, i).concat(images[i]));
  }
  F2Subspace ker = F2Subspace::zero(domain_dim);
  for (const auto& r : rows.basis()) {
    if (static_cast<std::size_t>(r.leading()) < domain_dim) ker.insert(r.slice(0, domain_dim));
  }
  return ker;
}

F2Subspace image(const F2Subspace& domain, std::span<const F2Vector> images, std::size_t codomain_dim) {
  F2Subspace out = F2Subspace::zero(codomain_dim);
  for (const auto& b : domain.basis()) out.insert(apply(images, b, codomain_dim));
  return out;
}

std::size_t rank(std::span<const F2Vector> vectors) {
  if (vectors.empty()) return 0;
  return F2Subspace::span(vectors.front().dim(), vectors).dim();
}

void for_each_subspace(std::size_t n, std::size_t k, const std::function<void(const F2Subspace&)>& visit) {
  if (k > n) return;
  if (k == 0) {
    visit(F2Subspace::zero(n));
    return;
  }
  std::vector<std::size_t> pivots(k);
  for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    // Free coordinates of basis vector j: positions below pivots[j] that are not pivots.
    std::vector<std::vector<std::size_t>> free(k);
    std::size_t total_free = 0;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t c = 0; c < pivots[j]; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free[j].push_back(c);
      }
      total_free += free[j].size();
    }
    if (total_free > 40) throw Unsupported("for_each_subspace: enumeration too large");
    const std::uint64_t count = std::uint64_t{1} << total_free;
    std::vector<F2Vector> basis(k, F2Vector(n));
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      std::size_t bit = 0;
      for (std::size_t j = 0; j < k; ++j) {
        F2Vector v = F2Vector::unit(n, pivots[j]);
        for (auto c : free[j]) {
          if ((mask >> bit++) & 1U) v.set(c);
        }
        basis[j] = std::move(v);
      }
      visit(F2Subspace::span(n, basis));
    }
    // Next k-combination of {0..n-1}.
    std::size_t i = k;
    while (i > 0 && pivots[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

// ---------------------------------------------------------------------------

F2QuadSpace::F2QuadSpace(std::vector<bool> q_values, std::vector<F2Vector> gram)
    : q_values_(std::move(q_values)), gram_(std::move(gram)) {
  const std::size_t n = q_values_.size();
  if (gram_.size() != n) throw DimensionMismatch("F2QuadSpace: Gram matrix has wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].dim() != n) throw DimensionMismatch("F2QuadSpace: Gram row of wrong length");
    if (gram_[i].get(i)) throw InvalidInput("F2QuadSpace: Gram matrix must have zero diagonal");
    for (std::size_t j = 0; j < i; ++j) {
      if (gram_[i].get(j) != gram_[j].get(i)) throw InvalidInput("F2QuadSpace: Gram matrix must be symmetric");
    }
  }
}

bool F2QuadSpace::eval_q(const F2Vector& v) const {
  if (v.dim() != dim()) throw DimensionMismatch("eval_q: vector length does not match the space");
  bool value = false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!v.get(i)) continue;
    value ^= q_values_[i];
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (v.get(j) && gram_[i].get(j)) value = !value;
    }
  }
  return value;
}

bool F2QuadSpace::bilinear(const F2Vector& v, const F2Vector& w) const {
  if (v.dim() != dim() || w.dim() != dim()) throw DimensionMismatch("bilinear: vector length does not match the space");
  bool value = false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v.get(i) && gram_[i].dot(w)) value = !value;
  }
  return value;
}

F2Subspace F2QuadSpace::orthogonal(const F2Subspace& x) const {
  if (x.ambient_dim() != dim()) throw DimensionMismatch("orthogonal: ambient mismatch");
  // w is orthogonal to x iff (G b).w = 0 for each basis vector b.
  std::vector<F2Vector> functionals;
  for (const auto& b : x.basis()) functionals.push_back(apply(gram_, b, dim()));
  return F2Subspace::span(dim(), functionals).annihilator();
}

bool F2QuadSpace::is_nondegenerate() const { return rank(gram_) == dim(); }

bool F2QuadSpace::is_lagrangian(const F2Subspace& x) const {
  if (x.ambient_dim() != dim()) throw DimensionMismatch("is_lagrangian: ambient mismatch");
  const auto& b = x.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (eval_q(b[i])) return false;
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (bilinear(b[i], b[j])) return false;
    }
  }
  return orthogonal(x) == x;
}

std::vector<F2Subspace> F2QuadSpace::lagrangians() const {
  std::vector<F2Subspace> out;
  if (dim() % 2 != 0) return out;
  for_each_subspace(dim(), dim() / 2, [&](const F2Subspace& x) {
    if (is_lagrangian(x)) out.push_back(x);
  });
  return out;
}

bool F2QuadSpace::is_metabolic() const {
  if (dim() % 2 != 0 || !is_nondegenerate()) return false;
  bool found = false;
  for_each_subspace(dim(), dim() / 2, [&](const F2Subspace& x) {
    if (!found && is_lagrangian(x)) found = true;
  });
  return found;
}

F2QuadSpace standard_metabolic(std::size_t n) {
  std::vector<F2Vector> gram(2 * n, F2Vector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    gram[2 * i].set(2 * i + 1);
    gram[2 * i + 1].set(2 * i);
  }
  return F2QuadSpace(std::vector<bool>(2 * n, false), std::move(gram));
}

std::size_t count_disjoint_lagrangians(const F2QuadSpace& space, const F2Subspace& x) {
  if (x.ambient_dim() != space.dim()) throw DimensionMismatch("count_disjoint_lagrangians: ambient mismatch");
  if (!space.is_metabolic()) throw InvalidInput("count_disjoint_lagrangians: space is not metabolic");
  if (!space.is_lagrangian(x)) throw InvalidInput("count_disjoint_lagrangians: X is not Lagrangian");
  std::size_t count = 0;
  for_each_subspace(space.dim(), space.dim() / 2, [&](const F2Subspace& y) {
    if (y.intersect(x).dim() == 0 && space.is_lagrangian(y)) ++count;
  });
  return count;
}

}  // namespace selmer
