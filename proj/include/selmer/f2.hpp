#pragma once

// Linear algebra over F2: bit vectors, canonical subspaces, quadratic spaces.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace selmer {

class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t dim);
  /// Low bits of `bits` become coordinates 0..63.
  F2Vector(std::size_t dim, std::uint64_t bits);

  static F2Vector unit(std::size_t dim, std::size_t i);
  /// Parses a string of '0'/'1' characters, coordinate 0 first.
  static F2Vector parse(const std::string& s);

  std::size_t dim() const { return dim_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);
  bool is_zero() const;
  /// Index of the highest nonzero coordinate, or -1 for the zero vector.
  int leading() const;
  int weight() const;
  /// Low 64 coordinates packed into an integer.
  std::uint64_t low_bits() const;

  F2Vector& operator+=(const F2Vector& other);
  friend F2Vector operator+(F2Vector a, const F2Vector& b) { return a += b; }
  bool dot(const F2Vector& other) const;

  /// Concatenation: coordinates of `*this` followed by those of `tail`.
  F2Vector concat(const F2Vector& tail) const;
  F2Vector slice(std::size_t begin, std::size_t length) const;

  friend bool operator==(const F2Vector&, const F2Vector&) = default;
  friend std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b);

  std::string str() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Subspace of F2^n held as a reduced row-echelon basis, so two subspaces are
/// equal exactly when their representations are equal.
class F2Subspace {
 public:
  F2Subspace() = default;
  static F2Subspace zero(std::size_t ambient_dim);
  static F2Subspace full(std::size_t ambient_dim);
  static F2Subspace span(std::size_t ambient_dim, std::span<const F2Vector> vectors);
  static F2Subspace span(std::size_t ambient_dim, std::initializer_list<F2Vector> vectors);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<F2Vector>& basis() const { return basis_; }

  bool contains(const F2Vector& v) const;
  bool contains(const F2Subspace& other) const;
  /// Reduces v modulo the subspace (canonical coset representative).
  F2Vector reduce(const F2Vector& v) const;
  /// Adds v; returns false when v was already in the span.
  bool insert(const F2Vector& v);

  F2Subspace operator+(const F2Subspace& other) const;
  F2Subspace intersect(const F2Subspace& other) const;
  /// Linear functionals (as vectors under the standard dot product) vanishing on the subspace.
  F2Subspace annihilator() const;
  /// All 2^dim elements, in a deterministic order.
  std::vector<F2Vector> elements() const;

  friend bool operator==(const F2Subspace&, const F2Subspace&) = default;
  std::string str() const;

 private:
  void check_dim(const F2Vector& v) const;
  std::size_t ambient_dim_ = 0;
  std::vector<F2Vector> basis_;  // sorted by leading coordinate, descending
};

/// Kernel of the linear map sending the i-th domain basis vector to images[i].
F2Subspace kernel(std::span<const F2Vector> images, std::size_t domain_dim);
/// Image of a subspace under the linear map described by `images`.
F2Subspace image(const F2Subspace& domain, std::span<const F2Vector> images, std::size_t codomain_dim);
/// Applies the linear map described by `images` to v.
F2Vector apply(std::span<const F2Vector> images, const F2Vector& v, std::size_t codomain_dim);

/// Rank of a list of vectors.
std::size_t rank(std::span<const F2Vector> vectors);

/// Calls `visit` on every k-dimensional subspace of F2^n.
void for_each_subspace(std::size_t n, std::size_t k, const std::function<void(const F2Subspace&)>& visit);

/// Even-dimensional F2 space with a quadratic form, stored as the values on the
/// standard basis plus the Gram matrix of the associated bilinear form.
class F2QuadSpace {
 public:
  F2QuadSpace() = default;
  F2QuadSpace(std::vector<bool> q_values, std::vector<F2Vector> gram);

  std::size_t dim() const { return q_values_.size(); }
  const std::vector<bool>& q_values() const { return q_values_; }
  const std::vector<F2Vector>& gram() const { return gram_; }

  bool eval_q(const F2Vector& v) const;
  bool bilinear(const F2Vector& v, const F2Vector& w) const;
  F2Subspace orthogonal(const F2Subspace& x) const;
  bool is_nondegenerate() const;
  bool is_lagrangian(const F2Subspace& x) const;
  /// Nondegenerate and containing a Lagrangian subspace.
  bool is_metabolic() const;
  std::vector<F2Subspace> lagrangians() const;

 private:
  std::vector<bool> q_values_;
  std::vector<F2Vector> gram_;
};

/// Orthogonal sum of n hyperbolic planes: q vanishes on the standard basis and
/// e_{2i} pairs with e_{2i+1}.
F2QuadSpace standard_metabolic(std::size_t n);

/// Number of Lagrangian subspaces meeting the Lagrangian x only in 0, by exhaustive enumeration.
std::size_t count_disjoint_lagrangians(const F2QuadSpace& space, const F2Subspace& x);

}  // namespace selmer
