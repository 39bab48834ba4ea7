#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twocat/linalg.hpp"

namespace twocat::alg {

using exact::FieldDesc;
using exact::Matrix;
using exact::Scalar;

class Algebra;
class AlgebraElement;
using AlgebraRef = std::shared_ptr<const Algebra>;

// Finite-dimensional unital subalgebra of Mat_n(K), held as an explicit
// basis plus structure constants.  Instances are immutable and shared.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  struct SparseTerm {
    std::size_t index;
    Scalar coeff;
  };
  using ProductRule = std::function<std::vector<SparseTerm>(std::size_t, std::size_t)>;

  // Closes the span of {1} + generators under products.  Throws when the
  // dimension would exceed `cap`.
  static AlgebraRef closure(const std::string& name, const std::vector<Matrix>& generators,
                            std::size_t cap = 4096);
  static AlgebraRef full_matrix(const std::string& name, std::size_t n, const FieldDesc& field);
  // Basis already closed under products, with the product of basis elements
  // given by an explicit rule (used for bases whose products are signed
  // basis elements, where the generic span solve would be wasteful).
  static AlgebraRef with_basis(const std::string& name, const std::vector<Matrix>& basis,
                               ProductRule rule);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  const FieldDesc& field() const { return field_; }
  const Matrix& basis(std::size_t i) const { return basis_[i]; }

  bool contains(const Matrix& m) const;
  std::optional<std::vector<Scalar>> coords_of(const Matrix& m) const;

  AlgebraElement element(const Matrix& m) const;  // throws ParentMismatch if outside
  AlgebraElement from_coords(std::vector<Scalar> coords) const;
  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement basis_element(std::size_t i) const;

  // Structure constants: coordinates of basis_i * basis_j, sparse.
  std::vector<SparseTerm> basis_product(std::size_t i, std::size_t j) const;

  // Same mathematical algebra: identical field, ambient size and basis list.
  static bool same(const Algebra& a, const Algebra& b);

 protected:
  Algebra(std::string name, std::size_t ambient, const FieldDesc& field)
      : name_(std::move(name)), ambient_(ambient), field_(field), span_(ambient * ambient, field) {}

 private:
  std::string name_;
  std::size_t ambient_ = 0;
  FieldDesc field_;
  std::vector<Matrix> basis_;
  exact::SpanSolver span_;
  std::vector<Scalar> one_coords_;
  // Either a dense cached table or a rule.
  std::vector<std::vector<SparseTerm>> table_;  // index i * dim + j
  ProductRule rule_;

  void finalize();  // computes one_coords_ and the dense table
};

// Element of a fixed Algebra, stored in basis coordinates.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraRef parent, std::vector<Scalar> coords);

  const AlgebraRef& parent() const { return parent_; }
  const std::vector<Scalar>& coords() const { return coords_; }
  Matrix to_matrix() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement scaled(const Scalar& c) const;
  bool operator==(const AlgebraElement& o) const;
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const;
  // x = lambda * 1 for some scalar lambda?
  bool is_scalar(Scalar* lambda_out = nullptr) const;

  std::string str() const { return to_matrix().str(); }

 private:
  AlgebraRef parent_;
  std::vector<Scalar> coords_;

  void require_same_parent(const AlgebraElement& o) const;
};

// Invertible element bundled with its inverse (both inside the algebra).
class Unit {
 public:
  static std::optional<Unit> of(const AlgebraElement& x);
  // Pair with externally known inverse; verified.
  Unit(AlgebraElement u, AlgebraElement u_inv);

  const AlgebraElement& elem() const { return u_; }
  const AlgebraElement& inv() const { return inv_; }
  Unit inverse() const { return Unit(inv_, u_); }
  Unit operator*(const Unit& o) const { return Unit(u_ * o.u_, o.inv_ * inv_); }
  bool operator==(const Unit& o) const { return u_ == o.u_; }

 private:
  AlgebraElement u_, inv_;
};

// Inverse of x inside its own algebra (polynomial in x via the minimal
// polynomial), or nullopt when x is not a unit.
std::optional<AlgebraElement> invert_in_algebra(const AlgebraElement& x);

// sigma_u(x) = u^-1 x u.
AlgebraElement inner_aut(const Unit& u, const AlgebraElement& x);

struct SigmaCompositionReport {
  bool holds = false;
  std::optional<std::size_t> failing_basis;  // index where sigma_{ab} != sigma_b . sigma_a
};
// Checks sigma_{ab} == sigma_b . sigma_a on every basis element.
SigmaCompositionReport compose_sigma_check(const Unit& a, const Unit& b);

std::vector<AlgebraElement> center(const AlgebraRef& a);
std::vector<AlgebraElement> centralizer_in(const AlgebraRef& a,
                                           const std::vector<AlgebraElement>& s);
bool is_central(const AlgebraElement& x);

// All units of a prime-field algebra by coordinate enumeration.
// Throws when the field is infinite or the enumeration exceeds `cap` tuples.
std::vector<Unit> enumerate_units(const AlgebraRef& a, std::size_t cap = 2'000'000);

// Certified unital algebra homomorphism, defined by images of the source
// basis.  Construction verifies phi(1) = 1 and multiplicativity on all basis
// pairs; both checks are exact.
class AlgHom;
using AlgHomRef = std::shared_ptr<const AlgHom>;

class AlgHom {
 public:
  static AlgHomRef make(const std::string& name, AlgebraRef src, AlgebraRef dst,
                        std::vector<AlgebraElement> basis_images);
  static AlgHomRef identity(const AlgebraRef& a);
  static AlgHomRef compose(const AlgHomRef& outer, const AlgHomRef& inner);  // outer . inner
  // sigma_u as an endomorphism of u's algebra.
  static AlgHomRef inner(const Unit& u);

  const std::string& name() const { return name_; }
  const AlgebraRef& src() const { return src_; }
  const AlgebraRef& dst() const { return dst_; }
  const AlgebraElement& image(std::size_t i) const { return images_[i]; }
  const Matrix& image_matrix(std::size_t i) const { return image_matrices_[i]; }

  AlgebraElement apply(const AlgebraElement& x) const;
  Unit apply(const Unit& u) const;

  // Exact equality as maps: same source/target algebras and identical
  // basis images.
  bool equals(const AlgHom& o) const;

 private:
  std::string name_;
  AlgebraRef src_, dst_;
  std::vector<AlgebraElement> images_;
  std::vector<Matrix> image_matrices_;

  AlgHom(std::string name, AlgebraRef src, AlgebraRef dst, std::vector<AlgebraElement> images);
  void certify() const;
};

}  // namespace twocat::alg
