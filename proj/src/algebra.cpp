#include "twocat/algebra.hpp"

#include <deque>

namespace twocat::alg {

namespace {

struct AlgebraAccess : Algebra {
  // Algebra has private constructors; build through a derived helper so
  // std::make_shared works without friending it.
  AlgebraAccess(std::string name, std::size_t ambient, const FieldDesc& field)
      : Algebra(std::move(name), ambient, field) {}
};

}  // namespace

AlgebraRef Algebra::closure(const std::string& name, const std::vector<Matrix>& generators,
                            std::size_t cap) {
  if (generators.empty()) throw ShapeError("closure: no generators");
  const std::size_t n = generators[0].rows();
  const FieldDesc field = generators[0].field();
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n) throw ShapeError("closure: generators must be square and equal-sized");
    if (!(g.field() == field)) throw FieldMismatch("closure: generators over mixed fields");
  }
  auto a = std::make_shared<AlgebraAccess>(name, n, field);
  Algebra& A = *a;

  std::deque<std::size_t> fresh;
  auto try_add = [&](const Matrix& m) {
    if (!A.span_.add(m.flatten())) return;
    A.basis_.push_back(m);
    fresh.push_back(A.basis_.size() - 1);
    if (A.basis_.size() > cap) {
      throw ShapeError("closure: dimension cap " + std::to_string(cap) + " exceeded");
    }
  };
  try_add(Matrix::identity(n, field));
  for (const auto& g : generators) try_add(g);
  while (!fresh.empty()) {
    const std::size_t i = fresh.front();
    fresh.pop_front();
    // Products with everything currently in the basis, both orders.
    for (std::size_t j = 0; j < A.basis_.size(); ++j) {
      try_add(A.basis_[i] * A.basis_[j]);
      if (j != i) try_add(A.basis_[j] * A.basis_[i]);
    }
  }
  A.finalize();
  return a;
}

AlgebraRef Algebra::full_matrix(const std::string& name, std::size_t n, const FieldDesc& field) {
  // Matrix units e_ij in row-major order.
  auto a = std::make_shared<AlgebraAccess>(name, n, field);
  Algebra& A = *a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix m(n, n, field);
      m.at(i, j) = Scalar::one(field);
      A.basis_.push_back(m);
      A.span_.add(m.flatten());
    }
  }
  A.finalize();
  return a;
}

AlgebraRef Algebra::with_basis(const std::string& name, const std::vector<Matrix>& basis,
                               ProductRule rule) {
  if (basis.empty()) throw ShapeError("with_basis: empty basis");
  const std::size_t n = basis[0].rows();
  auto a = std::make_shared<AlgebraAccess>(name, n, basis[0].field());
  Algebra& A = *a;
  for (const auto& m : basis) {
    if (!A.span_.add(m.flatten())) {
      throw ShapeError("with_basis: basis is linearly dependent");
    }
    A.basis_.push_back(m);
  }
  A.rule_ = std::move(rule);
  // One consistency probe: the rule must reproduce an actual product.
  const auto& terms = A.rule_(0, 0);
  Matrix check(n, n, A.field_);
  for (const auto& t : terms) check = check + A.basis_[t.index].scaled(t.coeff);
  if (!(check == A.basis_[0] * A.basis_[0])) {
    throw CertificationError("with_basis: product rule disagrees with matrix product at (0,0)");
  }
  auto one = A.coords_of(Matrix::identity(n, A.field_));
  if (!one) throw ShapeError("with_basis: basis does not span the identity");
  A.one_coords_ = *one;
  return a;
}

void Algebra::finalize() {
  auto one = coords_of(Matrix::identity(ambient_, field_));
  if (!one) throw ShapeError("algebra does not contain the identity");
  one_coords_ = *one;
  // Dense structure-constant table for small algebras; larger ones would be
  // built through with_basis and its rule instead.
  const std::size_t m = basis_.size();
  if (m <= 128) {
    table_.resize(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        auto c = span_.coords((basis_[i] * basis_[j]).flatten());
        if (!c) throw ShapeError("basis not closed under products");
        std::vector<SparseTerm> terms;
        for (std::size_t k = 0; k < c->size(); ++k) {
          if (!(*c)[k].is_zero()) terms.push_back({k, (*c)[k]});
        }
        table_[i * m + j] = std::move(terms);
      }
    }
  }
}

bool Algebra::contains(const Matrix& m) const {
  if (m.rows() != ambient_ || m.cols() != ambient_ || !(m.field() == field_)) return false;
  return span_.contains(m.flatten());
}

std::optional<std::vector<Scalar>> Algebra::coords_of(const Matrix& m) const {
  if (m.rows() != ambient_ || m.cols() != ambient_) throw ShapeError("coords_of: shape mismatch");
  if (!(m.field() == field_)) throw FieldMismatch("coords_of: field mismatch");
  return span_.coords(m.flatten());
}

AlgebraElement Algebra::element(const Matrix& m) const {
  auto c = coords_of(m);
  if (!c) throw ParentMismatch("matrix lies outside algebra " + name_);
  return AlgebraElement(shared_from_this(), std::move(*c));
}

AlgebraElement Algebra::from_coords(std::vector<Scalar> coords) const {
  if (coords.size() != dim()) throw ShapeError("from_coords: wrong length");
  return AlgebraElement(shared_from_this(), std::move(coords));
}

AlgebraElement Algebra::zero() const {
  return AlgebraElement(shared_from_this(), std::vector<Scalar>(dim(), Scalar::zero(field_)));
}

AlgebraElement Algebra::one() const {
  return AlgebraElement(shared_from_this(), one_coords_);
}

AlgebraElement Algebra::basis_element(std::size_t i) const {
  std::vector<Scalar> c(dim(), Scalar::zero(field_));
  c.at(i) = Scalar::one(field_);
  return AlgebraElement(shared_from_this(), std::move(c));
}

std::vector<Algebra::SparseTerm> Algebra::basis_product(std::size_t i, std::size_t j) const {
  if (!table_.empty()) return table_[i * dim() + j];
  if (rule_) return rule_(i, j);
  auto c = span_.coords((basis_[i] * basis_[j]).flatten());
  if (!c) throw ShapeError("basis not closed under products");
  std::vector<SparseTerm> terms;
  for (std::size_t k = 0; k < c->size(); ++k)
    if (!(*c)[k].is_zero()) terms.push_back({k, (*c)[k]});
  return terms;
}

bool Algebra::same(const Algebra& a, const Algebra& b) {
  if (&a == &b) return true;
  if (a.ambient_ != b.ambient_ || !(a.field_ == b.field_) || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!(a.basis_[i] == b.basis_[i])) return false;
  return true;
}

AlgebraElement::AlgebraElement(AlgebraRef parent, std::vector<Scalar> coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (coords_.size() != parent_->dim()) throw ShapeError("element coords length mismatch");
}

Matrix AlgebraElement::to_matrix() const {
  Matrix m(parent_->ambient(), parent_->ambient(), parent_->field());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!coords_[i].is_zero()) m = m + parent_->basis(i).scaled(coords_[i]);
  }
  return m;
}

void AlgebraElement::require_same_parent(const AlgebraElement& o) const {
  if (!Algebra::same(*parent_, *o.parent_)) {
    throw ParentMismatch("elements of different algebras: " + parent_->name() + " vs " +
                         o.parent_->name());
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same_parent(o);
  std::vector<Scalar> c(coords_.size(), Scalar::zero(parent_->field()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return AlgebraElement(parent_, std::move(c));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  return *this + (-o);
}

AlgebraElement AlgebraElement::operator-() const {
  std::vector<Scalar> c(coords_.size(), Scalar::zero(parent_->field()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return AlgebraElement(parent_, std::move(c));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  require_same_parent(o);
  std::vector<Scalar> c(coords_.size(), Scalar::zero(parent_->field()));
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coords_.size(); ++j) {
      if (o.coords_[j].is_zero()) continue;
      const Scalar f = coords_[i] * o.coords_[j];
      for (const auto& t : parent_->basis_product(i, j)) c[t.index] = c[t.index] + f * t.coeff;
    }
  }
  return AlgebraElement(parent_, std::move(c));
}

AlgebraElement AlgebraElement::scaled(const Scalar& s) const {
  std::vector<Scalar> c(coords_.size(), Scalar::zero(parent_->field()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * s;
  return AlgebraElement(parent_, std::move(c));
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  if (!Algebra::same(*parent_, *o.parent_)) return false;
  return coords_ == o.coords_;
}

bool AlgebraElement::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

bool AlgebraElement::is_one() const { return *this == parent_->one(); }

bool AlgebraElement::is_scalar(Scalar* lambda_out) const {
  return to_matrix().is_scalar_multiple_of_identity(lambda_out);
}

std::optional<Unit> Unit::of(const AlgebraElement& x) {
  auto inv = invert_in_algebra(x);
  if (!inv) return std::nullopt;
  return Unit(x, *inv);
}

Unit::Unit(AlgebraElement u, AlgebraElement u_inv) : u_(std::move(u)), inv_(std::move(u_inv)) {
  if (!(u_ * inv_).is_one() || !(inv_ * u_).is_one()) {
    throw NotAUnit("claimed inverse fails u * u^-1 = 1");
  }
}

std::optional<AlgebraElement> invert_in_algebra(const AlgebraElement& x) {
  // Minimal polynomial route: if m(t) = c_0 + c_1 t + ... + t^d with c_0 != 0
  // then x^-1 = -(c_1 + c_2 x + ... + x^{d-1}) / c_0, a polynomial in x, so
  // the inverse stays inside every algebra containing x.
  const auto mp = exact::minimal_polynomial(x.to_matrix());
  if (mp[0].is_zero()) return std::nullopt;
  const auto& A = x.parent();
  AlgebraElement acc = A->zero();
  AlgebraElement pw = A->one();
  for (std::size_t i = 1; i < mp.size(); ++i) {
    acc = acc + pw.scaled(mp[i]);
    if (i + 1 < mp.size()) pw = pw * x;
  }
  return acc.scaled(-(mp[0].inverse()));
}

AlgebraElement inner_aut(const Unit& u, const AlgebraElement& x) {
  return u.inv() * x * u.elem();
}

SigmaCompositionReport compose_sigma_check(const Unit& a, const Unit& b) {
  const auto& A = a.elem().parent();
  if (!Algebra::same(*A, *b.elem().parent())) throw ParentMismatch("compose_sigma_check: mixed algebras");
  const Unit ab = a * b;
  for (std::size_t k = 0; k < A->dim(); ++k) {
    const AlgebraElement e = A->basis_element(k);
    if (!(inner_aut(ab, e) == inner_aut(b, inner_aut(a, e)))) {
      return {false, k};
    }
  }
  return {true, std::nullopt};
}

std::vector<AlgebraElement> centralizer_in(const AlgebraRef& a,
                                           const std::vector<AlgebraElement>& s) {
  const std::size_t m = a->dim();
  std::vector<std::vector<Scalar>> constraints;
  for (const auto& x : s) {
    if (!Algebra::same(*a, *x.parent())) throw ParentMismatch("centralizer_in: element of other algebra");
    // Row per target coordinate of z*x - x*z, unknowns = coords of z.
    std::vector<std::vector<Scalar>> cols;
    cols.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      cols.push_back((a->basis_element(j) * x - x * a->basis_element(j)).coords());
    }
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Scalar> row(m, Scalar::zero(a->field()));
      for (std::size_t j = 0; j < m; ++j) row[j] = cols[j][k];
      constraints.push_back(std::move(row));
    }
  }
  auto kernel = exact::solve_linear(constraints, m, a->field());
  std::vector<AlgebraElement> out;
  out.reserve(kernel.size());
  for (auto& v : kernel) out.push_back(a->from_coords(std::move(v)));
  return out;
}

std::vector<AlgebraElement> center(const AlgebraRef& a) {
  std::vector<AlgebraElement> basis;
  basis.reserve(a->dim());
  for (std::size_t i = 0; i < a->dim(); ++i) basis.push_back(a->basis_element(i));
  return centralizer_in(a, basis);
}

bool is_central(const AlgebraElement& x) {
  const auto& A = x.parent();
  for (std::size_t i = 0; i < A->dim(); ++i) {
    const AlgebraElement e = A->basis_element(i);
    if (!(e * x == x * e)) return false;
  }
  return true;
}

std::vector<Unit> enumerate_units(const AlgebraRef& a, std::size_t cap) {
  if (a->field().kind != exact::FieldKind::PrimeField) {
    throw FieldMismatch("enumerate_units requires a prime field");
  }
  const std::int64_t p = a->field().modulus;
  double total = 1;
  for (std::size_t i = 0; i < a->dim(); ++i) total *= static_cast<double>(p);
  if (total > static_cast<double>(cap)) {
    throw ShapeError("enumerate_units: p^dim exceeds cap");
  }
  std::vector<Unit> units;
  std::vector<std::int64_t> digits(a->dim(), 0);
  for (;;) {
    std::vector<Scalar> coords;
    coords.reserve(a->dim());
    for (auto d : digits) coords.push_back(Scalar::fp(d, p));
    auto u = Unit::of(a->from_coords(std::move(coords)));
    if (u) units.push_back(std::move(*u));
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return units;
}

AlgHom::AlgHom(std::string name, AlgebraRef src, AlgebraRef dst,
               std::vector<AlgebraElement> images)
    : name_(std::move(name)), src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
  if (images_.size() != src_->dim()) throw ShapeError("hom: one image per source basis element required");
  for (const auto& im : images_) {
    if (!Algebra::same(*im.parent(), *dst_)) throw ParentMismatch("hom image outside target algebra");
  }
  image_matrices_.reserve(images_.size());
  for (const auto& im : images_) image_matrices_.push_back(im.to_matrix());
}

void AlgHom::certify() const {
  // Unital: the identity's coordinates must map to the identity.
  Matrix one_img(dst_->ambient(), dst_->ambient(), dst_->field());
  {
    auto c = src_->coords_of(Matrix::identity(src_->ambient(), src_->field()));
    for (std::size_t i = 0; i < c->size(); ++i) {
      if (!(*c)[i].is_zero()) one_img = one_img + image_matrices_[i].scaled((*c)[i]);
    }
  }
  if (!one_img.is_identity()) {
    throw CertificationError("hom " + name_ + ": phi(1) != 1");
  }
  // Multiplicative on every basis pair.
  const std::size_t m = src_->dim();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Matrix lhs(dst_->ambient(), dst_->ambient(), dst_->field());
      for (const auto& t : src_->basis_product(i, j)) {
        lhs = lhs + image_matrices_[t.index].scaled(t.coeff);
      }
      if (!(lhs == image_matrices_[i] * image_matrices_[j])) {
        throw CertificationError("hom " + name_ + ": phi(e_" + std::to_string(i) + " e_" +
                                 std::to_string(j) + ") != phi(e_" + std::to_string(i) +
                                 ") phi(e_" + std::to_string(j) + ")");
      }
    }
  }
}

AlgHomRef AlgHom::make(const std::string& name, AlgebraRef src, AlgebraRef dst,
                       std::vector<AlgebraElement> basis_images) {
  auto h = AlgHomRef(new AlgHom(name, std::move(src), std::move(dst), std::move(basis_images)));
  h->certify();
  return h;
}

AlgHomRef AlgHom::identity(const AlgebraRef& a) {
  std::vector<AlgebraElement> images;
  images.reserve(a->dim());
  for (std::size_t i = 0; i < a->dim(); ++i) images.push_back(a->basis_element(i));
  // Identity is trivially a hom; construction without re-certification.
  return AlgHomRef(new AlgHom("id_" + a->name(), a, a, std::move(images)));
}

AlgHomRef AlgHom::compose(const AlgHomRef& outer, const AlgHomRef& inner) {
  if (!Algebra::same(*inner->dst(), *outer->src())) {
    throw ParentMismatch("compose: codomain of " + inner->name() + " is not the domain of " +
                         outer->name());
  }
  std::vector<AlgebraElement> images;
  images.reserve(inner->src()->dim());
  for (std::size_t i = 0; i < inner->src()->dim(); ++i) {
    images.push_back(outer->apply(inner->image(i)));
  }
  // A composite of certified homs is a hom; skip the quadratic recheck.
  return AlgHomRef(new AlgHom(outer->name() + "." + inner->name(), inner->src(), outer->dst(),
                              std::move(images)));
}

AlgHomRef AlgHom::inner(const Unit& u) {
  const auto& A = u.elem().parent();
  std::vector<AlgebraElement> images;
  images.reserve(A->dim());
  for (std::size_t i = 0; i < A->dim(); ++i) {
    images.push_back(inner_aut(u, A->basis_element(i)));
  }
  // sigma_u is a hom by construction.
  return AlgHomRef(new AlgHom("sigma", A, A, std::move(images)));
}

AlgebraElement AlgHom::apply(const AlgebraElement& x) const {
  if (!Algebra::same(*x.parent(), *src_)) throw ParentMismatch("apply: element outside source algebra");
  AlgebraElement acc = dst_->zero();
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    if (!x.coords()[i].is_zero()) acc = acc + images_[i].scaled(x.coords()[i]);
  }
  return acc;
}

Unit AlgHom::apply(const Unit& u) const {
  return Unit(apply(u.elem()), apply(u.inv()));
}

bool AlgHom::equals(const AlgHom& o) const {
  if (!Algebra::same(*src_, *o.src_) || !Algebra::same(*dst_, *o.dst_)) return false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!(image_matrices_[i] == o.image_matrices_[i])) return false;
  }
  return true;
}

}  // namespace twocat::alg
