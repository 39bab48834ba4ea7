#include "twocat/instances.hpp"

namespace twocat::gen {

using exact::FieldDesc;
using exact::Matrix;
using exact::Rat;
using exact::Scalar;

Scalar random_scalar(const FieldDesc& f, Rng& rng) {
  if (f.kind == exact::FieldKind::PrimeField)
    return Scalar::fp(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(f.modulus))),
                      f.modulus);
  return Scalar::gauss(exact::rat(long(rng.range(-2, 2))), exact::rat(long(rng.range(-2, 2))));
}

alg::Unit random_unit(const alg::AlgebraRef& a, Rng& rng) {
  for (;;) {
    std::vector<Scalar> coords;
    coords.reserve(a->dim());
    for (std::size_t i = 0; i < a->dim(); ++i) coords.push_back(random_scalar(a->field(), rng));
    if (auto u = alg::Unit::of(a->from_coords(std::move(coords)))) return *u;
  }
}

alg::AlgHomRef shift_hom(const alg::AlgHomRef& phi, const alg::Unit& a, const alg::Unit& b,
                         const std::string& name) {
  std::vector<alg::AlgebraElement> images;
  images.reserve(phi->src()->dim());
  for (std::size_t i = 0; i < phi->src()->dim(); ++i) {
    const alg::AlgebraElement x = phi->src()->basis_element(i);
    images.push_back(alg::inner_aut(b, phi->apply(alg::inner_aut(a.inverse(), x))));
  }
  return alg::AlgHom::make(name, phi->src(), phi->dst(), std::move(images));
}

alg::AlgHomRef conjugation_hom(const std::string& name, const alg::AlgebraRef& src,
                               const alg::AlgebraRef& dst, const alg::Unit& u) {
  std::vector<alg::AlgebraElement> images;
  images.reserve(src->dim());
  for (std::size_t i = 0; i < src->dim(); ++i) {
    Matrix m = u.inv().to_matrix() * src->basis(i) * u.elem().to_matrix();
    images.push_back(dst->element(m));
  }
  return alg::AlgHom::make(name, src, dst, std::move(images));
}

ivl::InteriorDiffeo random_interior(const ivl::Interval& I, Rng& rng) {
  const Rat len = I.length();
  const Rat collar = len / 8;
  static const int kSixteenths[4] = {5, 6, 10, 11};
  const Rat x1 = I.left + collar;
  const Rat mid = I.left + len / 2;
  const Rat x2 = I.right - collar;
  const Rat bent = I.left + len * kSixteenths[rng.below(4)] / 16;
  std::vector<Rat> xs{I.left, x1, mid, x2, I.right};
  std::vector<Rat> ys{I.left, x1, bent, x2, I.right};
  return ivl::InteriorDiffeo(ivl::PLMap(I, I, std::move(xs), std::move(ys)), collar);
}

Matrix random_gauss_matrix(std::size_t n, Rng& rng) {
  Matrix m(n, n, FieldDesc::rationals());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) =
          Scalar::gauss(exact::rat(long(rng.range(-3, 3))), exact::rat(long(rng.range(-3, 3))));
  }
  return m;
}

Matrix random_state(std::size_t n, Rng& rng) {
  const FieldDesc f = FieldDesc::rationals();
  const Matrix g = random_gauss_matrix(n, rng);
  Matrix rho = g.dagger() * g + Matrix::identity(n, f).scaled(Scalar::of_int(long(n), f));
  const Scalar t = rho.trace();
  return rho.scaled(t.inverse());
}

}  // namespace twocat::gen
