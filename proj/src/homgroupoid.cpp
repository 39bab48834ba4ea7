#include "twocat/homgroupoid.hpp"

#include "twocat/rng.hpp"

namespace twocat::grpd {

using alg::Algebra;
using alg::AlgebraRef;
using exact::FieldDesc;
using exact::FieldKind;
using exact::Matrix;
using exact::Scalar;

namespace {

// Certification helper shared by check_two_cell and the TwoCell constructor.
std::optional<CellFailure> certify_cell(const AlgHomRef& phi0, const AlgHomRef& phi1,
                                        const Unit& a, const Unit& b, const Unit& pivot) {
  const AlgebraRef& A = phi0->src();
  for (std::size_t i = 0; i < A->dim(); ++i) {
    const AlgebraElement e = A->basis_element(i);
    const AlgebraElement lhs = alg::inner_aut(b, phi0->apply(e));
    const AlgebraElement rhs = phi1->apply(alg::inner_aut(a, e));
    if (!(lhs == rhs)) {
      return CellFailure{i, "sigma_b(phi0(e_" + std::to_string(i) + ")) != phi1(sigma_a(e_" +
                                std::to_string(i) + "))"};
    }
    // Single-conjugator form: sigma_w(phi1(x)) == phi0(x).
    if (!(alg::inner_aut(pivot, phi1->apply(e)) == phi0->apply(e))) {
      return CellFailure{i, "pivot form fails at basis " + std::to_string(i)};
    }
  }
  // Exchange identity phi1(a) b^-1 == b^-1 phi0(a).
  if (!(phi1->apply(a.elem()) * b.inv() == b.inv() * phi0->apply(a.elem()))) {
    return CellFailure{0, "exchange identity phi1(a) b^-1 == b^-1 phi0(a) fails"};
  }
  return std::nullopt;
}

Unit make_pivot(const AlgHomRef& phi1, const Unit& a, const Unit& b) {
  return phi1->apply(a) * b.inverse();
}

void require_parallel(const AlgHomRef& phi0, const AlgHomRef& phi1) {
  if (!Algebra::same(*phi0->src(), *phi1->src()) || !Algebra::same(*phi0->dst(), *phi1->dst())) {
    throw ParentMismatch("homs " + phi0->name() + " and " + phi1->name() + " are not parallel");
  }
}

}  // namespace

TwoCell::TwoCell(AlgHomRef src, AlgHomRef dst, Unit a, Unit b)
    : src_(std::move(src)),
      dst_(std::move(dst)),
      a_(std::move(a)),
      b_(std::move(b)),
      pivot_(make_pivot(dst_, a_, b_)) {
  require_parallel(src_, dst_);
  if (!Algebra::same(*a_.elem().parent(), *src_->src())) {
    throw ParentMismatch("cell component a must be a unit of the source algebra");
  }
  if (!Algebra::same(*b_.elem().parent(), *src_->dst())) {
    throw ParentMismatch("cell component b must be a unit of the target algebra");
  }
  if (auto fail = certify_cell(src_, dst_, a_, b_, pivot_)) {
    throw CertificationError("two-cell certification failed: " + fail->detail);
  }
}

bool TwoCell::operator==(const TwoCell& o) const {
  return src_->equals(*o.src_) && dst_->equals(*o.dst_) && a_.elem() == o.a_.elem() &&
         b_.elem() == o.b_.elem();
}

CellCheck check_two_cell(const AlgHomRef& phi0, const AlgHomRef& phi1, const Unit& a,
                         const Unit& b) {
  require_parallel(phi0, phi1);
  const Unit pivot = make_pivot(phi1, a, b);
  if (auto fail = certify_cell(phi0, phi1, a, b, pivot)) {
    return CellCheck{std::nullopt, fail};
  }
  return CellCheck{TwoCell(phi0, phi1, a, b), std::nullopt};
}

TwoCell require_two_cell(const AlgHomRef& phi0, const AlgHomRef& phi1, const Unit& a,
                         const Unit& b, const std::string& context) {
  auto r = check_two_cell(phi0, phi1, a, b);
  if (!r.ok()) {
    throw CertificationError(context + ": " + r.failure->detail);
  }
  return *r.cell;
}

TwoCell vcompose(const TwoCell& f, const TwoCell& g) {
  if (!f.dst()->equals(*g.src())) {
    throw ParentMismatch("vcompose: cells are not vertically composable");
  }
  return require_two_cell(f.src(), g.dst(), f.a() * g.a(), f.b() * g.b(),
                          "vcompose result failed certification");
}

TwoCell hcompose(const TwoCell& f, const TwoCell& g) {
  if (!Algebra::same(*f.src()->dst(), *g.src()->src())) {
    throw ParentMismatch("hcompose: middle algebras differ");
  }
  const AlgHomRef& psi0 = g.src();
  const AlgHomRef& psi1 = g.dst();
  // (a, b0) x (b1, c) = (a, c * psi1(b1^-1 b0)).
  const Unit b_mid = g.a().inverse() * f.b();
  const Unit d = g.b() * psi1->apply(b_mid);
  const AlgHomRef lower = AlgHom::compose(psi0, f.src());
  const AlgHomRef upper = AlgHom::compose(psi1, f.dst());
  return require_two_cell(lower, upper, f.a(), d,
                          "hcompose: composite cell failed certification (composition law violated)");
}

AssociativityReport associativity_check(const TwoCell& f, const TwoCell& g, const TwoCell& h) {
  const TwoCell left = hcompose(hcompose(f, g), h);
  const TwoCell right = hcompose(f, hcompose(g, h));
  AssociativityReport r;
  r.a_equal = left.a().elem() == right.a().elem();
  r.b_equal = left.b().elem() == right.b().elem();
  r.holds = r.a_equal && r.b_equal && left.src()->equals(*right.src()) &&
            left.dst()->equals(*right.dst());
  return r;
}

namespace {

// Sweep + sampling over the intertwiner solution space looking for a unit.
std::optional<Unit> find_unit_in_span(const AlgebraRef& B,
                                      const std::vector<std::vector<Scalar>>& kernel,
                                      std::uint64_t seed, std::size_t random_draws,
                                      std::size_t enum_cap, bool* exhaustive) {
  *exhaustive = false;
  if (kernel.empty()) {
    *exhaustive = true;
    return std::nullopt;
  }
  const FieldDesc field = B->field();
  auto combine = [&](const std::vector<Scalar>& coeff) -> std::optional<Unit> {
    std::vector<Scalar> coords(B->dim(), Scalar::zero(field));
    bool nonzero = false;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      if (coeff[k].is_zero()) continue;
      nonzero = true;
      for (std::size_t j = 0; j < coords.size(); ++j)
        coords[j] = coords[j] + coeff[k] * kernel[k][j];
    }
    if (!nonzero) return std::nullopt;
    return Unit::of(B->from_coords(std::move(coords)));
  };

  // Single basis vectors first; for a one-dimensional space this settles it.
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    std::vector<Scalar> coeff(kernel.size(), Scalar::zero(field));
    coeff[k] = Scalar::one(field);
    if (auto u = combine(coeff)) return u;
  }
  if (kernel.size() == 1) {
    // Every element of a 1-dim space is a scalar multiple of the basis
    // vector, so invertibility was decided above.
    *exhaustive = true;
    return std::nullopt;
  }

  if (field.kind == FieldKind::PrimeField) {
    const std::int64_t p = field.modulus;
    double total = 1;
    for (std::size_t k = 0; k < kernel.size(); ++k) total *= static_cast<double>(p);
    if (total <= static_cast<double>(enum_cap)) {
      std::vector<std::int64_t> digits(kernel.size(), 0);
      for (;;) {
        std::vector<Scalar> coeff;
        coeff.reserve(kernel.size());
        for (auto d : digits) coeff.push_back(Scalar::fp(d, p));
        if (auto u = combine(coeff)) return u;
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
        if (k == digits.size()) break;
      }
      *exhaustive = true;
      return std::nullopt;
    }
    // Too many tuples: seeded sampling, inconclusive on failure.
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (std::size_t t = 0; t < random_draws; ++t) {
      std::vector<Scalar> coeff;
      coeff.reserve(kernel.size());
      for (std::size_t k = 0; k < kernel.size(); ++k)
        coeff.push_back(Scalar::fp(static_cast<std::int64_t>(rng.below(p)), p));
      if (auto u = combine(coeff)) return u;
    }
    return std::nullopt;
  }

  // Q(i): deterministic small-coefficient sweep, then seeded random draws.
  const std::vector<Scalar> small = {
      Scalar::gauss(0),  Scalar::gauss(1),     Scalar::gauss(-1),
      Scalar::gauss(0, 1), Scalar::gauss(0, -1), Scalar::gauss(2),
  };
  const std::size_t sweep_dims = kernel.size() <= 4 ? kernel.size() : 4;
  std::vector<std::size_t> idx(sweep_dims, 0);
  for (;;) {
    std::vector<Scalar> coeff(kernel.size(), Scalar::zero(field));
    for (std::size_t k = 0; k < sweep_dims; ++k) coeff[k] = small[idx[k]];
    if (auto u = combine(coeff)) return u;
    std::size_t k = 0;
    while (k < sweep_dims && ++idx[k] == small.size()) idx[k++] = 0;
    if (k == sweep_dims) break;
  }
  Rng rng(seed ^ 0xda3e39cb94b95bdbull);
  for (std::size_t t = 0; t < random_draws; ++t) {
    std::vector<Scalar> coeff;
    coeff.reserve(kernel.size());
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      const long re = rng.range(-4, 4);
      const long im = rng.range(-2, 2);
      coeff.push_back(Scalar::gauss(exact::rat(re), exact::rat(im)));
    }
    if (auto u = combine(coeff)) return u;
  }
  return std::nullopt;
}

}  // namespace

ConjugacySearch conjugating_unit(const AlgHomRef& phi0, const AlgHomRef& phi1, std::uint64_t seed,
                                 std::size_t random_draws, std::size_t enum_cap) {
  require_parallel(phi0, phi1);
  const AlgebraRef& A = phi0->src();
  const AlgebraRef& B = phi0->dst();
  // Intertwiner system phi1(e_i) u - u phi0(e_i) = 0 over u's coordinates.
  const std::size_t m = B->dim();
  std::vector<std::vector<Scalar>> constraints;
  for (std::size_t i = 0; i < A->dim(); ++i) {
    const AlgebraElement l = phi1->image(i);
    const AlgebraElement r = phi0->image(i);
    std::vector<std::vector<Scalar>> cols;
    cols.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      cols.push_back((l * B->basis_element(j) - B->basis_element(j) * r).coords());
    }
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Scalar> row(m, Scalar::zero(B->field()));
      for (std::size_t j = 0; j < m; ++j) row[j] = cols[j][k];
      constraints.push_back(std::move(row));
    }
  }
  auto kernel = exact::solve_linear(constraints, m, B->field());
  ConjugacySearch out;
  auto u = find_unit_in_span(B, kernel, seed, random_draws, enum_cap, &out.exhaustive);
  if (!u) return out;
  // sigma_u . phi1 == phi0 makes (1, u^-1) a cell phi0 => phi1.
  auto one_a = Unit(A->one(), A->one());
  TwoCell cell = require_two_cell(phi0, phi1, one_a, u->inverse(),
                                  "conjugating_unit: witness failed certification");
  out.witness = ConjugacyWitness{*u, std::move(cell)};
  return out;
}

bool pi0_equal(const AlgHomRef& phi0, const AlgHomRef& phi1, std::uint64_t seed) {
  return conjugating_unit(phi0, phi1, seed).witness.has_value();
}

AutCheckReport aut_check(const AlgHomRef& phi, const Unit& a, const Unit& b) {
  AutCheckReport r;
  r.cell_ok = check_two_cell(phi, phi, a, b).ok();
  // w = phi(a) b^-1 must commute with the whole image of phi.
  const AlgebraElement w = phi->apply(a.elem()) * b.inv();
  r.criterion_ok = true;
  for (std::size_t i = 0; i < phi->src()->dim(); ++i) {
    const AlgebraElement im = phi->image(i);
    if (!(w * im == im * w)) {
      r.criterion_ok = false;
      break;
    }
  }
  r.iff_holds = r.cell_ok == r.criterion_ok;
  return r;
}

InterchangeReport interchange_probe(const TwoCell& f0, const TwoCell& f1, const TwoCell& g0,
                                    const TwoCell& g1) {
  const TwoCell left = hcompose(vcompose(f0, f1), vcompose(g0, g1));
  const TwoCell right = vcompose(hcompose(f0, g0), hcompose(f1, g1));
  InterchangeReport r;
  r.a_equal = left.a().elem() == right.a().elem();
  r.b_equal = left.b().elem() == right.b().elem();
  r.holds = r.a_equal && r.b_equal;
  return r;
}

}  // namespace twocat::grpd
