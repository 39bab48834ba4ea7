#include <doctest.h>

#include <cstddef>
#include <vector>

#include "twocat/errors.hpp"
#include "twocat/homgroupoid.hpp"
#include "twocat/rng.hpp"

using namespace twocat;
using namespace twocat::grpd;
using alg::AlgebraRef;
using alg::Algebra;
using alg::AlgebraElement;
using alg::AlgHom;
using alg::AlgHomRef;
using alg::inner_aut;
using alg::Unit;
using exact::FieldDesc;
using exact::Matrix;
using exact::Scalar;

namespace {

const FieldDesc kF5 = FieldDesc::prime(5);

Matrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n, kF5);
  m.at(i, j) = Scalar::one(kF5);
  return m;
}

AlgebraElement random_element(Rng& rng, const AlgebraRef& a) {
  std::vector<Scalar> coords;
  for (std::size_t k = 0; k < a->dim(); ++k) {
    coords.push_back(Scalar::fp(rng.range(0, 4), 5));
  }
  return a->from_coords(std::move(coords));
}

Unit random_unit(Rng& rng, const AlgebraRef& a) {
  for (;;) {
    if (auto u = Unit::of(random_element(rng, a))) return *u;
  }
}

// phi1 = sigma_b . phi0 . sigma_a^-1, the unique hom making (a, b) a cell
// out of phi0.
AlgHomRef shifted_by(const AlgHomRef& phi0, const Unit& a, const Unit& b) {
  return AlgHom::compose(AlgHom::inner(b), AlgHom::compose(phi0, AlgHom::inner(a.inverse())));
}

TwoCell random_cell(Rng& rng, const AlgHomRef& phi0) {
  const Unit a = random_unit(rng, phi0->src());
  const Unit b = random_unit(rng, phi0->dst());
  return require_two_cell(phi0, shifted_by(phi0, a, b), a, b, "random_cell");
}

// Shared fixture algebras: diagonal D inside M2 inside M4 (by x -> x (x) 1).
struct Tower {
  AlgebraRef D = Algebra::closure("D", {unit_matrix(2, 0, 0)});
  AlgebraRef M2 = Algebra::full_matrix("M2", 2, kF5);
  AlgebraRef M4 = Algebra::full_matrix("M4", 4, kF5);
  AlgHomRef incl;  // D -> M2
  AlgHomRef blow;  // M2 -> M4, x -> kron(x, 1)

  Tower() {
    std::vector<AlgebraElement> di;
    for (std::size_t i = 0; i < D->dim(); ++i) di.push_back(M2->element(D->basis(i)));
    incl = AlgHom::make("incl", D, M2, std::move(di));
    std::vector<AlgebraElement> bi;
    const Matrix I2 = Matrix::identity(2, kF5);
    for (std::size_t i = 0; i < M2->dim(); ++i) {
      bi.push_back(M4->element(Matrix::kron(M2->basis(i), I2)));
    }
    blow = AlgHom::make("blow", M2, M4, std::move(bi));
  }
};

}  // namespace

TEST_CASE("two-cells certify the defining square") {
  Tower t;
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Unit a = random_unit(rng, t.D);
    const Unit b = random_unit(rng, t.M2);
    const AlgHomRef phi1 = shifted_by(t.incl, a, b);
    const CellCheck cc = check_two_cell(t.incl, phi1, a, b);
    REQUIRE(cc.ok());
    const TwoCell& cell = *cc.cell;
    CHECK(cell.a() == a);
    CHECK(cell.b() == b);
    CHECK(cell.pivot() == phi1->apply(a) * b.inverse());
    // The square, spelled out on every source basis element.
    for (std::size_t i = 0; i < t.D->dim(); ++i) {
      const auto x = t.D->basis_element(i);
      CHECK(inner_aut(b, t.incl->apply(x)) == phi1->apply(inner_aut(a, x)));
    }
  }
}

TEST_CASE("failed cells report the offending basis element") {
  Tower t;
  // a = 1 + e12 is not central, so (a, 1): id => id cannot be a cell.
  const Unit a = *Unit::of(t.M2->one() + t.M2->element(unit_matrix(2, 0, 1)));
  const Unit one = *Unit::of(t.M2->one());
  const auto id = AlgHom::identity(t.M2);
  const CellCheck cc = check_two_cell(id, id, a, one);
  REQUIRE(!cc.ok());
  REQUIRE(cc.failure.has_value());
  CHECK(!cc.failure->detail.empty());
  const std::size_t i = cc.failure->basis_index;
  CHECK(inner_aut(a, t.M2->basis_element(i)) != t.M2->basis_element(i));
  CHECK_THROWS_AS(require_two_cell(id, id, a, one, "negative"), CertificationError);

  // The same pair against the properly shifted target is fine.
  CHECK(check_two_cell(id, shifted_by(id, a, one), a, one).ok());
}

TEST_CASE("vertical composition stacks cells") {
  Tower t;
  Rng rng(42);
  const Unit a0 = random_unit(rng, t.D);
  const Unit b0 = random_unit(rng, t.M2);
  const Unit a1 = random_unit(rng, t.D);
  const Unit b1 = random_unit(rng, t.M2);
  const AlgHomRef phi1 = shifted_by(t.incl, a0, b0);
  const AlgHomRef phi2 = shifted_by(phi1, a1, b1);
  const TwoCell f = require_two_cell(t.incl, phi1, a0, b0, "f");
  const TwoCell g = require_two_cell(phi1, phi2, a1, b1, "g");

  const TwoCell fg = vcompose(f, g);
  CHECK(fg.src()->equals(*t.incl));
  CHECK(fg.dst()->equals(*phi2));
  CHECK(fg.a() == a0 * a1);
  CHECK(fg.b() == b0 * b1);

  // Identity cells are neutral.
  const Unit dOne = *Unit::of(t.D->one());
  const Unit mOne = *Unit::of(t.M2->one());
  const TwoCell id_cell = require_two_cell(t.incl, t.incl, dOne, mOne, "id");
  CHECK(vcompose(id_cell, f) == f);
  const TwoCell id_on_phi1 = require_two_cell(phi1, phi1, dOne, mOne, "id1");
  CHECK(vcompose(f, id_on_phi1) == f);

  // Mismatched boundaries are rejected.
  CHECK_THROWS_AS(vcompose(f, f), ParentMismatch);
}

TEST_CASE("horizontal composition matches the pasting formula") {
  Tower t;
  Rng rng(43);
  for (int trial = 0; trial < 8; ++trial) {
    const TwoCell f = random_cell(rng, t.incl);   // in Hom(D, M2)
    const TwoCell g = random_cell(rng, t.blow);   // in Hom(M2, M4)
    const TwoCell fg = hcompose(f, g);
    CHECK(fg.src()->equals(*AlgHom::compose(g.src(), f.src())));
    CHECK(fg.dst()->equals(*AlgHom::compose(g.dst(), f.dst())));
    CHECK(fg.a() == f.a());
    CHECK(fg.b() == g.b() * g.dst()->apply(g.a().inverse() * f.b()));
  }

  // Whiskering by an identity cell on the outer hom leaves b = psi(b0).
  const TwoCell f = random_cell(rng, t.incl);
  const Unit mOne = *Unit::of(t.M2->one());
  const Unit bigOne = *Unit::of(t.M4->one());
  const TwoCell idg = require_two_cell(t.blow, t.blow, mOne, bigOne, "idg");
  const TwoCell w = hcompose(f, idg);
  CHECK(w.a() == f.a());
  CHECK(w.b() == t.blow->apply(f.b()));
}

TEST_CASE("horizontal composition is associative on the nose") {
  Tower t;
  const auto M8 = Algebra::full_matrix("M8", 8, kF5);
  std::vector<AlgebraElement> bi;
  const Matrix I2 = Matrix::identity(2, kF5);
  for (std::size_t i = 0; i < t.M4->dim(); ++i) {
    bi.push_back(M8->element(Matrix::kron(t.M4->basis(i), I2)));
  }
  const AlgHomRef blow2 = AlgHom::make("blow2", t.M4, M8, std::move(bi));

  Rng rng(44);
  for (int trial = 0; trial < 5; ++trial) {
    const TwoCell f = random_cell(rng, t.incl);
    const TwoCell g = random_cell(rng, t.blow);
    const TwoCell h = random_cell(rng, blow2);
    const AssociativityReport rep = associativity_check(f, g, h);
    CHECK(rep.holds);
    CHECK(rep.a_equal);
    CHECK(rep.b_equal);
  }
}

TEST_CASE("interchange of vertical and horizontal composition") {
  Tower t;
  Rng rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const TwoCell f0 = random_cell(rng, t.incl);
    const TwoCell f1 = random_cell(rng, f0.dst());
    const TwoCell g0 = random_cell(rng, t.blow);
    const TwoCell g1 = random_cell(rng, g0.dst());
    const InterchangeReport rep = interchange_probe(f0, f1, g0, g1);
    CHECK(rep.holds);
    CHECK(rep.a_equal);
    CHECK(rep.b_equal);
  }
}

TEST_CASE("conjugating unit search agrees with exhaustive enumeration") {
  Tower t;
  // incl vs incl twisted by the coordinate swap: conjugate homs D -> M2.
  const Matrix perm = unit_matrix(2, 0, 1) + unit_matrix(2, 1, 0);
  const Unit p = *Unit::of(t.M2->element(perm));
  const AlgHomRef twisted = AlgHom::compose(AlgHom::inner(p), t.incl);

  const ConjugacySearch found = conjugating_unit(t.incl, twisted);
  REQUIRE(found.witness.has_value());
  const Unit& w = found.witness->u;
  for (std::size_t i = 0; i < t.D->dim(); ++i) {
    CHECK(inner_aut(w, twisted->apply(t.D->basis_element(i))) ==
          t.incl->apply(t.D->basis_element(i)));
  }
  CHECK(found.witness->cell.src()->equals(*t.incl));
  CHECK(found.witness->cell.dst()->equals(*twisted));

  // Brute force over all 480 units of M2 must also find at least one, and
  // every unit it accepts must satisfy the same relation the search used.
  std::size_t oracle_hits = 0;
  for (const Unit& u : alg::enumerate_units(t.M2)) {
    bool ok = true;
    for (std::size_t i = 0; i < t.D->dim() && ok; ++i) {
      ok = inner_aut(u, twisted->apply(t.D->basis_element(i))) ==
           t.incl->apply(t.D->basis_element(i));
    }
    if (ok) ++oracle_hits;
  }
  CHECK(oracle_hits > 0);
}

TEST_CASE("pi0 separates the diagonal identity from the swap") {
  Tower t;
  // On the abelian algebra D every inner automorphism is trivial, so the
  // entry-swapping endomorphism cannot be connected to the identity.
  const Matrix e11 = unit_matrix(2, 0, 0);
  const Matrix e22 = unit_matrix(2, 1, 1);
  const auto d_id = AlgHom::identity(t.D);
  const auto d_swap = AlgHom::make(
      "swap", t.D, t.D, {t.D->one(), t.D->element(e22)});

  const ConjugacySearch s = conjugating_unit(d_id, d_swap);
  CHECK(!s.witness.has_value());
  CHECK(s.exhaustive);
  CHECK(!pi0_equal(d_id, d_swap));
  CHECK(pi0_equal(d_id, d_id));

  // Oracle: no unit of D intertwines the two.
  for (const Unit& u : alg::enumerate_units(t.D)) {
    CHECK(inner_aut(u, d_swap->apply(t.D->element(e11))) != d_id->apply(t.D->element(e11)));
  }

  // The twisted inclusion from the previous scenario is pi0-equal to incl.
  const Matrix perm = unit_matrix(2, 0, 1) + unit_matrix(2, 1, 0);
  const Unit p = *Unit::of(t.M2->element(perm));
  CHECK(pi0_equal(t.incl, AlgHom::compose(AlgHom::inner(p), t.incl)));

  CHECK(OutMorphism{d_id}.equals(OutMorphism{d_id}));
  CHECK(!OutMorphism{d_id}.equals(OutMorphism{d_swap}));
}

TEST_CASE("automorphism membership reduces to the centralizer criterion") {
  Tower t;
  Rng rng(46);
  const Unit u = random_unit(rng, t.M2);
  const AlgHomRef phi = AlgHom::inner(u);

  // b = phi(a) always gives a cell phi => phi with central pivot 1.
  for (int trial = 0; trial < 8; ++trial) {
    const Unit a = random_unit(rng, t.M2);
    const AutCheckReport rep = aut_check(phi, a, phi->apply(a));
    CHECK(rep.cell_ok);
    CHECK(rep.criterion_ok);
    CHECK(rep.iff_holds);
  }

  // A non-central pivot fails both readings at once.
  const Unit a = *Unit::of(t.M2->one() + t.M2->element(unit_matrix(2, 0, 1)));
  const Unit one = *Unit::of(t.M2->one());
  const AutCheckReport bad = aut_check(phi, a, one);
  CHECK(!bad.cell_ok);
  CHECK(!bad.criterion_ok);
  CHECK(bad.iff_holds);

  // Central a with b = 1 stays inside Aut(phi).
  const Unit two = *Unit::of(t.M2->one().scaled(Scalar::fp(2, 5)));
  const AutCheckReport central = aut_check(phi, two, one);
  CHECK(central.cell_ok);
  CHECK(central.criterion_ok);
  CHECK(central.iff_holds);

  // Random draws: the equivalence itself never breaks.
  for (int trial = 0; trial < 20; ++trial) {
    const AutCheckReport rep = aut_check(phi, random_unit(rng, t.M2), random_unit(rng, t.M2));
    CHECK(rep.iff_holds);
  }

  // On the inclusion D -> M2 the image is not all of M2: pivots only need to
  // centralize the diagonal, so the diagonal pivot itself is admissible.
  const Unit dOne = *Unit::of(t.D->one());
  const Unit diag = *Unit::of(t.M2->element(
      unit_matrix(2, 0, 0) + unit_matrix(2, 1, 1).scaled(Scalar::fp(2, 5))));
  const AutCheckReport incl_rep = aut_check(t.incl, dOne, diag);
  CHECK(incl_rep.cell_ok);
  CHECK(incl_rep.criterion_ok);
  CHECK(incl_rep.iff_holds);
}
