#include "twocat/selftest.hpp"

#include "twocat/instances.hpp"
#include "twocat/quantization.hpp"
#include "twocat/rewrite.hpp"

namespace twocat {

using exact::FieldDesc;
using exact::Matrix;
using exact::Rat;
using exact::Scalar;
using gen::random_gauss_matrix;
using gen::random_interior;
using gen::random_state;
using gen::random_unit;
using gen::shift_hom;
using json = ser::json;

SelftestReport selftest_battery(std::uint64_t seed) {
  Rng rng(seed);
  bool all_ok = true;
  json checks = json::array();
  auto add = [&](const char* name, bool ok, std::size_t instances) {
    json c;
    c["name"] = name;
    c["ok"] = ok;
    c["instances"] = instances;
    checks.push_back(std::move(c));
    all_ok = all_ok && ok;
  };

  {
    bool ok = true;
    const FieldDesc fields[2] = {FieldDesc::prime(5), FieldDesc::rationals()};
    std::size_t n = 0;
    for (const FieldDesc& f : fields) {
      for (int i = 0; i < 100; ++i) {
        Scalar s = f.kind == exact::FieldKind::PrimeField
                       ? Scalar::fp(rng.range(0, 4), 5)
                       : Scalar::gauss(exact::rat(long(rng.range(-9, 9)), long(rng.range(1, 9))),
                                       exact::rat(long(rng.range(-9, 9)), long(rng.range(1, 9))));
        ok &= Scalar::parse(s.str(), f) == s;
        ++n;
      }
    }
    add("scalar_roundtrip", ok, n);
  }

  auto M = alg::Algebra::full_matrix("M", 2, FieldDesc::prime(5));
  {
    bool ok = true;
    for (int i = 0; i < 30; ++i) {
      const alg::Unit u = random_unit(M, rng);
      ok &= (u.elem() * u.inv()).is_one() && (u.inv() * u.elem()).is_one();
    }
    add("unit_inverses", ok, 30);
  }
  {
    bool ok = true;
    for (int i = 0; i < 40; ++i)
      ok &= alg::compose_sigma_check(random_unit(M, rng), random_unit(M, rng)).holds;
    add("sigma_composition", ok, 40);
  }
  {
    bool ok = true;
    const alg::AlgHomRef id = alg::AlgHom::identity(M);
    for (int i = 0; i < 15; ++i) {
      const alg::Unit a = random_unit(M, rng), b = random_unit(M, rng);
      const alg::Unit b1 = random_unit(M, rng), c = random_unit(M, rng);
      const alg::AlgHomRef phi1 = shift_hom(id, a, b, "phi1");
      const alg::AlgHomRef psi1 = shift_hom(id, b1, c, "psi1");
      const grpd::TwoCell f = grpd::require_two_cell(id, phi1, a, b, "selftest f");
      const grpd::TwoCell g = grpd::require_two_cell(id, psi1, b1, c, "selftest g");
      const grpd::TwoCell fg = grpd::hcompose(f, g);
      ok &= grpd::check_two_cell(fg.src(), fg.dst(), fg.a(), fg.b()).ok();
    }
    add("hcompose_certified", ok, 15);
  }
  {
    bool ok = true;
    const alg::AlgHomRef id = alg::AlgHom::identity(M);
    for (int i = 0; i < 5; ++i) {
      const alg::Unit a = random_unit(M, rng), b = random_unit(M, rng);
      const alg::Unit a2 = random_unit(M, rng), b2 = random_unit(M, rng);
      const alg::Unit a3 = random_unit(M, rng), b3 = random_unit(M, rng);
      const alg::AlgHomRef p1 = shift_hom(id, a, b, "p1");
      const alg::AlgHomRef p2 = shift_hom(id, a2, b2, "p2");
      const alg::AlgHomRef p3 = shift_hom(id, a3, b3, "p3");
      const grpd::TwoCell f = grpd::require_two_cell(id, p1, a, b, "st");
      const grpd::TwoCell g = grpd::require_two_cell(id, p2, a2, b2, "st");
      const grpd::TwoCell h = grpd::require_two_cell(id, p3, a3, b3, "st");
      ok &= grpd::associativity_check(f, g, h).holds;
    }
    add("hcompose_associative", ok, 5);
  }
  {
    bool ok = true;
    const alg::AlgHomRef id = alg::AlgHom::identity(M);
    for (int i = 0; i < 5; ++i) {
      const alg::Unit a = random_unit(M, rng), b = random_unit(M, rng);
      const alg::AlgHomRef phi1 = shift_hom(id, a, b, "phi1");
      ok &= grpd::pi0_equal(id, phi1, seed);
    }
    const FieldDesc f5 = FieldDesc::prime(5);
    Matrix e11(2, 2, f5);
    e11.at(0, 0) = Scalar::one(f5);
    auto D = alg::Algebra::closure("D", {e11});
    Matrix s(2, 2, f5);
    s.at(0, 1) = Scalar::one(f5);
    s.at(1, 0) = Scalar::one(f5);
    std::vector<alg::AlgebraElement> id_imgs, sw_imgs;
    for (std::size_t i = 0; i < D->dim(); ++i) {
      id_imgs.push_back(D->basis_element(i));
      sw_imgs.push_back(D->element(s * D->basis(i) * s));
    }
    const auto d_id = alg::AlgHom::make("d_id", D, D, std::move(id_imgs));
    const auto d_swap = alg::AlgHom::make("d_swap", D, D, std::move(sw_imgs));
    const grpd::ConjugacySearch cs = grpd::conjugating_unit(d_id, d_swap, seed);
    ok &= !cs.witness.has_value() && cs.exhaustive;
    add("pi0_agreement", ok, 6);
  }
  {
    bool ok = true;
    const ivl::Interval I(Rat(0), Rat(1)), J(Rat(0), Rat(2)), K(Rat(0), Rat(4));
    for (int i = 0; i < 10; ++i) {
      const ivl::InteriorDiffeo x = random_interior(I, rng);
      const ivl::InteriorDiffeo y = random_interior(I, rng);
      const Rat lo = exact::rat(long(rng.range(0, 1)), 4);
      const ivl::PLMap eps(I, J, {Rat(0), Rat(1)}, {lo, lo + 1});
      const ivl::PLMap eta = ivl::PLMap(J, K, {Rat(0), Rat(2)}, {Rat(1), Rat(3)});
      ok &= ivl::transport_compose_check(x, y, eps);
      ok &= ivl::transport_tower_check(x, eps, eta);
      ok &= ivl::check_interval_two_cell(eps, eps, x, ivl::transport(x, eps)).ok();
    }
    add("transport_squares", ok, 10);
  }
  {
    bool ok = true;
    for (int i = 0; i < 15; ++i) {
      const Rat u = exact::rat(long(rng.range(-7, 7)), long(rng.range(8, 12)));
      const Rat v = exact::rat(long(rng.range(-7, 7)), long(rng.range(8, 12)));
      const ivl::LorentzFlowReport rep = ivl::lorentz_flow_check(u, v);
      ok &= rep.group_law && rep.class_compatible;
      ok &= ivl::lorentz(u).derivative_at(Rat(1)) == (1 - u) / (1 + u);
    }
    add("lorentz_flow", ok, 15);
  }
  {
    bool ok = true;
    const ferm::SiteSet sites = ferm::SiteSet::make(ivl::Interval(Rat(0), Rat(1)), 3);
    const ferm::CarAlgebra& car = ferm::CarAlgebra::get(sites);
    const ferm::SitePerm swap = ferm::SitePerm::transposition(2, 0, 1);
    for (const ferm::SitePerm& p : {ferm::SitePerm::identity(2), swap}) {
      const ferm::InnerWitness w = ferm::inner_witness(ferm::bogoliubov(p, car), car);
      ok &= w.unit == ferm::inner_witness_dense(ferm::bogoliubov(p, car), car).unit;
    }
    ok &= ferm::antihom_check(swap, swap, car).reversed_scalar;
    add("fermion_witnesses", ok, 3);
  }
  {
    bool ok = true;
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
      for (int i = 0; i < 4; ++i) {
        const ferm::ModularData d(random_state(n, rng));
        ok &= ferm::kms_check(d, random_gauss_matrix(n, rng), random_gauss_matrix(n, rng)).holds;
      }
    }
    add("kms_identity", ok, 8);
  }
  {
    const std::string script =
        "symbols u v x\n"
        "prove order: conj(u * v, x) = conj(v, conj(u, x))\n"
        "refute wrong: conj(u * v, x) = conj(u, conj(v, x))\n";
    const sym::ScriptReport rep = sym::verify_script(script, "selftest");
    add("symbolic_engine", rep.all_satisfied(), rep.goals.size());
  }

  SelftestReport out;
  out.payload["seed"] = seed;
  out.payload["checks"] = std::move(checks);
  out.all_passed = all_ok;
  return out;
}

}  // namespace twocat
