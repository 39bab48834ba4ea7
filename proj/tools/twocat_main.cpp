#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "twocat/algebra.hpp"
#include "twocat/errors.hpp"
#include "twocat/homgroupoid.hpp"
#include "twocat/instances.hpp"
#include "twocat/interval.hpp"
#include "twocat/quantization.hpp"
#include "twocat/rewrite.hpp"
#include "twocat/rng.hpp"
#include "twocat/selftest.hpp"
#include "twocat/serialize.hpp"

namespace {

using json = twocat::ser::json;
using twocat::InputError;
using twocat::Rng;
using twocat::selftest_battery;
using twocat::SelftestReport;
namespace alg = twocat::alg;
namespace exact = twocat::exact;
namespace ferm = twocat::ferm;
namespace gen = twocat::gen;
namespace grpd = twocat::grpd;
namespace ivl = twocat::ivl;
namespace ser = twocat::ser;
namespace sym = twocat::sym;
using exact::FieldDesc;
using exact::Matrix;
using exact::Rat;
using exact::Scalar;

struct Ctx {
  std::uint64_t seed = 2026;
  std::string field = "fp:5";
  std::string json_out;
};

FieldDesc ctx_field(const Ctx& c) { return ser::field_from_token(c.field); }

// Verdict JSON goes to --json-out (or stdout); the summary goes to stderr so
// machine output stays clean.
int emit(const Ctx& ctx, json v, const std::string& summary) {
  std::string why;
  if (!ser::verdict_valid(v, &why)) v = ser::verdict_error("internal: malformed verdict: " + why);
  if (ctx.json_out.empty()) {
    std::cout << ser::json_str(v);
  } else {
    ser::write_json_file(ctx.json_out, v);
  }
  if (!summary.empty()) std::cerr << summary << "\n";
  return ser::verdict_exit_code(v);
}

template <typename F>
int guarded(const Ctx& ctx, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return emit(ctx, ser::verdict_error(e.what()), std::string("error: ") + e.what());
  }
}

const json& want(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(what + ": missing key '" + key + "'");
  return j.at(key);
}

// ---------------------------------------------------------------- loaders

alg::AlgebraRef load_algebra(const std::string& path) {
  return ser::algebra_from_json(ser::read_json_file(path));
}

alg::AlgHomRef load_hom(const std::string& path, const alg::AlgebraRef& src,
                        const alg::AlgebraRef& dst) {
  return ser::hom_from_json(ser::read_json_file(path), src, dst);
}

std::pair<alg::Unit, alg::Unit> load_cell_units(const std::string& path,
                                                const alg::AlgebraRef& a_parent,
                                                const alg::AlgebraRef& b_parent) {
  const json j = ser::read_json_file(path);
  return {ser::unit_from_json(want(j, "a", path), a_parent),
          ser::unit_from_json(want(j, "b", path), b_parent)};
}

ivl::PLMap load_plmap(const std::string& path) {
  return ser::plmap_from_json(ser::read_json_file(path));
}

ivl::InteriorDiffeo load_interior(const std::string& path) {
  return ser::interior_from_json(ser::read_json_file(path));
}

struct IvlCellParts {
  ivl::PLMap src, dst;
  ivl::InteriorDiffeo a, b;
};

IvlCellParts load_interval_cell(const std::string& path) {
  const json j = ser::read_json_file(path);
  return {ser::plmap_from_json(want(j, "src", path)), ser::plmap_from_json(want(j, "dst", path)),
          ser::interior_from_json(want(j, "a", path)),
          ser::interior_from_json(want(j, "b", path))};
}

// ------------------------------------------------------------ arg parsing

Rat parse_rat_arg(const std::string& s, const std::string& what) {
  try {
    return exact::rat_parse(s);
  } catch (const twocat::ParseError& e) {
    throw InputError(what + ": " + e.what());
  }
}

ivl::Interval parse_interval_arg(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw InputError(what + ": expected two comma-separated rationals, got '" + s + "'");
  return ivl::Interval(parse_rat_arg(s.substr(0, comma), what),
                       parse_rat_arg(s.substr(comma + 1), what));
}

std::vector<std::size_t> parse_indices(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw InputError(what + ": expected comma-separated indices, got '" + s + "'");
    out.push_back(static_cast<std::size_t>(std::stoull(tok)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

json index_json(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (std::size_t i : v) out.push_back(i);
  return out;
}

// --------------------------------------------------------- random helpers

using gen::conjugation_hom;
using gen::random_interior;
using gen::random_scalar;
using gen::random_unit;
using gen::shift_hom;

json germ_json(const ivl::BoundaryGerm& g) {
  json out;
  out["repr"] = g.str();
  out["derivative"] = exact::rat_str(g.derivative());
  out["identity"] = g.is_identity();
  return out;
}

// ------------------------------------------------------------ alg handlers

struct TwoHomOpts {
  std::string a, b, hom0, hom1, cell;
};

int run_check_two_cell(const Ctx& ctx, const TwoHomOpts& o) {
  auto A = load_algebra(o.a);
  auto B = o.b.empty() ? A : load_algebra(o.b);
  auto phi0 = load_hom(o.hom0, A, B);
  auto phi1 = load_hom(o.hom1, A, B);
  auto [ua, ub] = load_cell_units(o.cell, A, B);
  const grpd::CellCheck chk = grpd::check_two_cell(phi0, phi1, ua, ub);
  if (chk.ok()) {
    json w;
    w["pivot"] = ser::unit_to_json(chk.cell->pivot());
    return emit(ctx, ser::verdict_verified(std::move(w)),
                "2-cell " + phi0->name() + " => " + phi1->name() + " certified");
  }
  json cx;
  cx["basis_index"] = chk.failure->basis_index;
  cx["detail"] = chk.failure->detail;
  return emit(ctx, ser::verdict_refuted(std::move(cx)), "not a 2-cell: " + chk.failure->detail);
}

struct VComposeOpts {
  std::string a, b, hom0, hom1, hom2, f, g;
};

int run_vcompose(const Ctx& ctx, const VComposeOpts& o) {
  auto A = load_algebra(o.a);
  auto B = o.b.empty() ? A : load_algebra(o.b);
  auto phi0 = load_hom(o.hom0, A, B);
  auto phi1 = load_hom(o.hom1, A, B);
  auto phi2 = load_hom(o.hom2, A, B);
  auto [fa, fb] = load_cell_units(o.f, A, B);
  auto [ga, gb] = load_cell_units(o.g, A, B);
  const grpd::CellCheck cf = grpd::check_two_cell(phi0, phi1, fa, fb);
  const grpd::CellCheck cg = grpd::check_two_cell(phi1, phi2, ga, gb);
  if (!cf.ok() || !cg.ok()) {
    const auto& bad = cf.ok() ? *cg.failure : *cf.failure;
    json cx;
    cx["input"] = cf.ok() ? "g" : "f";
    cx["basis_index"] = bad.basis_index;
    cx["detail"] = bad.detail;
    return emit(ctx, ser::verdict_refuted(std::move(cx)),
                "input cell failed certification: " + bad.detail);
  }
  const grpd::TwoCell comp = grpd::vcompose(*cf.cell, *cg.cell);
  json w;
  w["cell"] = ser::cell_to_json(comp);
  w["pivot"] = ser::unit_to_json(comp.pivot());
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "vertical composite " + phi0->name() + " => " + phi2->name() + " certified");
}

struct HComposeOpts {
  std::string a, b, c, phi0, phi1, psi0, psi1, f, g;
};

int run_hcompose(const Ctx& ctx, const HComposeOpts& o) {
  auto A = load_algebra(o.a);
  auto B = o.b.empty() ? A : load_algebra(o.b);
  auto C = o.c.empty() ? B : load_algebra(o.c);
  auto phi0 = load_hom(o.phi0, A, B);
  auto phi1 = load_hom(o.phi1, A, B);
  auto psi0 = load_hom(o.psi0, B, C);
  auto psi1 = load_hom(o.psi1, B, C);
  auto [fa, fb] = load_cell_units(o.f, A, B);
  auto [ga, gb] = load_cell_units(o.g, B, C);
  const grpd::CellCheck cf = grpd::check_two_cell(phi0, phi1, fa, fb);
  const grpd::CellCheck cg = grpd::check_two_cell(psi0, psi1, ga, gb);
  if (!cf.ok() || !cg.ok()) {
    const auto& bad = cf.ok() ? *cg.failure : *cf.failure;
    json cx;
    cx["input"] = cf.ok() ? "g" : "f";
    cx["basis_index"] = bad.basis_index;
    cx["detail"] = bad.detail;
    return emit(ctx, ser::verdict_refuted(std::move(cx)),
                "input cell failed certification: " + bad.detail);
  }
  const grpd::TwoCell comp = grpd::hcompose(*cf.cell, *cg.cell);
  json w;
  w["cell"] = ser::cell_to_json(comp);
  w["pivot"] = ser::unit_to_json(comp.pivot());
  return emit(ctx, ser::verdict_verified(std::move(w)), "horizontal composite certified");
}

struct Pi0Opts {
  std::string a, b, hom0, hom1;
};

int run_pi0(const Ctx& ctx, const Pi0Opts& o) {
  auto A = load_algebra(o.a);
  auto B = o.b.empty() ? A : load_algebra(o.b);
  auto phi0 = load_hom(o.hom0, A, B);
  auto phi1 = load_hom(o.hom1, A, B);
  const grpd::ConjugacySearch cs = grpd::conjugating_unit(phi0, phi1, ctx.seed);
  if (cs.witness) {
    json w;
    w["unit"] = ser::unit_to_json(cs.witness->u);
    w["cell"] = ser::cell_to_json(cs.witness->cell);
    return emit(ctx, ser::verdict_verified(std::move(w)),
                phi0->name() + " and " + phi1->name() + " are conjugate");
  }
  if (cs.exhaustive) {
    json cx;
    cx["reason"] = "intertwiner space contains no unit (search was exhaustive)";
    return emit(ctx, ser::verdict_refuted(std::move(cx)),
                phi0->name() + " and " + phi1->name() + " are not conjugate");
  }
  json d;
  d["reason"] = "no unit found, but the search over an infinite field is not exhaustive";
  return emit(ctx, ser::verdict_unknown(std::move(d)), "undecided: no witness found");
}

struct AutOpts {
  std::string a, hom, cell;
};

int run_aut_check(const Ctx& ctx, const AutOpts& o) {
  auto A = load_algebra(o.a);
  auto phi = load_hom(o.hom, A, A);
  auto [ua, ub] = load_cell_units(o.cell, A, A);
  const grpd::AutCheckReport rep = grpd::aut_check(phi, ua, ub);
  json payload;
  payload["cell_ok"] = rep.cell_ok;
  payload["criterion_ok"] = rep.criterion_ok;
  payload["iff_holds"] = rep.iff_holds;
  if (!rep.iff_holds)
    return emit(ctx, ser::verdict_error("2-cell test and centralizer criterion disagree"),
                "internal invariant violated");
  if (rep.cell_ok)
    return emit(ctx, ser::verdict_verified(std::move(payload)),
                "(a, b) is an automorphism cell of " + phi->name());
  return emit(ctx, ser::verdict_refuted(std::move(payload)),
              "(a, b) is not an automorphism cell of " + phi->name());
}

struct InterchangeOpts {
  std::string a, b, c;
  std::string phi0, phi1, phi2, psi0, psi1, psi2;
  std::string f0, f1, g0, g1;
};

int run_interchange(const Ctx& ctx, const InterchangeOpts& o) {
  auto A = load_algebra(o.a);
  auto B = o.b.empty() ? A : load_algebra(o.b);
  auto C = o.c.empty() ? B : load_algebra(o.c);
  auto phi0 = load_hom(o.phi0, A, B);
  auto phi1 = load_hom(o.phi1, A, B);
  auto phi2 = load_hom(o.phi2, A, B);
  auto psi0 = load_hom(o.psi0, B, C);
  auto psi1 = load_hom(o.psi1, B, C);
  auto psi2 = load_hom(o.psi2, B, C);
  auto [f0a, f0b] = load_cell_units(o.f0, A, B);
  auto [f1a, f1b] = load_cell_units(o.f1, A, B);
  auto [g0a, g0b] = load_cell_units(o.g0, B, C);
  auto [g1a, g1b] = load_cell_units(o.g1, B, C);
  struct Named {
    const char* tag;
    grpd::CellCheck chk;
  };
  const Named cells[] = {{"f0", grpd::check_two_cell(phi0, phi1, f0a, f0b)},
                         {"f1", grpd::check_two_cell(phi1, phi2, f1a, f1b)},
                         {"g0", grpd::check_two_cell(psi0, psi1, g0a, g0b)},
                         {"g1", grpd::check_two_cell(psi1, psi2, g1a, g1b)}};
  for (const Named& n : cells) {
    if (!n.chk.ok()) {
      json cx;
      cx["input"] = n.tag;
      cx["basis_index"] = n.chk.failure->basis_index;
      cx["detail"] = n.chk.failure->detail;
      return emit(ctx, ser::verdict_refuted(std::move(cx)),
                  std::string("input cell ") + n.tag + " failed certification");
    }
  }
  const grpd::InterchangeReport rep = grpd::interchange_probe(
      *cells[0].chk.cell, *cells[1].chk.cell, *cells[2].chk.cell, *cells[3].chk.cell);
  json payload;
  payload["a_equal"] = rep.a_equal;
  payload["b_equal"] = rep.b_equal;
  if (rep.holds)
    return emit(ctx, ser::verdict_verified(std::move(payload)), "interchange law holds");
  return emit(ctx, ser::verdict_refuted(std::move(payload)),
              "interchange law fails on this quadruple");
}

struct GenOpts {
  std::string dir;
};

int run_alg_gen(const Ctx& ctx, const GenOpts& o) {
  const FieldDesc f = ctx_field(ctx);
  Rng rng(ctx.seed);
  std::filesystem::create_directories(o.dir);

  // Round-trip each algebra through its serialized form before deriving
  // homs: loading re-closes the generators, and basis order must match the
  // image lists in the hom files byte for byte.
  auto canon = [](const alg::AlgebraRef& x) {
    return ser::algebra_from_json(ser::algebra_to_json(x));
  };
  auto A = canon(alg::Algebra::full_matrix("A", 2, f));
  auto B = canon(alg::Algebra::full_matrix("B", 2, f));
  auto C = canon(alg::Algebra::full_matrix("C", 2, f));
  Matrix e11(2, 2, f);
  e11.at(0, 0) = Scalar::one(f);
  auto D = canon(alg::Algebra::closure("D", {e11}));

  auto phi0 = conjugation_hom("phi0", A, B, random_unit(B, rng));
  const alg::Unit fa = random_unit(A, rng), fb = random_unit(B, rng);
  auto phi1 = shift_hom(phi0, fa, fb, "phi1");
  const alg::Unit f1a = random_unit(A, rng), f1b = random_unit(B, rng);
  auto phi2 = shift_hom(phi1, f1a, f1b, "phi2");
  auto psi0 = conjugation_hom("psi0", B, C, random_unit(C, rng));
  const alg::Unit ga = random_unit(B, rng), gb = random_unit(C, rng);
  auto psi1 = shift_hom(psi0, ga, gb, "psi1");
  const alg::Unit g1a = random_unit(B, rng), g1b = random_unit(C, rng);
  auto psi2 = shift_hom(psi1, g1a, g1b, "psi2");

  grpd::require_two_cell(phi0, phi1, fa, fb, "generated cell f");
  grpd::require_two_cell(phi1, phi2, f1a, f1b, "generated cell f1");
  grpd::require_two_cell(psi0, psi1, ga, gb, "generated cell g");
  grpd::require_two_cell(psi1, psi2, g1a, g1b, "generated cell g1");

  // Endomorphism of A plus a membership cell for aut-check: b := phi(a)
  // makes the pivot 1, which is central.
  auto phi = conjugation_hom("phi", A, A, random_unit(A, rng));
  const alg::Unit aut_a = random_unit(A, rng);
  const alg::Unit aut_b = phi->apply(aut_a);

  // Conclusive negative for pi0: the identity and the coordinate swap on
  // the diagonal algebra are not conjugate inside it.
  std::vector<alg::AlgebraElement> id_images, swap_images;
  Matrix s(2, 2, f);
  s.at(0, 1) = Scalar::one(f);
  s.at(1, 0) = Scalar::one(f);
  for (std::size_t i = 0; i < D->dim(); ++i) {
    id_images.push_back(D->basis_element(i));
    swap_images.push_back(D->element(s * D->basis(i) * s));
  }
  auto d_id = alg::AlgHom::make("d_id", D, D, std::move(id_images));
  auto d_swap = alg::AlgHom::make("d_swap", D, D, std::move(swap_images));

  auto cell_json = [](const alg::Unit& ua, const alg::Unit& ub) {
    json j;
    j["a"] = ser::unit_to_json(ua);
    j["b"] = ser::unit_to_json(ub);
    return j;
  };

  const std::vector<std::pair<std::string, json>> files = {
      {"A.json", ser::algebra_to_json(A)},
      {"B.json", ser::algebra_to_json(B)},
      {"C.json", ser::algebra_to_json(C)},
      {"D.json", ser::algebra_to_json(D)},
      {"phi0.json", ser::hom_to_json(phi0)},
      {"phi1.json", ser::hom_to_json(phi1)},
      {"phi2.json", ser::hom_to_json(phi2)},
      {"psi0.json", ser::hom_to_json(psi0)},
      {"psi1.json", ser::hom_to_json(psi1)},
      {"psi2.json", ser::hom_to_json(psi2)},
      {"phi.json", ser::hom_to_json(phi)},
      {"d_id.json", ser::hom_to_json(d_id)},
      {"d_swap.json", ser::hom_to_json(d_swap)},
      {"cell_f.json", cell_json(fa, fb)},
      {"cell_f1.json", cell_json(f1a, f1b)},
      {"cell_g.json", cell_json(ga, gb)},
      {"cell_g1.json", cell_json(g1a, g1b)},
      {"cell_aut.json", cell_json(aut_a, aut_b)},
  };
  json names = json::array();
  for (const auto& [name, doc] : files) {
    ser::write_json_file(o.dir + "/" + name, doc);
    names.push_back(name);
  }
  json w;
  w["dir"] = o.dir;
  w["field"] = ser::field_token(f);
  w["files"] = std::move(names);
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "wrote " + std::to_string(files.size()) + " algebra instance files to " + o.dir);
}

// -------------------------------------------------------- interval handlers

int run_interval_compose(const Ctx& ctx, const std::string& f_path, const std::string& g_path) {
  const ivl::InteriorDiffeo f = load_interior(f_path);
  const ivl::InteriorDiffeo g = load_interior(g_path);
  const ivl::InteriorDiffeo comp = ivl::interior_compose(f, g);
  json w;
  w["composite"] = ser::interior_to_json(comp);
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "composite certified interior-supported with collar " +
                  exact::rat_str(comp.collar()));
}

int run_interval_transport(const Ctx& ctx, const std::string& c_path, const std::string& e_path) {
  const ivl::InteriorDiffeo c = load_interior(c_path);
  const ivl::PLMap eps = load_plmap(e_path);
  const ivl::InteriorDiffeo pushed = ivl::transport(c, eps);
  json w;
  w["transported"] = ser::interior_to_json(pushed);
  w["square_commutes"] =
      !ivl::pl_disagreement(ivl::pl_compose(eps, c.map()), ivl::pl_compose(pushed.map(), eps))
           .has_value();
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "pushforward certified with collar " + exact::rat_str(pushed.collar()));
}

struct IvlCellOpts {
  std::string eps0, eps1, a, b;
};

int run_interval_cell_check(const Ctx& ctx, const IvlCellOpts& o) {
  const ivl::PLMap eps0 = load_plmap(o.eps0);
  const ivl::PLMap eps1 = load_plmap(o.eps1);
  const ivl::InteriorDiffeo a = load_interior(o.a);
  const ivl::InteriorDiffeo b = load_interior(o.b);
  const ivl::IntervalCellCheck chk = ivl::check_interval_two_cell(eps0, eps1, a, b);
  if (chk.ok()) {
    json w;
    w["collar_a"] = exact::rat_str(a.collar());
    w["collar_b"] = exact::rat_str(b.collar());
    return emit(ctx, ser::verdict_verified(std::move(w)), "interval 2-cell certified");
  }
  json cx;
  cx["point"] = exact::rat_str(chk.failure->point);
  cx["detail"] = chk.failure->detail;
  return emit(ctx, ser::verdict_refuted(std::move(cx)),
              "not an interval 2-cell: " + chk.failure->detail);
}

int run_interval_hcompose(const Ctx& ctx, const std::string& f_path, const std::string& g_path) {
  const IvlCellParts fp = load_interval_cell(f_path);
  const IvlCellParts gp = load_interval_cell(g_path);
  const ivl::IntervalCellCheck cf = ivl::check_interval_two_cell(fp.src, fp.dst, fp.a, fp.b);
  const ivl::IntervalCellCheck cg = ivl::check_interval_two_cell(gp.src, gp.dst, gp.a, gp.b);
  if (!cf.ok() || !cg.ok()) {
    const auto& bad = cf.ok() ? *cg.failure : *cf.failure;
    json cx;
    cx["input"] = cf.ok() ? "g" : "f";
    cx["point"] = exact::rat_str(bad.point);
    cx["detail"] = bad.detail;
    return emit(ctx, ser::verdict_refuted(std::move(cx)),
                "input cell failed certification: " + bad.detail);
  }
  const ivl::IntervalTwoCell comp = ivl::interval_hcompose(*cf.cell, *cg.cell);
  json w;
  json cell;
  cell["src"] = ser::plmap_to_json(comp.src);
  cell["dst"] = ser::plmap_to_json(comp.dst);
  cell["a"] = ser::interior_to_json(comp.a);
  cell["b"] = ser::interior_to_json(comp.b);
  w["cell"] = std::move(cell);
  return emit(ctx, ser::verdict_verified(std::move(w)), "horizontal composite certified");
}

int run_interval_class(const Ctx& ctx, const std::string& f_path) {
  const ivl::PLMap f = load_plmap(f_path);
  const ivl::MappingClass mc = ivl::mapping_class(f);
  json w;
  w["left"] = germ_json(mc.left);
  w["right"] = germ_json(mc.right);
  w["trivial"] = mc.is_trivial();
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "mapping class " + mc.str() + (mc.is_trivial() ? " (trivial)" : " (nontrivial)"));
}

int run_interval_lorentz(const Ctx& ctx, const std::string& u_str, const std::string& v_str) {
  const Rat u = parse_rat_arg(u_str, "--u");
  const ivl::MobiusMap boost = ivl::lorentz(u);
  const Rat expected_right = (1 - u) / (1 + u);
  const bool derivative_ok = boost.derivative_at(Rat(1)) == expected_right;
  const bool velocity_ok = boost.velocity() == u;
  const bool class_ok = boost.mapping_class().is_trivial() == (u == 0);
  json w;
  w["c"] = boost.c().get_str();
  w["s"] = boost.s().get_str();
  w["velocity"] = exact::rat_str(boost.velocity());
  w["derivative_right"] = exact::rat_str(boost.derivative_at(Rat(1)));
  w["derivative_left"] = exact::rat_str(boost.derivative_at(Rat(-1)));
  w["class_trivial"] = boost.mapping_class().is_trivial();
  if (!v_str.empty()) {
    const Rat v = parse_rat_arg(v_str, "--v");
    const ivl::LorentzFlowReport rep = ivl::lorentz_flow_check(u, v);
    w["composite_velocity"] = exact::rat_str(rep.composite_velocity);
    w["group_law"] = rep.group_law;
    w["class_compatible"] = rep.class_compatible;
    if (!(rep.group_law && rep.class_compatible && derivative_ok && velocity_ok && class_ok)) {
      return emit(ctx, ser::verdict_refuted(std::move(w)), "velocity-addition law failed");
    }
    return emit(ctx, ser::verdict_verified(std::move(w)),
                "boosts compose: velocity " + exact::rat_str(rep.composite_velocity));
  }
  if (!(derivative_ok && velocity_ok && class_ok))
    return emit(ctx, ser::verdict_refuted(std::move(w)), "boost identities failed");
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "boost " + boost.str() + ", boundary derivatives " +
                  exact::rat_str(boost.derivative_at(Rat(-1))) + " and " +
                  exact::rat_str(boost.derivative_at(Rat(1))));
}

int run_interval_pi0(const Ctx& ctx, const std::string& e0_path, const std::string& e1_path) {
  const ivl::PLMap eps0 = load_plmap(e0_path);
  const ivl::PLMap eps1 = load_plmap(e1_path);
  const ivl::EmbeddingPi0 rep = ivl::pi0_emb(eps0, eps1);
  if (rep.equivalent) {
    json w;
    w["a"] = ser::interior_to_json(rep.witness->a);
    w["b"] = ser::interior_to_json(rep.witness->b);
    return emit(ctx, ser::verdict_verified(std::move(w)),
                "embeddings are equivalent under interior diffeomorphisms");
  }
  json cx;
  cx["reason"] = rep.reason;
  return emit(ctx, ser::verdict_refuted(std::move(cx)), "not equivalent: " + rep.reason);
}

int run_interval_gen(const Ctx& ctx, const GenOpts& o) {
  Rng rng(ctx.seed);
  std::filesystem::create_directories(o.dir);
  const ivl::Interval I(Rat(0), Rat(1), "I");
  const ivl::Interval J(Rat(0), Rat(2), "J");
  const ivl::Interval K(Rat(0), Rat(4), "K");

  const ivl::PLMap eps0(I, J, {Rat(0), Rat(1)}, {Rat(0), Rat(3) / 2});
  const ivl::InteriorDiffeo a = random_interior(I, rng);
  const ivl::InteriorDiffeo b = random_interior(J, rng);
  const ivl::PLMap eps1 =
      ivl::pl_compose(b.map(), ivl::pl_compose(eps0, ivl::pl_invert(a.map())));
  ivl::require_interval_two_cell(eps0, eps1, a, b, "generated interval cell f");

  const ivl::PLMap delta0(J, K, {Rat(0), Rat(2)}, {Rat(1) / 2, Rat(5) / 2});
  const ivl::InteriorDiffeo b1 = random_interior(J, rng);
  const ivl::InteriorDiffeo c = random_interior(K, rng);
  const ivl::PLMap delta1 =
      ivl::pl_compose(c.map(), ivl::pl_compose(delta0, ivl::pl_invert(b1.map())));
  ivl::require_interval_two_cell(delta0, delta1, b1, c, "generated interval cell g");

  const ivl::InteriorDiffeo bump = random_interior(I, rng);
  const ivl::PLMap selfmap(I, I, {Rat(0), Rat(1) / 4, Rat(1)}, {Rat(0), Rat(1) / 2, Rat(1)});

  auto cell_doc = [](const ivl::PLMap& src, const ivl::PLMap& dst, const ivl::InteriorDiffeo& ca,
                     const ivl::InteriorDiffeo& cb) {
    json j;
    j["src"] = ser::plmap_to_json(src);
    j["dst"] = ser::plmap_to_json(dst);
    j["a"] = ser::interior_to_json(ca);
    j["b"] = ser::interior_to_json(cb);
    return j;
  };

  const std::vector<std::pair<std::string, json>> files = {
      {"eps0.json", ser::plmap_to_json(eps0)},
      {"eps1.json", ser::plmap_to_json(eps1)},
      {"delta0.json", ser::plmap_to_json(delta0)},
      {"delta1.json", ser::plmap_to_json(delta1)},
      {"a.json", ser::interior_to_json(a)},
      {"b.json", ser::interior_to_json(b)},
      {"c.json", ser::interior_to_json(bump)},
      {"cell_f.json", cell_doc(eps0, eps1, a, b)},
      {"cell_g.json", cell_doc(delta0, delta1, b1, c)},
      {"selfmap.json", ser::plmap_to_json(selfmap)},
  };
  json names = json::array();
  for (const auto& [name, doc] : files) {
    ser::write_json_file(o.dir + "/" + name, doc);
    names.push_back(name);
  }
  json w;
  w["dir"] = o.dir;
  w["files"] = std::move(names);
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "wrote " + std::to_string(files.size()) + " interval instance files to " + o.dir);
}

// --------------------------------------------------------- fermion handlers

struct LatticeOpts {
  std::string interval = "0,1";
  long resolution = 2;
};

ferm::SiteSet make_sites(const LatticeOpts& o) {
  return ferm::SiteSet::make(parse_interval_arg(o.interval, "--interval"), o.resolution);
}

int run_fermion_build(const Ctx& ctx, const LatticeOpts& o) {
  const ferm::SiteSet sites = make_sites(o);
  const ferm::CarAlgebra car = ferm::CarAlgebra::build(sites);
  const std::size_t g = car.gen_count();
  std::size_t relations_checked = 0;
  bool relations_ok = true;
  for (std::size_t k = 0; k < g; ++k) {
    for (std::size_t l = 0; l <= k; ++l) {
      const Matrix prod = car.gamma(k) * car.gamma(l);
      const Matrix flip = car.gamma(l) * car.gamma(k);
      relations_ok &= (k == l) ? prod.is_identity() : (prod == -flip);
      ++relations_checked;
    }
  }
  json sites_json = json::array();
  for (const Rat& s : sites.sites) sites_json.push_back(exact::rat_str(s));
  json w;
  w["sites"] = std::move(sites_json);
  w["generators"] = g;
  w["ambient"] = car.algebra()->ambient();
  w["dim"] = car.algebra()->dim();
  w["relations_checked"] = relations_checked;
  if (!relations_ok)
    return emit(ctx, ser::verdict_refuted(std::move(w)), "Clifford relations failed");
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "lattice algebra on " + std::to_string(sites.count()) + " sites: dimension " +
                  std::to_string(car.algebra()->dim()));
}

struct InduceOpts {
  LatticeOpts src, dst;
  std::string sites;
};

int run_fermion_induce(const Ctx& ctx, const InduceOpts& o) {
  const ferm::SiteSet src = make_sites(o.src);
  const ferm::SiteSet dst = make_sites(o.dst);
  std::vector<std::size_t> image;
  if (o.sites.empty()) {
    for (std::size_t k = 0; k < src.count(); ++k) image.push_back(k);
  } else {
    image = parse_indices(o.sites, "--sites");
  }
  const ferm::SiteEmbedding emb = ferm::SiteEmbedding::through_sites(src, dst, image);
  const ferm::CarAlgebra& car_src = ferm::CarAlgebra::get(src);
  const ferm::CarAlgebra& car_dst = ferm::CarAlgebra::get(dst);
  const alg::AlgHomRef h = ferm::induced_hom(emb, car_src, car_dst);
  json gammas = json::array();
  for (std::size_t k = 0; k < car_src.gen_count(); ++k)
    gammas.push_back(ser::matrix_to_json(h->apply(car_src.gamma_element(k)).to_matrix()));
  json w;
  w["site_image"] = index_json(emb.site_image);
  w["embedding"] = ser::plmap_to_json(emb.map);
  w["gamma_images"] = std::move(gammas);
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "induced hom certified: " + std::to_string(car_src.algebra()->dim()) +
                  " -> " + std::to_string(car_dst.algebra()->dim()) + " dimensions");
}

struct WitnessOpts {
  LatticeOpts lattice;
  std::string perm, diffeo;
};

int run_fermion_witness(const Ctx& ctx, const WitnessOpts& o) {
  const ferm::SiteSet sites = make_sites(o.lattice);
  const ferm::CarAlgebra& car = ferm::CarAlgebra::get(sites);
  ferm::SitePerm p = ferm::SitePerm::identity(sites.count());
  if (!o.perm.empty() && !o.diffeo.empty())
    throw InputError("pass either --perm or --diffeo, not both");
  if (!o.perm.empty()) p = ferm::SitePerm::of(parse_indices(o.perm, "--perm"));
  if (!o.diffeo.empty()) {
    const ivl::InteriorDiffeo c = load_interior(o.diffeo);
    try {
      p = ferm::SitePerm::from_interior_diffeo(c, sites);
    } catch (const twocat::SiteError& e) {
      json cx;
      cx["reason"] = e.what();
      return emit(ctx, ser::verdict_refuted(std::move(cx)),
                  std::string("diffeomorphism is not site-compatible: ") + e.what());
    }
  }
  if (p.size() != sites.count())
    throw InputError("--perm: expected " + std::to_string(sites.count()) + " indices");
  const ferm::CarAut aut = ferm::bogoliubov(p, car);
  const ferm::InnerWitness w = ferm::inner_witness(aut, car);
  const ferm::InnerWitness dense = ferm::inner_witness_dense(aut, car);
  json payload;
  payload["perm"] = p.str();
  payload["unit"] = ser::unit_to_json(w.unit);
  payload["dense_agrees"] = w.unit == dense.unit;
  if (!(w.unit == dense.unit))
    return emit(ctx, ser::verdict_error("sign-propagation and dense witnesses disagree"),
                "internal cross-check failed");
  return emit(ctx, ser::verdict_verified(std::move(payload)),
              "inner witness certified for " + p.str());
}

struct AntihomOpts {
  LatticeOpts lattice;
  std::string p0, p1;
};

int run_fermion_antihom(const Ctx& ctx, const AntihomOpts& o) {
  const ferm::SiteSet sites = make_sites(o.lattice);
  const ferm::CarAlgebra& car = ferm::CarAlgebra::get(sites);
  const ferm::SitePerm p0 = ferm::SitePerm::of(parse_indices(o.p0, "--p0"));
  const ferm::SitePerm p1 = ferm::SitePerm::of(parse_indices(o.p1, "--p1"));
  if (p0.size() != sites.count() || p1.size() != sites.count())
    throw InputError("permutations must list " + std::to_string(sites.count()) + " indices");
  const ferm::AntihomReport rep = ferm::antihom_check(p0, p1, car);
  json payload;
  payload["defect"] = rep.defect.str();
  payload["reversed_scalar"] = rep.reversed_scalar;
  payload["reversed_exact"] = rep.reversed_exact;
  payload["same_order_scalar"] = rep.same_order_scalar;
  payload["perms_commute"] = rep.perms_commute;
  if (rep.reversed_scalar)
    return emit(ctx, ser::verdict_verified(std::move(payload)),
                "witness assignment reverses order up to the central scalar " + rep.defect.str());
  return emit(ctx, ser::verdict_refuted(std::move(payload)),
              "reversed-order identity failed");
}

int run_fermion_two_functor(const Ctx& ctx, const std::string& inst_path) {
  const json inst = ser::read_json_file(inst_path);
  auto lattice = [&](const char* key) {
    const json& lj = want(inst, key, inst_path);
    const ivl::Interval I = ser::interval_from_json(want(lj, "interval", key));
    const json& res = want(lj, "resolution", key);
    if (!res.is_number_unsigned()) throw InputError(std::string(key) + ": bad resolution");
    return ferm::SiteSet::make(I, res.get<long>());
  };
  const ferm::SiteSet src = lattice("src");
  const ferm::SiteSet mid = lattice("mid");
  const ferm::SiteSet dst = lattice("dst");
  auto cell = [&](const char* key, const ferm::SiteSet& lo, const ferm::SiteSet& hi) {
    const json& cj = want(inst, key, inst_path);
    auto ids = [&](const char* field) {
      const json& v = want(cj, field, key);
      std::vector<std::size_t> out;
      for (const json& e : v) {
        if (!e.is_number_unsigned()) throw InputError(std::string(key) + ": bad index list");
        out.push_back(e.get<std::size_t>());
      }
      return out;
    };
    return ferm::DiscreteCell(ferm::SiteEmbedding::through_sites(lo, hi, ids("e0")),
                              ferm::SiteEmbedding::through_sites(lo, hi, ids("e1")),
                              ferm::SitePerm::of(ids("p")), ferm::SitePerm::of(ids("q")));
  };
  std::optional<ferm::DiscreteCell> f, g;
  try {
    f.emplace(cell("f", src, mid));
    g.emplace(cell("g", mid, dst));
  } catch (const twocat::SiteError& e) {
    json cx;
    cx["reason"] = e.what();
    return emit(ctx, ser::verdict_refuted(std::move(cx)),
                std::string("instance cell failed certification: ") + e.what());
  }
  const ferm::TwoFunctorReport rep = ferm::two_functor_check(*f, *g);
  json payload;
  payload["cells_certified"] = rep.cells_certified;
  payload["composite_certified"] = rep.composite_certified;
  payload["matches_witness_up_to_scalar"] = rep.matches_witness_up_to_scalar;
  payload["scalar"] = rep.scalar.str();
  payload["on_the_nose"] = rep.on_the_nose;
  payload["exchange_form_exact"] = rep.exchange_form_exact;
  payload["naive_form_exact"] = rep.naive_form_exact;
  payload["b_components_commute"] = rep.b_components_commute;
  const bool ok = rep.cells_certified && rep.composite_certified &&
                  rep.matches_witness_up_to_scalar && rep.exchange_form_exact;
  if (ok)
    return emit(ctx, ser::verdict_verified(std::move(payload)),
                "quantization respects horizontal composition up to the central scalar " +
                    rep.scalar.str());
  return emit(ctx, ser::verdict_refuted(std::move(payload)), "two-functor identity failed");
}

int run_fermion_gen(const Ctx& ctx, const GenOpts& o) {
  std::filesystem::create_directories(o.dir);
  json inst;
  auto lattice = [](const char* l, const char* r, long res) {
    json j;
    json ij;
    ij["left"] = l;
    ij["right"] = r;
    j["interval"] = std::move(ij);
    j["resolution"] = res;
    return j;
  };
  inst["src"] = lattice("0", "1", 3);
  inst["mid"] = lattice("0", "2", 4);
  inst["dst"] = lattice("0", "3", 5);
  json f;
  f["e0"] = json::array({0, 2});
  f["e1"] = json::array({1, 2});
  f["p"] = json::array({0, 1});
  f["q"] = json::array({1, 0, 2});
  inst["f"] = std::move(f);
  json g;
  g["e0"] = json::array({0, 1, 3});
  g["e1"] = json::array({0, 2, 3});
  g["p"] = json::array({0, 1, 2});
  g["q"] = json::array({0, 2, 1, 3});
  inst["g"] = std::move(g);

  // A site-compatible interior bump on [0,1] at resolution 4: it fixes the
  // sites 1/4, 1/2, 3/4 and the collars but bends between them.
  const ivl::Interval I(Rat(0), Rat(1));
  std::vector<Rat> xs{Rat(0),     Rat(1) / 16, Rat(3) / 16,  Rat(1) / 4, Rat(1) / 2,
                      Rat(3) / 4, Rat(7) / 8,  Rat(15) / 16, Rat(1)};
  std::vector<Rat> ys{Rat(0),     Rat(1) / 16, Rat(5) / 32,  Rat(1) / 4, Rat(1) / 2,
                      Rat(3) / 4, Rat(7) / 8,  Rat(15) / 16, Rat(1)};
  const ivl::InteriorDiffeo bump(ivl::PLMap(I, I, std::move(xs), std::move(ys)), Rat(1) / 16);

  ser::write_json_file(o.dir + "/tf.json", inst);
  ser::write_json_file(o.dir + "/bump.json", ser::interior_to_json(bump));
  json w;
  w["dir"] = o.dir;
  w["files"] = json::array({"tf.json", "bump.json"});
  return emit(ctx, ser::verdict_verified(std::move(w)),
              "wrote 2 fermion instance files to " + o.dir);
}

// --------------------------------------------------------- modular handler

using gen::random_gauss_matrix;
using gen::random_state;

struct KmsOpts {
  std::size_t dim = 2;
  std::string rho, x, y;
};

int run_modular_kms(const Ctx& ctx, const KmsOpts& o) {
  const FieldDesc f = FieldDesc::rationals();
  Rng rng(ctx.seed);
  Matrix rho = o.rho.empty() ? random_state(o.dim, rng)
                             : ser::matrix_from_json(ser::read_json_file(o.rho), f);
  const std::size_t n = rho.rows();
  Matrix x = o.x.empty() ? random_gauss_matrix(n, rng)
                         : ser::matrix_from_json(ser::read_json_file(o.x), f);
  Matrix y = o.y.empty() ? random_gauss_matrix(n, rng)
                         : ser::matrix_from_json(ser::read_json_file(o.y), f);
  const ferm::ModularData d(std::move(rho));
  const ferm::KmsReport rep = ferm::kms_check(d, x, y);
  json payload;
  payload["lhs"] = rep.lhs.str();
  payload["rhs"] = rep.rhs.str();
  payload["opposite_lhs"] = rep.opposite_lhs.str();
  payload["opposite_holds"] = rep.opposite_holds;
  if (rep.holds)
    return emit(ctx, ser::verdict_verified(std::move(payload)),
                std::string("twisted trace identity holds; opposite convention ") +
                    (rep.opposite_holds ? "also holds here" : "fails, as expected"));
  return emit(ctx, ser::verdict_refuted(std::move(payload)), "twisted trace identity failed");
}

// -------------------------------------------------------- symbolic handler

json proof_json(const sym::Proof& p) {
  json out;
  switch (p.mode) {
    case sym::Proof::Mode::Trivial: out["mode"] = "trivial"; break;
    case sym::Proof::Mode::Search: out["mode"] = "search"; break;
    case sym::Proof::Mode::Difference: out["mode"] = "difference"; break;
  }
  out["start"] = sym::word_str(p.start);
  out["goal"] = sym::word_str(p.goal);
  json steps = json::array();
  for (const sym::Step& s : p.steps) {
    json sj;
    sj["rule"] = s.rule;
    sj["reverse"] = s.reverse;
    sj["result"] = sym::word_str(s.result);
    steps.push_back(std::move(sj));
  }
  out["steps"] = std::move(steps);
  return out;
}

std::string expectation_str(sym::Expectation e) {
  switch (e) {
    case sym::Expectation::Proven: return "proven";
    case sym::Expectation::Refuted: return "refuted";
    default: return "any";
  }
}

json goal_json(const sym::GoalResult& g, bool with_proof) {
  json out;
  out["name"] = g.name;
  out["lhs"] = g.lhs;
  out["rhs"] = g.rhs;
  out["expected"] = expectation_str(g.expected);
  out["verdict"] = sym::verdict_str(g.verdict);
  out["satisfied"] = g.satisfied;
  out["steps"] = g.steps;
  out["explored"] = g.explored;
  out["replay_ok"] = g.replay_ok;
  if (with_proof && g.proof) out["proof"] = proof_json(*g.proof);
  return out;
}

struct SymbolicOpts {
  std::string script;
  std::size_t depth = 0, budget = 0;
  std::string trace;
};

int run_symbolic_prove(const Ctx& ctx, const SymbolicOpts& o) {
  sym::ScriptOptions so;
  if (o.depth > 0) so.depth = o.depth;
  if (o.budget > 0) so.budget = o.budget;
  const sym::ScriptReport rep = sym::verify_script_file(o.script, so);
  json goals = json::array();
  bool contradiction = false;
  for (const sym::GoalResult& g : rep.goals) {
    goals.push_back(goal_json(g, false));
    const bool wrong_proven =
        g.expected == sym::Expectation::Refuted && g.verdict == sym::Verdict::Proven;
    const bool wrong_refuted =
        g.expected == sym::Expectation::Proven && g.verdict == sym::Verdict::Refuted;
    contradiction |= wrong_proven || wrong_refuted;
    std::cerr << "  " << g.name << ": " << sym::verdict_str(g.verdict) << " (expected "
              << expectation_str(g.expected) << ", steps " << g.steps << ", explored "
              << g.explored << ")" << (g.satisfied ? "" : "  <- unsatisfied") << "\n";
  }
  if (!o.trace.empty()) {
    json trace;
    trace["script"] = rep.label;
    json tg = json::array();
    for (const sym::GoalResult& g : rep.goals) tg.push_back(goal_json(g, true));
    trace["goals"] = std::move(tg);
    ser::write_json_file(o.trace, trace);
    std::cerr << "  trace written to " << o.trace << "\n";
  }
  json payload;
  payload["script"] = rep.label;
  payload["goals"] = std::move(goals);
  if (rep.all_satisfied())
    return emit(ctx, ser::verdict_verified(std::move(payload)),
                "all " + std::to_string(rep.goals.size()) + " goals settled as expected");
  if (contradiction)
    return emit(ctx, ser::verdict_refuted(std::move(payload)),
                "a goal settled conclusively against its expectation");
  return emit(ctx, ser::verdict_unknown(std::move(payload)),
              "some goals remained unsettled within the search limits");
}

// -------------------------------------------------------- selftest battery

int run_selftest(const Ctx& ctx) {
  SelftestReport r = selftest_battery(ctx.seed);
  if (!r.all_passed)
    return emit(ctx, ser::verdict_refuted(std::move(r.payload)),
                "selftest found a failing property");
  return emit(ctx, ser::verdict_verified(std::move(r.payload)), "selftest passed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certifier for 2-cells between algebra and interval homomorphisms"};
  app.require_subcommand(1);
  app.fallthrough();

  Ctx ctx;
  app.add_option("--seed", ctx.seed, "seed for all randomized searches")->capture_default_str();
  app.add_option("--field", ctx.field, "coefficient field: gauss or fp:<p>")
      ->capture_default_str();
  app.add_option("--json-out", ctx.json_out, "write the verdict JSON to this file");

  int rc = 2;
  auto wire = [&](CLI::App* cmd, auto handler) {
    cmd->callback([&, handler] { rc = guarded(ctx, [&, handler] { return handler(); }); });
  };

  // -------- alg
  CLI::App* a = app.add_subcommand("alg", "finite-dimensional algebra 2-cells");
  a->require_subcommand(1);
  {
    auto o = std::make_shared<TwoHomOpts>();
    CLI::App* c = a->add_subcommand("check-two-cell", "certify (a, b) as a 2-cell hom0 => hom1");
    c->add_option("--a", o->a, "source algebra file")->required();
    c->add_option("--b", o->b, "target algebra file (defaults to --a)");
    c->add_option("--hom0", o->hom0, "source hom file")->required();
    c->add_option("--hom1", o->hom1, "target hom file")->required();
    c->add_option("--cell", o->cell, "cell file with unit payloads a and b")->required();
    wire(c, [&, o] { return run_check_two_cell(ctx, *o); });
  }
  {
    auto o = std::make_shared<VComposeOpts>();
    CLI::App* c = a->add_subcommand("vcompose", "compose hom0 => hom1 => hom2 vertically");
    c->add_option("--a", o->a)->required();
    c->add_option("--b", o->b);
    c->add_option("--hom0", o->hom0)->required();
    c->add_option("--hom1", o->hom1)->required();
    c->add_option("--hom2", o->hom2)->required();
    c->add_option("--f", o->f, "cell hom0 => hom1")->required();
    c->add_option("--g", o->g, "cell hom1 => hom2")->required();
    wire(c, [&, o] { return run_vcompose(ctx, *o); });
  }
  {
    auto o = std::make_shared<HComposeOpts>();
    CLI::App* c = a->add_subcommand("hcompose", "compose cells across Hom(A,B) x Hom(B,C)");
    c->add_option("--a", o->a)->required();
    c->add_option("--b", o->b);
    c->add_option("--c", o->c);
    c->add_option("--phi0", o->phi0)->required();
    c->add_option("--phi1", o->phi1)->required();
    c->add_option("--psi0", o->psi0)->required();
    c->add_option("--psi1", o->psi1)->required();
    c->add_option("--f", o->f, "cell phi0 => phi1")->required();
    c->add_option("--g", o->g, "cell psi0 => psi1")->required();
    wire(c, [&, o] { return run_hcompose(ctx, *o); });
  }
  {
    auto o = std::make_shared<Pi0Opts>();
    CLI::App* c = a->add_subcommand("pi0", "are two homs conjugate under the target units?");
    c->add_option("--a", o->a)->required();
    c->add_option("--b", o->b);
    c->add_option("--hom0", o->hom0)->required();
    c->add_option("--hom1", o->hom1)->required();
    wire(c, [&, o] { return run_pi0(ctx, *o); });
  }
  {
    auto o = std::make_shared<AutOpts>();
    CLI::App* c = a->add_subcommand("aut-check", "membership of (a, b) in Aut(hom)");
    c->add_option("--a", o->a)->required();
    c->add_option("--hom", o->hom)->required();
    c->add_option("--cell", o->cell)->required();
    wire(c, [&, o] { return run_aut_check(ctx, *o); });
  }
  {
    auto o = std::make_shared<InterchangeOpts>();
    CLI::App* c = a->add_subcommand("interchange", "probe the interchange law on four cells");
    c->add_option("--a", o->a)->required();
    c->add_option("--b", o->b);
    c->add_option("--c", o->c);
    c->add_option("--phi0", o->phi0)->required();
    c->add_option("--phi1", o->phi1)->required();
    c->add_option("--phi2", o->phi2)->required();
    c->add_option("--psi0", o->psi0)->required();
    c->add_option("--psi1", o->psi1)->required();
    c->add_option("--psi2", o->psi2)->required();
    c->add_option("--f0", o->f0)->required();
    c->add_option("--f1", o->f1)->required();
    c->add_option("--g0", o->g0)->required();
    c->add_option("--g1", o->g1)->required();
    wire(c, [&, o] { return run_interchange(ctx, *o); });
  }
  {
    auto o = std::make_shared<GenOpts>();
    CLI::App* c = a->add_subcommand("gen", "write a consistent set of instance files");
    c->add_option("--dir", o->dir, "output directory")->required();
    wire(c, [&, o] { return run_alg_gen(ctx, *o); });
  }

  // -------- interval
  CLI::App* iv = app.add_subcommand("interval", "PL interval maps and their 2-cells");
  iv->require_subcommand(1);
  {
    auto f = std::make_shared<std::string>();
    auto g = std::make_shared<std::string>();
    CLI::App* c = iv->add_subcommand("compose", "compose two interior diffeomorphisms");
    c->add_option("--f", *f, "outer interior diffeo file")->required();
    c->add_option("--g", *g, "inner interior diffeo file")->required();
    wire(c, [&, f, g] { return run_interval_compose(ctx, *f, *g); });
  }
  {
    auto cf = std::make_shared<std::string>();
    auto ef = std::make_shared<std::string>();
    CLI::App* c = iv->add_subcommand("transport", "push an interior diffeo along an embedding");
    c->add_option("--c", *cf, "interior diffeo file")->required();
    c->add_option("--eps", *ef, "embedding file")->required();
    wire(c, [&, cf, ef] { return run_interval_transport(ctx, *cf, *ef); });
  }
  {
    auto o = std::make_shared<IvlCellOpts>();
    CLI::App* c = iv->add_subcommand("cell-check", "certify (a, b) as a cell eps0 => eps1");
    c->add_option("--eps0", o->eps0)->required();
    c->add_option("--eps1", o->eps1)->required();
    c->add_option("--a", o->a)->required();
    c->add_option("--b", o->b)->required();
    wire(c, [&, o] { return run_interval_cell_check(ctx, *o); });
  }
  {
    auto f = std::make_shared<std::string>();
    auto g = std::make_shared<std::string>();
    CLI::App* c = iv->add_subcommand("hcompose", "compose interval cells horizontally");
    c->add_option("--f", *f, "cell file (src, dst, a, b)")->required();
    c->add_option("--g", *g, "cell file (src, dst, a, b)")->required();
    wire(c, [&, f, g] { return run_interval_hcompose(ctx, *f, *g); });
  }
  {
    auto f = std::make_shared<std::string>();
    CLI::App* c = iv->add_subcommand("class", "mapping class of an endpoint-fixing self-map");
    c->add_option("--f", *f, "PL self-map file")->required();
    wire(c, [&, f] { return run_interval_class(ctx, *f); });
  }
  {
    auto u = std::make_shared<std::string>();
    auto v = std::make_shared<std::string>();
    CLI::App* c = iv->add_subcommand("lorentz", "rational boost of [-1,1] and its invariants");
    c->add_option("--u", *u, "velocity, |u| < 1")->required();
    c->add_option("--v", *v, "second velocity: also check the composition law");
    wire(c, [&, u, v] { return run_interval_lorentz(ctx, *u, *v); });
  }
  {
    auto e0 = std::make_shared<std::string>();
    auto e1 = std::make_shared<std::string>();
    CLI::App* c = iv->add_subcommand("pi0", "equivalence of embeddings under interior diffeos");
    c->add_option("--eps0", *e0)->required();
    c->add_option("--eps1", *e1)->required();
    wire(c, [&, e0, e1] { return run_interval_pi0(ctx, *e0, *e1); });
  }
  {
    auto o = std::make_shared<GenOpts>();
    CLI::App* c = iv->add_subcommand("gen", "write a consistent set of instance files");
    c->add_option("--dir", o->dir, "output directory")->required();
    wire(c, [&, o] { return run_interval_gen(ctx, *o); });
  }

  // -------- fermion
  CLI::App* fm = app.add_subcommand("fermion", "lattice Majorana algebras and their functors");
  fm->require_subcommand(1);
  {
    auto o = std::make_shared<LatticeOpts>();
    CLI::App* c = fm->add_subcommand("build", "build the lattice algebra of an interval");
    c->add_option("--interval", o->interval, "interval as left,right")->capture_default_str();
    c->add_option("--resolution", o->resolution, "uniform subdivision count")->required();
    wire(c, [&, o] { return run_fermion_build(ctx, *o); });
  }
  {
    auto o = std::make_shared<InduceOpts>();
    CLI::App* c = fm->add_subcommand("induce", "hom induced by a site-compatible embedding");
    c->add_option("--interval", o->src.interval, "source interval as left,right")
        ->capture_default_str();
    c->add_option("--resolution", o->src.resolution, "source subdivision count")->required();
    c->add_option("--dst-interval", o->dst.interval, "target interval as left,right")
        ->capture_default_str();
    c->add_option("--dst-resolution", o->dst.resolution, "target subdivision count")->required();
    c->add_option("--sites", o->sites, "image site indices, e.g. 0,2,3");
    wire(c, [&, o] { return run_fermion_induce(ctx, *o); });
  }
  {
    auto o = std::make_shared<WitnessOpts>();
    CLI::App* c = fm->add_subcommand("witness", "inner witness of a lattice automorphism");
    c->add_option("--interval", o->lattice.interval)->capture_default_str();
    c->add_option("--resolution", o->lattice.resolution)->required();
    c->add_option("--perm", o->perm, "site permutation images, e.g. 1,0,2");
    c->add_option("--diffeo", o->diffeo, "interior diffeo file (must be site-compatible)");
    wire(c, [&, o] { return run_fermion_witness(ctx, *o); });
  }
  {
    auto o = std::make_shared<AntihomOpts>();
    CLI::App* c = fm->add_subcommand("antihom", "order reversal of the witness assignment");
    c->add_option("--interval", o->lattice.interval)->capture_default_str();
    c->add_option("--resolution", o->lattice.resolution)->required();
    c->add_option("--p0", o->p0, "first permutation")->required();
    c->add_option("--p1", o->p1, "second permutation")->required();
    wire(c, [&, o] { return run_fermion_antihom(ctx, *o); });
  }
  {
    auto inst = std::make_shared<std::string>();
    CLI::App* c = fm->add_subcommand("two-functor", "quantize a composable pair of cells");
    c->add_option("--instance", *inst, "instance file (lattices, embeddings, perms)")
        ->required();
    wire(c, [&, inst] { return run_fermion_two_functor(ctx, *inst); });
  }
  {
    auto o = std::make_shared<GenOpts>();
    CLI::App* c = fm->add_subcommand("gen", "write a consistent set of instance files");
    c->add_option("--dir", o->dir, "output directory")->required();
    wire(c, [&, o] { return run_fermion_gen(ctx, *o); });
  }

  // -------- modular
  CLI::App* md = app.add_subcommand("modular", "state-twisted trace identities");
  md->require_subcommand(1);
  {
    auto o = std::make_shared<KmsOpts>();
    CLI::App* c = md->add_subcommand("kms", "twisted trace identity for a faithful state");
    c->add_option("--dim", o->dim, "matrix size for random instances")->capture_default_str();
    c->add_option("--rho", o->rho, "state matrix file (Hermitian, positive, trace 1)");
    c->add_option("--x", o->x, "observable file");
    c->add_option("--y", o->y, "observable file");
    wire(c, [&, o] { return run_modular_kms(ctx, *o); });
  }

  // -------- symbolic
  CLI::App* sy = app.add_subcommand("symbolic", "word-rewriting proof scripts");
  sy->require_subcommand(1);
  {
    auto o = std::make_shared<SymbolicOpts>();
    CLI::App* c = sy->add_subcommand("prove", "run a proof script and replay its derivations");
    c->add_option("script", o->script, "script file")->required();
    c->add_option("--depth", o->depth, "override the search depth");
    c->add_option("--budget", o->budget, "override the per-goal node budget");
    c->add_option("--trace", o->trace, "write the full derivations to this file");
    wire(c, [&, o] { return run_symbolic_prove(ctx, *o); });
  }

  // -------- selftest
  {
    CLI::App* c = app.add_subcommand("selftest", "run the cross-module property battery");
    wire(c, [&] { return run_selftest(ctx); });
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cerr << "[" << ms << " ms]\n";
  return rc;
}
