#pragma once

#include <cstdint>
#include <optional>

#include "twocat/algebra.hpp"

namespace twocat::grpd {

using alg::AlgebraElement;
using alg::AlgHom;
using alg::AlgHomRef;
using alg::Unit;

// 2-cell (a, b): phi0 => phi1 between homs phi0, phi1: A -> B, where a is a
// unit of A and b a unit of B.  Construction certifies, on every source
// basis element, the defining square
//     sigma_b . phi0 == phi1 . sigma_a
// together with the equivalent single-conjugator form
//     sigma_w . phi1 == phi0   for   w = phi1(a) * b^-1
// and the exchange identity phi1(a) b^-1 == b^-1 phi0(a).
class TwoCell {
 public:
  TwoCell(AlgHomRef src, AlgHomRef dst, Unit a, Unit b);

  const AlgHomRef& src() const { return src_; }
  const AlgHomRef& dst() const { return dst_; }
  const Unit& a() const { return a_; }
  const Unit& b() const { return b_; }
  // w = phi1(a) b^-1, the unit conjugating dst back to src.
  const Unit& pivot() const { return pivot_; }

  bool operator==(const TwoCell& o) const;

 private:
  AlgHomRef src_, dst_;
  Unit a_, b_;
  Unit pivot_;
};

struct CellFailure {
  std::size_t basis_index = 0;
  std::string detail;
};

struct CellCheck {
  std::optional<TwoCell> cell;
  std::optional<CellFailure> failure;
  bool ok() const { return cell.has_value(); }
};

// Non-throwing construction: either a certified cell or the first basis
// element where sigma_b . phi0 != phi1 . sigma_a.
CellCheck check_two_cell(const AlgHomRef& phi0, const AlgHomRef& phi1, const Unit& a,
                         const Unit& b);
// Throwing variant for call sites where failure is a logic error.
TwoCell require_two_cell(const AlgHomRef& phi0, const AlgHomRef& phi1, const Unit& a,
                         const Unit& b, const std::string& context);

// Vertical composite of f: phi0 => phi1 and g: phi1 => phi2, which is
// (a0 a1, b0 b1): phi0 => phi2.
TwoCell vcompose(const TwoCell& f, const TwoCell& g);

// Horizontal composite across Hom(A,B) x Hom(B,C): for f = (a, b0) and
// g = (b1, c) the composite is (a, c * psi1(b1^-1 b0)): psi0.phi0 => psi1.phi1.
// A certification failure here is fatal (it would contradict the composition
// law this implements), so it throws rather than returning a failure.
TwoCell hcompose(const TwoCell& f, const TwoCell& g);

struct AssociativityReport {
  bool holds = false;
  bool a_equal = false;
  bool b_equal = false;
};
// (f x g) x h vs f x (g x h) under hcompose, compared on the nose.
AssociativityReport associativity_check(const TwoCell& f, const TwoCell& g, const TwoCell& h);

struct ConjugacyWitness {
  Unit u;        // unit of the target with sigma_u . phi1 == phi0
  TwoCell cell;  // the induced 2-cell (1, u^-1): phi0 => phi1
};

struct ConjugacySearch {
  std::optional<ConjugacyWitness> witness;
  // True when the absence of a witness is conclusive (intertwiner space
  // enumerated completely).  Over Q(i) the search is sound but incomplete:
  // a found witness is always valid, absence may be spurious.
  bool exhaustive = false;
};

// Searches for a unit u of the common target with sigma_u . phi1 == phi0 by
// solving the intertwiner system phi1(x) u == u phi0(x) and hunting for an
// invertible element of the solution space.
ConjugacySearch conjugating_unit(const AlgHomRef& phi0, const AlgHomRef& phi1,
                                 std::uint64_t seed = 0, std::size_t random_draws = 64,
                                 std::size_t enum_cap = 200000);

// Same source/target homs equivalent up to an inner automorphism of the
// target?  (Connected-component test of the hom groupoid.)
bool pi0_equal(const AlgHomRef& phi0, const AlgHomRef& phi1, std::uint64_t seed = 0);

struct AutCheckReport {
  bool cell_ok = false;        // (a, b) is a 2-cell phi => phi
  bool criterion_ok = false;   // phi(a) b^-1 centralizes the image of phi
  bool iff_holds = false;      // the two agree, as they must
};
// Membership test for Aut(phi), verified against the centralizer criterion
// in both directions.
AutCheckReport aut_check(const AlgHomRef& phi, const Unit& a, const Unit& b);

struct InterchangeReport {
  bool holds = false;     // the two composites agree componentwise
  bool a_equal = false;
  bool b_equal = false;
};
// Interchange: given vertically composable f0, f1 over Hom(A,B) and g0, g1
// over Hom(B,C), compares hcompose(vcompose(f0,f1), vcompose(g0,g1)) with
// vcompose(hcompose(f0,g0), hcompose(f1,g1)).
InterchangeReport interchange_probe(const TwoCell& f0, const TwoCell& f1, const TwoCell& g0,
                                    const TwoCell& g1);

// Morphism of the quotient category: a hom considered up to inner
// automorphisms of its target.
struct OutMorphism {
  AlgHomRef representative;

  bool equals(const OutMorphism& o, std::uint64_t seed = 0) const {
    return pi0_equal(representative, o.representative, seed);
  }
};

}  // namespace twocat::grpd
