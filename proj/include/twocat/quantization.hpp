#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twocat/algebra.hpp"
#include "twocat/homgroupoid.hpp"
#include "twocat/interval.hpp"

namespace twocat::ferm {

using exact::Matrix;
using exact::Rat;
using exact::Scalar;
using ivl::Interval;
using ivl::InteriorDiffeo;
using ivl::PLMap;

// Interior lattice sites of the uniform subdivision of an interval into
// `resolution` pieces.  Site count is resolution - 1, capped at 6 to keep
// the exact Clifford algebras tractable.
struct SiteSet {
  Interval interval;
  long resolution = 2;
  std::vector<Rat> sites;

  static SiteSet make(const Interval& I, long resolution);
  std::size_t count() const { return sites.size(); }
  std::optional<std::size_t> index_of(const Rat& value) const;
  bool operator==(const SiteSet& o) const {
    return interval.same_extent(o.interval) && resolution == o.resolution;
  }
};

// Sign of gamma_S * gamma_T = sign * gamma_{S xor T} for ascending Majorana
// monomials, masks over generator indices.
int monomial_sign(std::uint32_t s, std::uint32_t t);

// Full matrix algebra of one Majorana mode pair per site, over Q(i):
// generators gamma_0 .. gamma_{2n-1} via the standard spin-chain
// construction, basis indexed by monomial masks in ascending-product order.
class CarAlgebra {
 public:
  static CarAlgebra build(const SiteSet& sites);
  // Memoized build keyed by extent and resolution.
  static const CarAlgebra& get(const SiteSet& sites);

  const SiteSet& sites() const { return sites_; }
  std::size_t n_sites() const { return sites_.count(); }
  std::size_t gen_count() const { return 2 * n_sites(); }
  const alg::AlgebraRef& algebra() const { return algebra_; }
  const Matrix& gamma(std::size_t k) const { return gammas_.at(k); }
  alg::AlgebraElement gamma_element(std::size_t k) const;
  alg::AlgebraElement monomial_element(std::uint32_t mask) const;

 private:
  SiteSet sites_;
  alg::AlgebraRef algebra_;
  std::vector<Matrix> gammas_;

  explicit CarAlgebra(SiteSet sites) : sites_(std::move(sites)) {}
};

// Permutation of site indices.
struct SitePerm {
  std::vector<std::size_t> images;

  static SitePerm identity(std::size_t n);
  static SitePerm transposition(std::size_t n, std::size_t i, std::size_t j);
  static SitePerm of(std::vector<std::size_t> images);  // validates

  std::size_t size() const { return images.size(); }
  std::size_t apply(std::size_t k) const { return images.at(k); }
  SitePerm inverse() const;
  // this . inner (apply inner first).
  SitePerm compose(const SitePerm& inner) const;
  bool operator==(const SitePerm& o) const { return images == o.images; }
  bool is_identity() const;
  std::string str() const;

  // Site permutation induced by a site-compatible interior diffeomorphism.
  // An increasing self-map sending the finite site set into itself fixes
  // every site, so this always yields the identity; the value of the call
  // is the site-compatibility check itself.
  static SitePerm from_interior_diffeo(const InteriorDiffeo& c, const SiteSet& sites);
};

// Embedding of one site lattice into another: a PL embedding that maps
// sites to sites (checked), bundled with the induced index map.
struct SiteEmbedding {
  SiteSet src, dst;
  PLMap map;
  std::vector<std::size_t> site_image;  // strictly increasing

  static SiteEmbedding make(PLMap map, const SiteSet& src, const SiteSet& dst);
  // PL map through chosen site images (and interpolated endpoints).
  static SiteEmbedding through_sites(const SiteSet& src, const SiteSet& dst,
                                     std::vector<std::size_t> site_image);
};

// The lattice interval algebra.
CarAlgebra quantize(const Interval& I, long resolution);

// Unital hom A(I) -> A(J) induced by a site-compatible embedding: gamma
// pairs at a site map to the gamma pairs at the image site.  Certified.
alg::AlgHomRef induced_hom(const SiteEmbedding& e, const CarAlgebra& src, const CarAlgebra& dst);

// Automorphism of a CAR algebra given by images of the Majorana generators.
struct CarAut {
  std::vector<alg::AlgebraElement> gen_images;

  // As a certified endomorphism (images of all monomials).
  alg::AlgHomRef to_hom(const CarAlgebra& a, const std::string& name = "aut") const;
};

// Generator relabeling gamma_{2k+j} -> gamma_{2p(k)+j}.
CarAut bogoliubov(const SitePerm& p, const CarAlgebra& a);

struct InnerWitness {
  alg::Unit unit;  // sigma_unit == alpha on all generators, certified
};

// Solves the intertwiner system gamma_k u = u alpha(gamma_k); the solution
// space of an automorphism of a full matrix algebra is one-dimensional, so
// the witness is unique up to scale and is normalized so its first nonzero
// monomial coordinate equals 1.  Uses a sign-propagation fast path when
// alpha permutes generators (up to sign) and dense elimination otherwise.
InnerWitness inner_witness(const CarAut& alpha, const CarAlgebra& a);
// Dense-elimination solver, exposed for cross-checking the fast path.
InnerWitness inner_witness_dense(const CarAut& alpha, const CarAlgebra& a);

struct AntihomReport {
  bool reversed_scalar = false;   // a(p0 . p1) and a(p1) a(p0) differ by a scalar
  Scalar defect;                  // that scalar
  bool reversed_exact = false;    // defect == 1
  bool same_order_scalar = false; // a(p0) a(p1) also witnesses the composite
  bool perms_commute = false;
};
// Order-reversal behavior of the witness assignment on a pair of site
// permutations: sigma_{a(p1) a(p0)} = sigma_{a(p0)} . sigma_{a(p1)}
// = A(p0 . p1), so the reversed product must agree with the composite
// witness up to a central scalar; the same-order product does so only when
// the permutations commute.
AntihomReport antihom_check(const SitePerm& p0, const SitePerm& p1, const CarAlgebra& a);

struct AntihomTableEntry {
  std::size_t i = 0, j = 0;
  Scalar defect;
  bool reversed_scalar = false;
  bool same_order_scalar = false;
};
// Defect table over all ordered pairs from a generating set.
std::vector<AntihomTableEntry> antihom_table(const std::vector<SitePerm>& gens,
                                             const CarAlgebra& a);

// Discrete 2-cell between site embeddings I -> J: site permutations (p, q)
// with q . e0 == e1 . p on site indices.  This is the combinatorial layer
// that survives quantization; orientation-preserving interval maps fix
// sites pointwise, so nontrivial permutations enter only here.
struct DiscreteCell {
  SiteEmbedding e0, e1;
  SitePerm p, q;

  DiscreteCell(SiteEmbedding e0, SiteEmbedding e1, SitePerm p, SitePerm q);  // certifies
};

// Site-level horizontal composite (p, c . (b1^-1 b0)^{delta0-transport}).
DiscreteCell discrete_hcompose(const DiscreteCell& f, const DiscreteCell& g);

struct TwoFunctorReport {
  bool cells_certified = false;         // quantized f and g are certified 2-cells
  bool composite_certified = false;     // quantized composite cell certified
  bool matches_witness_up_to_scalar = false;
  Scalar scalar;                        // hcompose b-component over composite witness
  bool on_the_nose = false;             // that scalar is 1
  bool exchange_form_exact = false;     // c Psi1(b1^-1 b0) == Psi0(b0 b1^-1) c, exactly
  bool naive_form_exact = false;        // c Psi1(b1^-1 b0) == Psi0(b1^-1 b0) c
  bool b_components_commute = false;
};
// Quantizes a horizontally composable pair of discrete cells and compares
// the algebraic horizontal composite against the witness of the composite
// cell.  The b-component identity is checked in its exchange-corrected form
// (exact) and in the naive order (holds only for commuting b-components).
TwoFunctorReport two_functor_check(const DiscreteCell& f, const DiscreteCell& g);

// Density-like state data: Hermitian, positive definite, trace 1, over Q(i).
struct ModularData {
  Matrix rho;
  Matrix rho_inv;

  explicit ModularData(Matrix rho);  // validates
};

// One step of the modular flow on observables: x -> rho x rho^-1.
Matrix modular_continuation(const ModularData& d, const Matrix& x);

struct KmsReport {
  bool holds = false;           // tr(rho x E(y)) == tr(rho y x)
  Scalar lhs, rhs;
  bool opposite_holds = false;  // same identity for E'(y) = rho^-1 y rho
  Scalar opposite_lhs;
};
// Twisted trace identity for the conjugation flow E(y) = rho y rho^-1; the
// opposite convention is evaluated too, as a built-in counterexample.
KmsReport kms_check(const ModularData& d, const Matrix& x, const Matrix& y);

}  // namespace twocat::ferm
