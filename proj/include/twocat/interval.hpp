#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twocat/scalar.hpp"

namespace twocat::ivl {

using exact::Rat;

struct Interval {
  Rat left, right;
  std::string label;

  Interval(Rat l, Rat r, std::string lab = "");
  Rat length() const { return right - left; }
  bool same_extent(const Interval& o) const { return left == o.left && right == o.right; }
  bool contains(const Rat& t) const { return left <= t && t <= right; }
  std::string str() const;
};

// Strictly increasing piecewise-linear map between closed rational
// intervals, stored in canonical form: breakpoints xs with values ys,
// endpoints included, no collinear interior breakpoints.  Serves both as
// embedding (image may be a proper subinterval of the codomain) and as
// diffeomorphism (surjective case).
class PLMap {
 public:
  PLMap(Interval dom, Interval cod, std::vector<Rat> xs, std::vector<Rat> ys);
  static PLMap identity(const Interval& I);
  // The affine increasing bijection dom -> cod.
  static PLMap affine_onto(const Interval& dom, const Interval& cod);

  const Interval& dom() const { return dom_; }
  const Interval& cod() const { return cod_; }
  const std::vector<Rat>& xs() const { return xs_; }
  const std::vector<Rat>& ys() const { return ys_; }

  Rat eval(const Rat& t) const;
  Rat eval_inverse(const Rat& v) const;  // v must lie in the image
  Rat image_left() const { return ys_.front(); }
  Rat image_right() const { return ys_.back(); }
  bool surjective() const;
  bool fixes_endpoints() const;
  Rat initial_slope() const;
  Rat final_slope() const;

  // Graph equality (domain extent, codomain extent, canonical breakpoints).
  bool operator==(const PLMap& o) const;
  bool operator!=(const PLMap& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Interval dom_, cod_;
  std::vector<Rat> xs_, ys_;
};

// outer . inner; requires the codomain extent of inner to equal the domain
// extent of outer.
PLMap pl_compose(const PLMap& outer, const PLMap& inner);
// Inverse of a surjective map.
PLMap pl_invert(const PLMap& f);
// Inverse onto the image: a map from the image interval back to dom(f);
// defined for embeddings.
PLMap pl_section(const PLMap& f);
// First breakpoint of the merged grid where the two maps differ.  Two maps
// agreeing on the merged grid agree everywhere, so nullopt means equality.
std::optional<Rat> pl_disagreement(const PLMap& f, const PLMap& g);

// Self-map supported in the interior: equals the identity on collars
// [l, l+collar] and [r-collar, r].  The collar is carried explicitly and
// verified at construction.
class InteriorDiffeo {
 public:
  InteriorDiffeo(PLMap map, Rat collar);
  static InteriorDiffeo identity(const Interval& I);

  const PLMap& map() const { return map_; }
  const Rat& collar() const { return collar_; }
  InteriorDiffeo inverse() const;
  // Same underlying map; the collar is a certificate, not identity data.
  bool same_map(const InteriorDiffeo& o) const { return map_ == o.map_; }

 private:
  PLMap map_;
  Rat collar_;
};

// outer . inner with the smaller collar.
InteriorDiffeo interior_compose(const InteriorDiffeo& outer, const InteriorDiffeo& inner);

// Pushforward of c along the embedding eps: acts as eps . c . eps^-1 on the
// image of eps and as the identity elsewhere; the returned collar is
// computed from c's collar through eps.
InteriorDiffeo transport(const InteriorDiffeo& c, const PLMap& eps);

// Probes for the two functoriality laws transport satisfies exactly:
// (x . y)^eps == x^eps . y^eps and (c^eps)^eta == c^(eta . eps).
bool transport_compose_check(const InteriorDiffeo& x, const InteriorDiffeo& y, const PLMap& eps);
bool transport_tower_check(const InteriorDiffeo& c, const PLMap& eps, const PLMap& eta);

// 2-cell (a, b): eps0 => eps1 between embeddings I -> J, certified at
// construction: b . eps0 == eps1 . a as maps.
struct IntervalTwoCell {
  PLMap src, dst;
  InteriorDiffeo a, b;

  IntervalTwoCell(PLMap src, PLMap dst, InteriorDiffeo a, InteriorDiffeo b);
  bool same_cell(const IntervalTwoCell& o) const;
};

struct IntervalCellFailure {
  Rat point;  // a rational witness with no earlier breakpoint disagreement
  std::string detail;
};

struct IntervalCellCheck {
  std::optional<IntervalTwoCell> cell;
  std::optional<IntervalCellFailure> failure;
  bool ok() const { return cell.has_value(); }
};

IntervalCellCheck check_interval_two_cell(const PLMap& eps0, const PLMap& eps1,
                                          const InteriorDiffeo& a, const InteriorDiffeo& b);
IntervalTwoCell require_interval_two_cell(const PLMap& eps0, const PLMap& eps1,
                                          const InteriorDiffeo& a, const InteriorDiffeo& b,
                                          const std::string& context);

// Vertical composite of f: eps0 => eps1 and g: eps1 => eps2.
IntervalTwoCell interval_vcompose(const IntervalTwoCell& f, const IntervalTwoCell& g);
// Horizontal composite across embeddings I -> J -> K: for f = (a, b0) and
// g = (b1, c) the composite is (a, c . (b1^-1 . b0)^{delta0}) where delta0
// is the source embedding of g.  Certification failure is fatal.
IntervalTwoCell interval_hcompose(const IntervalTwoCell& f, const IntervalTwoCell& g);

struct IntervalAssociativityReport {
  bool holds = false;
  bool a_equal = false;
  bool b_equal = false;
};
IntervalAssociativityReport interval_associativity_check(const IntervalTwoCell& f,
                                                         const IntervalTwoCell& g,
                                                         const IntervalTwoCell& h);

// Germ of an increasing Mobius (or affine) map at a fixed boundary point,
// as a primitive integer 2x2 matrix up to positive scaling.  Canonical
// representative: integer entries with gcd 1 and positive denominator value
// c*e + d at the fixed endpoint e.
class BoundaryGerm {
 public:
  enum class End { Left, Right };

  static BoundaryGerm affine(const Rat& slope, const Rat& offset, const Rat& endpoint, End end);
  static BoundaryGerm mobius(const Rat& a, const Rat& b, const Rat& c, const Rat& d,
                             const Rat& endpoint, End end);
  static BoundaryGerm trivial(const Rat& endpoint, End end);

  // this . inner (endpoints and ends must agree).
  BoundaryGerm compose(const BoundaryGerm& inner) const;
  bool is_identity() const;
  // Derivative of the map at the fixed point: det / (c*e + d)^2.
  Rat derivative() const;
  const Rat& endpoint() const { return endpoint_; }
  End end() const { return end_; }

  bool operator==(const BoundaryGerm& o) const;
  bool operator!=(const BoundaryGerm& o) const { return !(*this == o); }
  std::string str() const;

 private:
  mpz_class a_, b_, c_, d_;
  Rat endpoint_;
  End end_;

  BoundaryGerm(mpz_class a, mpz_class b, mpz_class c, mpz_class d, Rat endpoint, End end);
  void canonicalize();
};

// Pair of boundary germs of an endpoint-fixing self-map: its class in the
// quotient by interior-supported diffeomorphisms.
struct MappingClass {
  BoundaryGerm left, right;

  bool is_trivial() const { return left.is_identity() && right.is_identity(); }
  bool operator==(const MappingClass& o) const { return left == o.left && right == o.right; }
  std::string str() const;
};

// Endpoint-fixing PL self-map -> its mapping class.
MappingClass mapping_class(const PLMap& f);
MappingClass class_compose(const MappingClass& f, const MappingClass& g);
// Group-law probe: mapping_class(f . g) == class_compose(mc f, mc g).
bool class_hom_check(const PLMap& f, const PLMap& g);

// Increasing Mobius self-map of [-1, 1] fixing both endpoints, represented
// by the primitive integer matrix [[c, s], [s, c]] with c > 0, c^2 > s^2.
class MobiusMap {
 public:
  MobiusMap(mpz_class c, mpz_class s);

  Rat eval(const Rat& t) const;
  MobiusMap compose(const MobiusMap& inner) const;
  MobiusMap inverse() const { return MobiusMap(c_, -s_); }
  Rat velocity() const;  // s/c, the image of 0
  Rat derivative_at(const Rat& t) const;
  bool is_identity() const { return s_ == 0; }

  const mpz_class& c() const { return c_; }
  const mpz_class& s() const { return s_; }

  bool operator==(const MobiusMap& o) const { return c_ == o.c_ && s_ == o.s_; }
  MappingClass mapping_class() const;
  std::string str() const;

 private:
  mpz_class c_, s_;
  void canonicalize();
};

// Boost with rational velocity u, |u| < 1: the Mobius map [[q, p], [p, q]]
// for u = p/q in lowest terms.  Sends 0 to u and fixes -1 and 1.
MobiusMap lorentz(const Rat& u);

struct LorentzFlowReport {
  bool group_law = false;          // lorentz(u1) . lorentz(u2) == lorentz((u1+u2)/(1+u1*u2))
  bool class_compatible = false;   // mapping classes compose accordingly
  Rat composite_velocity = Rat(0);
};
LorentzFlowReport lorentz_flow_check(const Rat& u1, const Rat& u2);

struct EmbeddingPi0 {
  bool equivalent = false;
  std::optional<IntervalTwoCell> witness;  // cell eps0 => eps1 when equivalent
  std::string reason;                      // obstruction when not
};

// Connectivity of embeddings I -> J under interior diffeomorphism action:
// decided by the endpoint-matching pattern and, at matched ends, equality of
// the boundary germs.  Constructive: produces a certified witness cell.
EmbeddingPi0 pi0_emb(const PLMap& eps0, const PLMap& eps1);

}  // namespace twocat::ivl
