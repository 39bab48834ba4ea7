#include "twocat/interval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "twocat/errors.hpp"

namespace twocat::ivl {

Interval::Interval(Rat l, Rat r, std::string lab)
    : left(std::move(l)), right(std::move(r)), label(std::move(lab)) {
  if (!(left < right)) throw IntervalError("interval endpoints out of order");
}

std::string Interval::str() const {
  std::string s = "[" + exact::rat_str(left) + ", " + exact::rat_str(right) + "]";
  if (!label.empty()) s += " (" + label + ")";
  return s;
}

PLMap::PLMap(Interval dom, Interval cod, std::vector<Rat> xs, std::vector<Rat> ys)
    : dom_(std::move(dom)), cod_(std::move(cod)), xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2) {
    throw IntervalError("PL map needs matching breakpoint/value lists of length >= 2");
  }
  if (xs_.front() != dom_.left || xs_.back() != dom_.right) {
    throw IntervalError("PL breakpoints must span the domain");
  }
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i - 1] < xs_[i])) throw IntervalError("PL breakpoints must strictly increase");
    if (!(ys_[i - 1] < ys_[i])) throw IntervalError("PL values must strictly increase");
  }
  if (ys_.front() < cod_.left || cod_.right < ys_.back()) {
    throw IntervalError("PL values leave the codomain");
  }
  // Canonical form: drop interior breakpoints where the slope does not change.
  std::vector<Rat> cx{xs_.front()}, cy{ys_.front()};
  for (std::size_t i = 1; i + 1 < xs_.size(); ++i) {
    const Rat sl = (ys_[i] - cy.back()) / (xs_[i] - cx.back());
    const Rat sr = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    if (sl != sr) {
      cx.push_back(xs_[i]);
      cy.push_back(ys_[i]);
    }
  }
  cx.push_back(xs_.back());
  cy.push_back(ys_.back());
  xs_ = std::move(cx);
  ys_ = std::move(cy);
}

PLMap PLMap::identity(const Interval& I) {
  return PLMap(I, I, {I.left, I.right}, {I.left, I.right});
}

PLMap PLMap::affine_onto(const Interval& dom, const Interval& cod) {
  return PLMap(dom, cod, {dom.left, dom.right}, {cod.left, cod.right});
}

Rat PLMap::eval(const Rat& t) const {
  if (t < dom_.left || dom_.right < t) throw IntervalError("eval outside domain");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == xs_.size()) return ys_.back();
  if (i == 0) return ys_.front();
  --i;
  return ys_[i] + (ys_[i + 1] - ys_[i]) * (t - xs_[i]) / (xs_[i + 1] - xs_[i]);
}

Rat PLMap::eval_inverse(const Rat& v) const {
  if (v < ys_.front() || ys_.back() < v) throw IntervalError("eval_inverse outside image");
  auto it = std::upper_bound(ys_.begin(), ys_.end(), v);
  std::size_t i = static_cast<std::size_t>(it - ys_.begin());
  if (i == ys_.size()) return xs_.back();
  if (i == 0) return xs_.front();
  --i;
  return xs_[i] + (xs_[i + 1] - xs_[i]) * (v - ys_[i]) / (ys_[i + 1] - ys_[i]);
}

bool PLMap::surjective() const {
  return ys_.front() == cod_.left && ys_.back() == cod_.right;
}

bool PLMap::fixes_endpoints() const {
  return dom_.same_extent(cod_) && ys_.front() == dom_.left && ys_.back() == dom_.right;
}

Rat PLMap::initial_slope() const {
  return (ys_[1] - ys_[0]) / (xs_[1] - xs_[0]);
}

Rat PLMap::final_slope() const {
  const std::size_t n = xs_.size();
  return (ys_[n - 1] - ys_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
}

bool PLMap::operator==(const PLMap& o) const {
  return dom_.same_extent(o.dom_) && cod_.same_extent(o.cod_) && xs_ == o.xs_ && ys_ == o.ys_;
}

std::string PLMap::str() const {
  std::ostringstream os;
  os << dom_.str() << " -> " << cod_.str() << " via";
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    os << " (" << exact::rat_str(xs_[i]) << ", " << exact::rat_str(ys_[i]) << ")";
  }
  return os.str();
}

PLMap pl_compose(const PLMap& outer, const PLMap& inner) {
  if (!inner.cod().same_extent(outer.dom())) {
    throw IntervalError("pl_compose: inner codomain does not match outer domain");
  }
  std::set<Rat> pts(inner.xs().begin(), inner.xs().end());
  for (const Rat& u : outer.xs()) {
    if (inner.image_left() <= u && u <= inner.image_right()) {
      pts.insert(inner.eval_inverse(u));
    }
  }
  std::vector<Rat> xs(pts.begin(), pts.end());
  std::vector<Rat> ys;
  ys.reserve(xs.size());
  for (const Rat& t : xs) ys.push_back(outer.eval(inner.eval(t)));
  return PLMap(inner.dom(), outer.cod(), std::move(xs), std::move(ys));
}

PLMap pl_invert(const PLMap& f) {
  if (!f.surjective()) throw IntervalError("pl_invert: map is not surjective");
  return PLMap(f.cod(), f.dom(), f.ys(), f.xs());
}

PLMap pl_section(const PLMap& f) {
  Interval image(f.image_left(), f.image_right(),
                 f.dom().label.empty() ? "" : "im(" + f.dom().label + ")");
  return PLMap(image, f.dom(), f.ys(), f.xs());
}

std::optional<Rat> pl_disagreement(const PLMap& f, const PLMap& g) {
  if (!f.dom().same_extent(g.dom())) throw IntervalError("pl_disagreement: domains differ");
  std::set<Rat> pts(f.xs().begin(), f.xs().end());
  pts.insert(g.xs().begin(), g.xs().end());
  for (const Rat& t : pts) {
    if (f.eval(t) != g.eval(t)) return t;
  }
  return std::nullopt;
}

InteriorDiffeo::InteriorDiffeo(PLMap map, Rat collar)
    : map_(std::move(map)), collar_(std::move(collar)) {
  if (!map_.fixes_endpoints()) {
    throw IntervalError("interior diffeo must be an endpoint-fixing self-map");
  }
  const Rat l = map_.dom().left, r = map_.dom().right;
  if (!(collar_ > 0) || !(l + collar_ < r - collar_)) {
    throw IntervalError("collar must be positive and below half the interval length");
  }
  auto identity_on = [&](const Rat& from, const Rat& to) {
    if (map_.eval(from) != from || map_.eval(to) != to) return false;
    for (std::size_t i = 0; i < map_.xs().size(); ++i) {
      const Rat& x = map_.xs()[i];
      if (from < x && x < to && map_.ys()[i] != x) return false;
    }
    return true;
  };
  if (!identity_on(l, l + collar_) || !identity_on(r - collar_, r)) {
    throw IntervalError("map is not the identity on the declared collars");
  }
}

InteriorDiffeo InteriorDiffeo::identity(const Interval& I) {
  return InteriorDiffeo(PLMap::identity(I), I.length() / 4);
}

InteriorDiffeo InteriorDiffeo::inverse() const {
  return InteriorDiffeo(pl_invert(map_), collar_);
}

InteriorDiffeo interior_compose(const InteriorDiffeo& outer, const InteriorDiffeo& inner) {
  if (!outer.map().dom().same_extent(inner.map().dom())) {
    throw IntervalError("interior_compose: different intervals");
  }
  return InteriorDiffeo(pl_compose(outer.map(), inner.map()),
                        std::min(outer.collar(), inner.collar()));
}

InteriorDiffeo transport(const InteriorDiffeo& c, const PLMap& eps) {
  if (!c.map().dom().same_extent(eps.dom())) {
    throw IntervalError("transport: diffeo and embedding live on different intervals");
  }
  const Interval& J = eps.cod();
  const Rat l = eps.dom().left, r = eps.dom().right;
  const PLMap c_inv = pl_invert(c.map());
  // Breakpoint candidates of eps . c . eps^-1 on the image of eps: images of
  // c's kinks, images of eps's kinks (kinks of eps^-1), and points where
  // c . eps^-1 crosses a kink of the outer eps.
  std::set<Rat> pts;
  for (const Rat& x : c.map().xs()) pts.insert(eps.eval(x));
  for (const Rat& u : eps.xs()) {
    pts.insert(eps.eval(u));
    pts.insert(eps.eval(c_inv.eval(u)));
  }
  std::vector<Rat> xs, ys;
  if (J.left < eps.image_left()) {
    xs.push_back(J.left);
    ys.push_back(J.left);
  }
  for (const Rat& s : pts) {
    xs.push_back(s);
    ys.push_back(eps.eval(c.map().eval(eps.eval_inverse(s))));
  }
  if (eps.image_right() < J.right) {
    xs.push_back(J.right);
    ys.push_back(J.right);
  }
  PLMap m(J, J, std::move(xs), std::move(ys));
  const Rat collar = std::min(eps.eval(l + c.collar()) - J.left, J.right - eps.eval(r - c.collar()));
  return InteriorDiffeo(std::move(m), collar);
}

bool transport_compose_check(const InteriorDiffeo& x, const InteriorDiffeo& y, const PLMap& eps) {
  return transport(interior_compose(x, y), eps).same_map(
      interior_compose(transport(x, eps), transport(y, eps)));
}

bool transport_tower_check(const InteriorDiffeo& c, const PLMap& eps, const PLMap& eta) {
  return transport(transport(c, eps), eta).same_map(transport(c, pl_compose(eta, eps)));
}

namespace {

std::optional<IntervalCellFailure> certify_interval_cell(const PLMap& eps0, const PLMap& eps1,
                                                         const InteriorDiffeo& a,
                                                         const InteriorDiffeo& b) {
  if (!eps0.dom().same_extent(eps1.dom()) || !eps0.cod().same_extent(eps1.cod())) {
    throw IntervalError("interval cell: embeddings are not parallel");
  }
  if (!a.map().dom().same_extent(eps0.dom())) {
    throw IntervalError("interval cell: a must act on the source interval");
  }
  if (!b.map().dom().same_extent(eps0.cod())) {
    throw IntervalError("interval cell: b must act on the target interval");
  }
  const PLMap lhs = pl_compose(b.map(), eps0);
  const PLMap rhs = pl_compose(eps1, a.map());
  if (auto t = pl_disagreement(lhs, rhs)) {
    return IntervalCellFailure{*t, "b . eps0 != eps1 . a at t = " + exact::rat_str(*t)};
  }
  return std::nullopt;
}

}  // namespace

IntervalTwoCell::IntervalTwoCell(PLMap src_, PLMap dst_, InteriorDiffeo a_, InteriorDiffeo b_)
    : src(std::move(src_)), dst(std::move(dst_)), a(std::move(a_)), b(std::move(b_)) {
  if (auto fail = certify_interval_cell(src, dst, a, b)) {
    throw CertificationError("interval two-cell certification failed: " + fail->detail);
  }
}

bool IntervalTwoCell::same_cell(const IntervalTwoCell& o) const {
  return src == o.src && dst == o.dst && a.same_map(o.a) && b.same_map(o.b);
}

IntervalCellCheck check_interval_two_cell(const PLMap& eps0, const PLMap& eps1,
                                          const InteriorDiffeo& a, const InteriorDiffeo& b) {
  if (auto fail = certify_interval_cell(eps0, eps1, a, b)) {
    return IntervalCellCheck{std::nullopt, fail};
  }
  return IntervalCellCheck{IntervalTwoCell(eps0, eps1, a, b), std::nullopt};
}

IntervalTwoCell require_interval_two_cell(const PLMap& eps0, const PLMap& eps1,
                                          const InteriorDiffeo& a, const InteriorDiffeo& b,
                                          const std::string& context) {
  auto r = check_interval_two_cell(eps0, eps1, a, b);
  if (!r.ok()) throw CertificationError(context + ": " + r.failure->detail);
  return *r.cell;
}

IntervalTwoCell interval_vcompose(const IntervalTwoCell& f, const IntervalTwoCell& g) {
  if (f.dst != g.src) throw IntervalError("interval_vcompose: cells are not composable");
  return require_interval_two_cell(f.src, g.dst, interior_compose(g.a, f.a),
                                   interior_compose(g.b, f.b),
                                   "interval_vcompose result failed certification");
}

IntervalTwoCell interval_hcompose(const IntervalTwoCell& f, const IntervalTwoCell& g) {
  if (!f.src.cod().same_extent(g.src.dom())) {
    throw IntervalError("interval_hcompose: middle intervals differ");
  }
  // f = (a, b0): eps0 => eps1 over I -> J; g = (b1, c): delta0 => delta1
  // over J -> K.  Composite is (a, c . (b1^-1 . b0)^{delta0}).
  const InteriorDiffeo h = interior_compose(g.a.inverse(), f.b);
  const InteriorDiffeo d = interior_compose(g.b, transport(h, g.src));
  const PLMap lower = pl_compose(g.src, f.src);
  const PLMap upper = pl_compose(g.dst, f.dst);
  return require_interval_two_cell(
      lower, upper, f.a, d,
      "interval_hcompose: composite failed certification (composition law violated)");
}

IntervalAssociativityReport interval_associativity_check(const IntervalTwoCell& f,
                                                         const IntervalTwoCell& g,
                                                         const IntervalTwoCell& h) {
  const IntervalTwoCell left = interval_hcompose(interval_hcompose(f, g), h);
  const IntervalTwoCell right = interval_hcompose(f, interval_hcompose(g, h));
  IntervalAssociativityReport r;
  r.a_equal = left.a.same_map(right.a);
  r.b_equal = left.b.same_map(right.b);
  r.holds = r.a_equal && r.b_equal && left.src == right.src && left.dst == right.dst;
  return r;
}

BoundaryGerm::BoundaryGerm(mpz_class a, mpz_class b, mpz_class c, mpz_class d, Rat endpoint,
                           End end)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
      endpoint_(std::move(endpoint)), end_(end) {
  canonicalize();
}

void BoundaryGerm::canonicalize() {
  mpz_class g = gcd(gcd(a_, b_), gcd(c_, d_));
  if (g == 0) throw IntervalError("germ matrix is zero");
  g = abs(g);
  a_ /= g;
  b_ /= g;
  c_ /= g;
  d_ /= g;
  const Rat denom = Rat(c_) * endpoint_ + Rat(d_);
  if (denom == 0) throw IntervalError("germ has a pole at its endpoint");
  if (denom < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
  const Rat det = Rat(a_) * Rat(d_) - Rat(b_) * Rat(c_);
  if (!(det > 0)) throw IntervalError("germ must be orientation-preserving");
  const Rat num = Rat(a_) * endpoint_ + Rat(b_);
  if (num != endpoint_ * (Rat(c_) * endpoint_ + Rat(d_))) {
    throw IntervalError("germ does not fix its endpoint");
  }
}

BoundaryGerm BoundaryGerm::affine(const Rat& slope, const Rat& offset, const Rat& endpoint,
                                  End end) {
  return mobius(slope, offset, Rat(0), Rat(1), endpoint, end);
}

BoundaryGerm BoundaryGerm::mobius(const Rat& a, const Rat& b, const Rat& c, const Rat& d,
                                  const Rat& endpoint, End end) {
  mpz_class l = lcm(lcm(a.get_den(), b.get_den()), lcm(c.get_den(), d.get_den()));
  auto scale = [&](const Rat& q) {
    Rat s = q * Rat(l);
    return s.get_num();
  };
  return BoundaryGerm(scale(a), scale(b), scale(c), scale(d), endpoint, end);
}

BoundaryGerm BoundaryGerm::trivial(const Rat& endpoint, End end) {
  return BoundaryGerm(1, 0, 0, 1, endpoint, end);
}

BoundaryGerm BoundaryGerm::compose(const BoundaryGerm& inner) const {
  if (endpoint_ != inner.endpoint_ || end_ != inner.end_) {
    throw IntervalError("germ composition at different endpoints");
  }
  return BoundaryGerm(a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
                      c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_, endpoint_,
                      end_);
}

bool BoundaryGerm::is_identity() const {
  return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1;
}

Rat BoundaryGerm::derivative() const {
  const Rat denom = Rat(c_) * endpoint_ + Rat(d_);
  return (Rat(a_) * Rat(d_) - Rat(b_) * Rat(c_)) / (denom * denom);
}

bool BoundaryGerm::operator==(const BoundaryGerm& o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_ && endpoint_ == o.endpoint_ &&
         end_ == o.end_;
}

std::string BoundaryGerm::str() const {
  return "[[" + a_.get_str() + ", " + b_.get_str() + "], [" + c_.get_str() + ", " +
         d_.get_str() + "]] at " + exact::rat_str(endpoint_);
}

std::string MappingClass::str() const {
  return "left " + left.str() + "; right " + right.str();
}

MappingClass mapping_class(const PLMap& f) {
  if (!f.fixes_endpoints()) {
    throw IntervalError("mapping_class: map must fix both endpoints");
  }
  const Rat l = f.dom().left, r = f.dom().right;
  const Rat ml = f.initial_slope(), mr = f.final_slope();
  return MappingClass{
      BoundaryGerm::affine(ml, l - ml * l, l, BoundaryGerm::End::Left),
      BoundaryGerm::affine(mr, r - mr * r, r, BoundaryGerm::End::Right),
  };
}

MappingClass class_compose(const MappingClass& f, const MappingClass& g) {
  return MappingClass{f.left.compose(g.left), f.right.compose(g.right)};
}

bool class_hom_check(const PLMap& f, const PLMap& g) {
  return mapping_class(pl_compose(f, g)) == class_compose(mapping_class(f), mapping_class(g));
}

MobiusMap::MobiusMap(mpz_class c, mpz_class s) : c_(std::move(c)), s_(std::move(s)) {
  canonicalize();
}

void MobiusMap::canonicalize() {
  if (c_ == 0) throw IntervalError("Mobius boost with zero diagonal");
  mpz_class g = gcd(c_, s_);
  g = abs(g);
  c_ /= g;
  s_ /= g;
  if (c_ < 0) {
    c_ = -c_;
    s_ = -s_;
  }
  if (!(c_ * c_ > s_ * s_)) throw IntervalError("Mobius boost requires |s| < c");
}

Rat MobiusMap::eval(const Rat& t) const {
  return (Rat(c_) * t + Rat(s_)) / (Rat(s_) * t + Rat(c_));
}

MobiusMap MobiusMap::compose(const MobiusMap& inner) const {
  return MobiusMap(c_ * inner.c_ + s_ * inner.s_, c_ * inner.s_ + s_ * inner.c_);
}

Rat MobiusMap::velocity() const {
  Rat v(s_, c_);
  v.canonicalize();
  return v;
}

Rat MobiusMap::derivative_at(const Rat& t) const {
  const Rat denom = Rat(s_) * t + Rat(c_);
  if (denom == 0) throw IntervalError("derivative at a pole");
  return (Rat(c_) * Rat(c_) - Rat(s_) * Rat(s_)) / (denom * denom);
}

MappingClass MobiusMap::mapping_class() const {
  const Rat a(c_), b(s_);
  return MappingClass{
      BoundaryGerm::mobius(a, b, b, a, Rat(-1), BoundaryGerm::End::Left),
      BoundaryGerm::mobius(a, b, b, a, Rat(1), BoundaryGerm::End::Right),
  };
}

std::string MobiusMap::str() const {
  return "[[" + c_.get_str() + ", " + s_.get_str() + "], [" + s_.get_str() + ", " + c_.get_str() +
         "]]";
}

MobiusMap lorentz(const Rat& u) {
  if (!(u < 1 && Rat(-1) < u)) throw IntervalError("boost velocity must satisfy |u| < 1");
  return MobiusMap(u.get_den(), u.get_num());
}

LorentzFlowReport lorentz_flow_check(const Rat& u1, const Rat& u2) {
  LorentzFlowReport r;
  const MobiusMap l1 = lorentz(u1), l2 = lorentz(u2);
  const MobiusMap composite = l1.compose(l2);
  r.composite_velocity = (u1 + u2) / (1 + u1 * u2);
  r.group_law = composite == lorentz(r.composite_velocity);
  r.class_compatible =
      class_compose(l1.mapping_class(), l2.mapping_class()) == composite.mapping_class();
  return r;
}

EmbeddingPi0 pi0_emb(const PLMap& eps0, const PLMap& eps1) {
  if (!eps0.dom().same_extent(eps1.dom()) || !eps0.cod().same_extent(eps1.cod())) {
    throw IntervalError("pi0_emb: embeddings must share domain and codomain");
  }
  const Interval I = eps0.dom();
  const Interval J = eps0.cod();
  EmbeddingPi0 out;
  const bool matched_l = eps0.image_left() == J.left;
  const bool matched_r = eps0.image_right() == J.right;
  if (matched_l != (eps1.image_left() == J.left)) {
    out.reason = "left endpoint-matching patterns differ";
    return out;
  }
  if (matched_r != (eps1.image_right() == J.right)) {
    out.reason = "right endpoint-matching patterns differ";
    return out;
  }
  // At a matched end b is the identity near the endpoint and a is the
  // identity near its preimage, so the boundary germs of eps0 and eps1 must
  // coincide there; the germ is (endpoint value, slope).
  if (matched_l && eps0.initial_slope() != eps1.initial_slope()) {
    out.reason = "left boundary germs differ";
    return out;
  }
  if (matched_r && eps0.final_slope() != eps1.final_slope()) {
    out.reason = "right boundary germs differ";
    return out;
  }

  // Build the witness b with b . eps0 == eps1: it is eps1 . eps0^-1 on the
  // image of eps0, bridged linearly to the identity near unmatched ends.
  std::vector<Rat> xs, ys;
  Rat collar_l(0), collar_r(0);
  if (!matched_l) {
    const Rat mid = (J.left + std::min(eps0.image_left(), eps1.image_left())) / 2;
    xs.push_back(J.left);
    ys.push_back(J.left);
    xs.push_back(mid);
    ys.push_back(mid);
    collar_l = mid - J.left;
  } else {
    const Rat s = std::min(eps0.xs()[1], eps1.xs()[1]);
    collar_l = eps0.eval(s) - J.left;
  }
  const PLMap middle = pl_compose(eps1, pl_section(eps0));
  for (std::size_t i = 0; i < middle.xs().size(); ++i) {
    xs.push_back(middle.xs()[i]);
    ys.push_back(middle.ys()[i]);
  }
  if (!matched_r) {
    const Rat mid = (std::max(eps0.image_right(), eps1.image_right()) + J.right) / 2;
    xs.push_back(mid);
    ys.push_back(mid);
    xs.push_back(J.right);
    ys.push_back(J.right);
    collar_r = J.right - mid;
  } else {
    const Rat s = std::max(eps0.xs()[eps0.xs().size() - 2], eps1.xs()[eps1.xs().size() - 2]);
    collar_r = J.right - eps0.eval(s);
  }
  const Rat quarter = J.length() / 4;
  Rat collar = std::min(std::min(collar_l, collar_r), quarter);
  InteriorDiffeo b(PLMap(J, J, std::move(xs), std::move(ys)), collar);
  InteriorDiffeo a = InteriorDiffeo::identity(I);
  out.witness = require_interval_two_cell(eps0, eps1, a, b, "pi0_emb witness");
  out.equivalent = true;
  return out;
}

}  // namespace twocat::ivl
