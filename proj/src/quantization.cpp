#include "twocat/quantization.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "twocat/errors.hpp"
#include "twocat/linalg.hpp"

namespace twocat::ferm {

namespace {

const exact::FieldDesc kQi = exact::FieldDesc::rationals();

Scalar qi(long n) { return Scalar::of_int(n, kQi); }

std::string site_str(const SiteSet& s) {
  std::ostringstream os;
  os << "[" << exact::rat_str(s.interval.left) << "," << exact::rat_str(s.interval.right) << ";"
     << s.resolution << "]";
  return os.str();
}

}  // namespace

SiteSet SiteSet::make(const Interval& I, long resolution) {
  if (resolution < 2) {
    throw SiteError("subdivision resolution must be at least 2, got " +
                    std::to_string(resolution));
  }
  if (resolution - 1 > 6) {
    throw SiteError("site count " + std::to_string(resolution - 1) +
                    " exceeds the exact-arithmetic cap of 6");
  }
  SiteSet s{I, resolution, {}};
  const Rat mesh = I.length() / resolution;
  for (long k = 1; k < resolution; ++k) {
    Rat site = I.left + mesh * k;
    s.sites.push_back(std::move(site));
  }
  return s;
}

std::optional<std::size_t> SiteSet::index_of(const Rat& value) const {
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] == value) return k;
  }
  return std::nullopt;
}

int monomial_sign(std::uint32_t s, std::uint32_t t) {
  // gamma_a gamma_b = -gamma_b gamma_a for a != b and gamma_a^2 = 1, so
  // sorting the concatenated word costs one sign per crossing of an
  // s-generator past a strictly smaller t-generator; equal pairs then
  // cancel without further signs.
  int parity = 0;
  for (std::uint32_t rest = t; rest != 0; rest &= rest - 1) {
    const unsigned b = static_cast<unsigned>(std::countr_zero(rest));
    parity ^= std::popcount(s >> (b + 1)) & 1;
  }
  return parity ? -1 : 1;
}

CarAlgebra CarAlgebra::build(const SiteSet& sites) {
  const std::size_t n = sites.count();
  if (n == 0) throw SiteError("quantization needs at least one interior site");
  if (n > 5) {
    throw SiteError("dense exact algebra over " + std::to_string(n) +
                    " sites (dimension " + std::to_string(1u << (2 * n)) +
                    ") exceeds the memory budget; use at most 5 sites");
  }

  const Scalar one = qi(1);
  const Scalar im = Scalar::imaginary_unit();
  Matrix I2 = Matrix::identity(2, kQi);
  Matrix X(2, 2, kQi);
  X.at(0, 1) = one;
  X.at(1, 0) = one;
  Matrix Y(2, 2, kQi);
  Y.at(0, 1) = -im;
  Y.at(1, 0) = im;
  Matrix Z = Matrix::identity(2, kQi);
  Z.at(1, 1) = -one;

  CarAlgebra car(sites);
  car.gammas_.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (int half = 0; half < 2; ++half) {
      Matrix m = Matrix::identity(1, kQi);
      for (std::size_t site = 0; site < n; ++site) {
        const Matrix* factor = &I2;
        if (site < k) {
          factor = &Z;
        } else if (site == k) {
          factor = half == 0 ? &X : &Y;
        }
        m = Matrix::kron(m, *factor);
      }
      car.gammas_.push_back(std::move(m));
    }
  }

  const std::size_t ambient = std::size_t(1) << n;
  const Matrix two_id = Matrix::identity(ambient, kQi).scaled(qi(2));
  for (std::size_t a = 0; a < 2 * n; ++a) {
    for (std::size_t b = a; b < 2 * n; ++b) {
      const Matrix anti = car.gammas_[a] * car.gammas_[b] + car.gammas_[b] * car.gammas_[a];
      const bool ok = a == b ? anti == two_id : anti.is_zero();
      if (!ok) {
        throw CertificationError("Clifford relation failed for generator pair (" +
                                 std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }

  // Monomial basis in mask order; the mask-0 slot is the identity and
  // gamma_mask factors off its lowest generator without a sign.
  const std::size_t dim = std::size_t(1) << (2 * n);
  std::vector<Matrix> basis;
  basis.reserve(dim);
  basis.push_back(Matrix::identity(ambient, kQi));
  for (std::size_t mask = 1; mask < dim; ++mask) {
    const unsigned k = static_cast<unsigned>(std::countr_zero(mask));
    basis.push_back(car.gammas_[k] * basis[mask ^ (std::size_t(1) << k)]);
  }

  auto rule = [](std::size_t i, std::size_t j) {
    return std::vector<alg::Algebra::SparseTerm>{
        {i ^ j,
         qi(monomial_sign(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)))}};
  };
  // Spot-check the sign rule against honest matrix products; the monomial
  // tests cover a full sweep at small site counts.
  for (std::size_t i = 0; i < dim; i += std::max<std::size_t>(1, dim / 8 + 3)) {
    for (std::size_t j = dim / 2; j < dim; j += std::max<std::size_t>(1, dim / 8 + 5)) {
      const auto terms = rule(i, j);
      if (!(basis[i] * basis[j] == basis[terms[0].index].scaled(terms[0].coeff))) {
        throw CertificationError("Majorana sign rule disagrees with a matrix product");
      }
    }
  }
  car.algebra_ = alg::Algebra::with_basis("Car" + site_str(sites), basis, rule);
  return car;
}

const CarAlgebra& CarAlgebra::get(const SiteSet& sites) {
  using Key = std::tuple<std::string, std::string, long>;
  static std::mutex mu;
  static std::map<Key, CarAlgebra> cache;
  const Key key{exact::rat_str(sites.interval.left), exact::rat_str(sites.interval.right),
                sites.resolution};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build(sites)).first;
  return it->second;
}

alg::AlgebraElement CarAlgebra::gamma_element(std::size_t k) const {
  if (k >= gen_count()) throw ShapeError("gamma index out of range");
  return monomial_element(std::uint32_t(1) << k);
}

alg::AlgebraElement CarAlgebra::monomial_element(std::uint32_t mask) const {
  if (mask >= algebra_->dim()) throw ShapeError("monomial mask out of range");
  return algebra_->basis_element(mask);
}

SitePerm SitePerm::identity(std::size_t n) {
  SitePerm p;
  p.images.resize(n);
  std::iota(p.images.begin(), p.images.end(), std::size_t{0});
  return p;
}

SitePerm SitePerm::transposition(std::size_t n, std::size_t i, std::size_t j) {
  SitePerm p = identity(n);
  std::swap(p.images.at(i), p.images.at(j));
  return p;
}

SitePerm SitePerm::of(std::vector<std::size_t> images) {
  std::vector<bool> seen(images.size(), false);
  for (std::size_t v : images) {
    if (v >= images.size() || seen[v]) throw SiteError("not a permutation of site indices");
    seen[v] = true;
  }
  SitePerm p;
  p.images = std::move(images);
  return p;
}

SitePerm SitePerm::inverse() const {
  SitePerm p = identity(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) p.images[images[k]] = k;
  return p;
}

SitePerm SitePerm::compose(const SitePerm& inner) const {
  if (images.size() != inner.images.size()) throw SiteError("site permutation size mismatch");
  SitePerm p = identity(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) p.images[k] = images[inner.images[k]];
  return p;
}

bool SitePerm::is_identity() const {
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (images[k] != k) return false;
  }
  return true;
}

std::string SitePerm::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (k) os << " ";
    os << images[k];
  }
  os << ")";
  return os.str();
}

SitePerm SitePerm::from_interior_diffeo(const InteriorDiffeo& c, const SiteSet& sites) {
  if (!c.map().dom().same_extent(sites.interval)) {
    throw SiteError("diffeomorphism domain does not match the site lattice interval");
  }
  std::vector<std::size_t> images;
  images.reserve(sites.count());
  for (const Rat& s : sites.sites) {
    const Rat v = c.map().eval(s);
    const auto idx = sites.index_of(v);
    if (!idx) {
      throw SiteError("interior diffeomorphism is not site-compatible at t = " +
                      exact::rat_str(s));
    }
    images.push_back(*idx);
  }
  return SitePerm::of(std::move(images));
}

SiteEmbedding SiteEmbedding::make(PLMap map, const SiteSet& src, const SiteSet& dst) {
  if (!map.dom().same_extent(src.interval) || !map.cod().same_extent(dst.interval)) {
    throw SiteError("embedding endpoints do not match the site lattice intervals");
  }
  std::vector<std::size_t> image;
  image.reserve(src.count());
  for (const Rat& s : src.sites) {
    const Rat v = map.eval(s);
    const auto idx = dst.index_of(v);
    if (!idx) {
      throw SiteError("embedding is not site-compatible at t = " + exact::rat_str(s));
    }
    image.push_back(*idx);
  }
  // Strict monotonicity of the map makes the index list strictly increasing.
  for (std::size_t k = 1; k < image.size(); ++k) {
    if (image[k] <= image[k - 1]) throw SiteError("site image is not increasing");
  }
  return SiteEmbedding{src, dst, std::move(map), std::move(image)};
}

SiteEmbedding SiteEmbedding::through_sites(const SiteSet& src, const SiteSet& dst,
                                           std::vector<std::size_t> site_image) {
  if (site_image.size() != src.count()) {
    throw SiteError("site image list does not match the source site count");
  }
  for (std::size_t k = 0; k < site_image.size(); ++k) {
    if (site_image[k] >= dst.count()) throw SiteError("site image index out of range");
    if (k > 0 && site_image[k] <= site_image[k - 1]) {
      throw SiteError("site image list must be strictly increasing");
    }
  }
  std::vector<Rat> xs{src.interval.left};
  std::vector<Rat> ys{(dst.interval.left + dst.sites[site_image.front()]) / 2};
  for (std::size_t k = 0; k < site_image.size(); ++k) {
    xs.push_back(src.sites[k]);
    ys.push_back(dst.sites[site_image[k]]);
  }
  xs.push_back(src.interval.right);
  {
    Rat hi = (dst.sites[site_image.back()] + dst.interval.right) / 2;
    ys.push_back(std::move(hi));
  }
  PLMap map(src.interval, dst.interval, std::move(xs), std::move(ys));
  return make(std::move(map), src, dst);
}

CarAlgebra quantize(const Interval& I, long resolution) {
  return CarAlgebra::build(SiteSet::make(I, resolution));
}

alg::AlgHomRef induced_hom(const SiteEmbedding& e, const CarAlgebra& src, const CarAlgebra& dst) {
  if (!(e.src == src.sites()) || !(e.dst == dst.sites())) {
    throw ParentMismatch("induced_hom: embedding does not connect these lattice algebras");
  }
  // Generator relabeling; order-preserving, so monomials map without signs.
  std::vector<std::uint32_t> gen_map(src.gen_count());
  for (std::size_t k = 0; k < src.n_sites(); ++k) {
    gen_map[2 * k] = static_cast<std::uint32_t>(2 * e.site_image[k]);
    gen_map[2 * k + 1] = static_cast<std::uint32_t>(2 * e.site_image[k] + 1);
  }
  const std::size_t dim = src.algebra()->dim();
  std::vector<alg::AlgebraElement> images;
  images.reserve(dim);
  for (std::size_t mask = 0; mask < dim; ++mask) {
    std::uint32_t out = 0;
    for (std::uint32_t rest = static_cast<std::uint32_t>(mask); rest != 0; rest &= rest - 1) {
      out |= std::uint32_t(1) << gen_map[static_cast<unsigned>(std::countr_zero(rest))];
    }
    images.push_back(dst.monomial_element(out));
  }
  return alg::AlgHom::make("Phi" + site_str(e.src) + "->" + site_str(e.dst), src.algebra(),
                           dst.algebra(), std::move(images));
}

alg::AlgHomRef CarAut::to_hom(const CarAlgebra& a, const std::string& name) const {
  if (gen_images.size() != a.gen_count()) {
    throw ShapeError("automorphism data must cover every Majorana generator");
  }
  const std::size_t dim = a.algebra()->dim();
  std::vector<alg::AlgebraElement> images;
  images.reserve(dim);
  for (std::size_t mask = 0; mask < dim; ++mask) {
    alg::AlgebraElement img = a.algebra()->one();
    for (std::uint32_t rest = static_cast<std::uint32_t>(mask); rest != 0; rest &= rest - 1) {
      img = img * gen_images[static_cast<unsigned>(std::countr_zero(rest))];
    }
    images.push_back(std::move(img));
  }
  return alg::AlgHom::make(name, a.algebra(), a.algebra(), std::move(images));
}

CarAut bogoliubov(const SitePerm& p, const CarAlgebra& a) {
  if (p.size() != a.n_sites()) throw SiteError("permutation size does not match the lattice");
  CarAut aut;
  aut.gen_images.reserve(a.gen_count());
  for (std::size_t k = 0; k < a.n_sites(); ++k) {
    aut.gen_images.push_back(a.gamma_element(2 * p.apply(k)));
    aut.gen_images.push_back(a.gamma_element(2 * p.apply(k) + 1));
  }
  return aut;
}

namespace {

// Union-find over monomial coordinates carrying a sign relative to the
// root, for the permutation-automorphism intertwiner system.
class SignedComponents {
 public:
  explicit SignedComponents(std::size_t n) : parent_(n), sign_(n, 1), alive_(n, true) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    if (parent_[x] == x) return {x, 1};
    auto [root, s] = find(parent_[x]);
    parent_[x] = root;
    sign_[x] *= s;
    return {root, sign_[x]};
  }

  void relate(std::size_t a, std::size_t b, int rel) {
    // Impose u_a == rel * u_b.
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sa != rel * sb) alive_[ra] = false;
      return;
    }
    parent_[ra] = rb;
    sign_[ra] = sa * rel * sb;
    alive_[rb] = alive_[rb] && alive_[ra];
  }

  void kill(std::size_t a) { alive_[find(a).first] = false; }

  std::vector<std::size_t> live_roots() {
    std::vector<std::size_t> roots;
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      auto [r, s] = find(x);
      (void)s;
      if (r == x && alive_[r]) roots.push_back(r);
    }
    return roots;
  }

  int sign_of(std::size_t x) { return find(x).second; }
  std::size_t root_of(std::size_t x) { return find(x).first; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> sign_;
  std::vector<bool> alive_;
};

// Extracts (generator index, sign) when an element is a single signed
// Majorana generator.
std::optional<std::pair<unsigned, int>> signed_generator(const alg::AlgebraElement& x) {
  std::optional<std::pair<unsigned, int>> out;
  const auto& c = x.coords();
  for (std::size_t mask = 0; mask < c.size(); ++mask) {
    if (c[mask].is_zero()) continue;
    if (out || std::popcount(mask) != 1) return std::nullopt;
    int sign;
    if (c[mask] == qi(1)) {
      sign = 1;
    } else if (c[mask] == qi(-1)) {
      sign = -1;
    } else {
      return std::nullopt;
    }
    out = {static_cast<unsigned>(std::countr_zero(mask)), sign};
  }
  return out;
}

InnerWitness certify_witness(alg::AlgebraElement u, const CarAut& alpha, const CarAlgebra& a) {
  // Scale the first nonzero monomial coordinate to 1.
  Scalar lead = Scalar::zero(kQi);
  for (const Scalar& c : u.coords()) {
    if (!c.is_zero()) {
      lead = c;
      break;
    }
  }
  if (lead.is_zero()) throw CertificationError("intertwiner solution vanished");
  u = u.scaled(lead.inverse());
  auto unit = alg::Unit::of(u);
  if (!unit) throw CertificationError("intertwiner element is singular");
  for (std::size_t k = 0; k < a.gen_count(); ++k) {
    const alg::AlgebraElement lhs = alg::inner_aut(*unit, a.gamma_element(k));
    if (!(lhs - alpha.gen_images[k]).is_zero()) {
      throw CertificationError("conjugation by the intertwiner misses generator " +
                               std::to_string(k));
    }
  }
  return InnerWitness{std::move(*unit)};
}

}  // namespace

InnerWitness inner_witness_dense(const CarAut& alpha, const CarAlgebra& a) {
  if (alpha.gen_images.size() != a.gen_count()) {
    throw ShapeError("automorphism data must cover every Majorana generator");
  }
  const std::size_t dim = a.algebra()->dim();
  const Scalar zero = Scalar::zero(kQi);
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(a.gen_count() * dim);
  for (std::size_t k = 0; k < a.gen_count(); ++k) {
    const std::uint32_t gk = std::uint32_t(1) << k;
    const auto& img = alpha.gen_images[k].coords();
    for (std::uint32_t r = 0; r < dim; ++r) {
      // Coordinate r of gamma_k u - u alpha(gamma_k).
      std::vector<Scalar> row(dim, zero);
      const std::uint32_t t_left = gk ^ r;
      row[t_left] = row[t_left] + qi(monomial_sign(gk, t_left));
      for (std::uint32_t s = 0; s < dim; ++s) {
        if (img[s].is_zero()) continue;
        const std::uint32_t t_right = r ^ s;
        row[t_right] = row[t_right] - img[s] * qi(monomial_sign(t_right, s));
      }
      rows.push_back(std::move(row));
    }
  }
  const auto kernel = exact::solve_linear(rows, dim, kQi);
  if (kernel.empty()) {
    throw CertificationError("no nonzero intertwiner; the data is not an automorphism");
  }
  if (kernel.size() > 1) {
    throw CertificationError("intertwiner space has dimension " +
                             std::to_string(kernel.size()) + "; expected 1");
  }
  return certify_witness(a.algebra()->from_coords(kernel[0]), alpha, a);
}

InnerWitness inner_witness(const CarAut& alpha, const CarAlgebra& a) {
  if (alpha.gen_images.size() != a.gen_count()) {
    throw ShapeError("automorphism data must cover every Majorana generator");
  }
  // Fast path: generators map to signed generators, so the intertwiner
  // equations gamma_k u = u alpha(gamma_k) relate coordinate pairs with a
  // sign and the kernel is spanned by one signed component.
  std::vector<unsigned> pi(a.gen_count());
  std::vector<int> gen_sign(a.gen_count());
  bool fast = true;
  for (std::size_t k = 0; k < a.gen_count() && fast; ++k) {
    const auto sg = signed_generator(alpha.gen_images[k]);
    if (!sg) {
      fast = false;
    } else {
      pi[k] = sg->first;
      gen_sign[k] = sg->second;
    }
  }
  if (!fast) return inner_witness_dense(alpha, a);

  const std::size_t dim = a.algebra()->dim();
  SignedComponents comp(dim);
  for (std::size_t k = 0; k < a.gen_count(); ++k) {
    const std::uint32_t gk = std::uint32_t(1) << k;
    const std::uint32_t gp = std::uint32_t(1) << pi[k];
    for (std::uint32_t r = 0; r < dim; ++r) {
      // sign(gk, r^gk) u_{r^gk} == gen_sign sign(r^gp, gp) u_{r^gp}
      const std::uint32_t left = r ^ gk;
      const std::uint32_t right = r ^ gp;
      const int rel = monomial_sign(gk, left) * monomial_sign(right, gp) * gen_sign[k];
      if (left == right) {
        if (rel != 1) comp.kill(left);
      } else {
        comp.relate(left, right, rel);
      }
    }
  }
  const auto roots = comp.live_roots();
  if (roots.empty()) {
    throw CertificationError("no nonzero intertwiner; the data is not an automorphism");
  }
  if (roots.size() > 1) {
    throw CertificationError("intertwiner space has dimension " + std::to_string(roots.size()) +
                             "; expected 1");
  }
  std::vector<Scalar> coords(dim, Scalar::zero(kQi));
  for (std::size_t mask = 0; mask < dim; ++mask) {
    if (comp.root_of(mask) == roots[0]) coords[mask] = qi(comp.sign_of(mask));
  }
  return certify_witness(a.algebra()->from_coords(std::move(coords)), alpha, a);
}

AntihomReport antihom_check(const SitePerm& p0, const SitePerm& p1, const CarAlgebra& a) {
  AntihomReport rep;
  const alg::Unit w0 = inner_witness(bogoliubov(p0, a), a).unit;
  const alg::Unit w1 = inner_witness(bogoliubov(p1, a), a).unit;
  const alg::Unit wc = inner_witness(bogoliubov(p0.compose(p1), a), a).unit;
  // sigma over units is order-reversing: sigma_{w1 w0} = sigma_{w0} .
  // sigma_{w1} realizes p0 . p1, so the reversed product is the composite
  // witness up to the center.
  const alg::AlgebraElement reversed = w1.elem() * w0.elem();
  Scalar lam;
  rep.reversed_scalar = (reversed * wc.inv()).is_scalar(&lam);
  if (rep.reversed_scalar) {
    rep.defect = lam;
    rep.reversed_exact = lam.is_one();
  }
  rep.same_order_scalar = (w0.elem() * w1.elem() * wc.inv()).is_scalar(nullptr);
  rep.perms_commute = p0.compose(p1) == p1.compose(p0);
  return rep;
}

std::vector<AntihomTableEntry> antihom_table(const std::vector<SitePerm>& gens,
                                             const CarAlgebra& a) {
  std::vector<AntihomTableEntry> table;
  table.reserve(gens.size() * gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const AntihomReport r = antihom_check(gens[i], gens[j], a);
      if (!r.reversed_scalar) {
        throw CertificationError("witness products left the center on a generator pair");
      }
      table.push_back({i, j, r.defect, r.reversed_scalar, r.same_order_scalar});
    }
  }
  return table;
}

DiscreteCell::DiscreteCell(SiteEmbedding e0_in, SiteEmbedding e1_in, SitePerm p_in, SitePerm q_in)
    : e0(std::move(e0_in)), e1(std::move(e1_in)), p(std::move(p_in)), q(std::move(q_in)) {
  if (!(e0.src == e1.src) || !(e0.dst == e1.dst)) {
    throw ParentMismatch("discrete cell: embeddings do not share lattices");
  }
  if (p.size() != e0.src.count() || q.size() != e0.dst.count()) {
    throw SiteError("discrete cell: permutation sizes do not match the lattices");
  }
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (q.apply(e0.site_image[s]) != e1.site_image[p.apply(s)]) {
      throw CertificationError("discrete cell condition fails at site " + std::to_string(s));
    }
  }
}

namespace {

// Pushforward of a source-lattice permutation along an embedding: acts
// through the site image and fixes every site outside it.
SitePerm transport_site_perm(const SitePerm& x, const SiteEmbedding& e) {
  SitePerm out = SitePerm::identity(e.dst.count());
  for (std::size_t s = 0; s < e.src.count(); ++s) {
    out.images[e.site_image[s]] = e.site_image[x.apply(s)];
  }
  return SitePerm::of(std::move(out.images));
}

SiteEmbedding compose_embedding(const SiteEmbedding& outer, const SiteEmbedding& inner) {
  return SiteEmbedding::make(ivl::pl_compose(outer.map, inner.map), inner.src, outer.dst);
}

}  // namespace

DiscreteCell discrete_hcompose(const DiscreteCell& f, const DiscreteCell& g) {
  if (!(f.e0.dst == g.e0.src)) {
    throw ParentMismatch("discrete hcompose: middle lattices differ");
  }
  const SitePerm mid = g.p.inverse().compose(f.q);
  const SitePerm q_comp = g.q.compose(transport_site_perm(mid, g.e0));
  return DiscreteCell(compose_embedding(g.e0, f.e0), compose_embedding(g.e1, f.e1), f.p, q_comp);
}

TwoFunctorReport two_functor_check(const DiscreteCell& f, const DiscreteCell& g) {
  TwoFunctorReport rep;
  const CarAlgebra& ai = CarAlgebra::get(f.e0.src);
  const CarAlgebra& aj = CarAlgebra::get(f.e0.dst);
  const CarAlgebra& ak = CarAlgebra::get(g.e0.dst);

  const alg::AlgHomRef phi0 = induced_hom(f.e0, ai, aj);
  const alg::AlgHomRef phi1 = induced_hom(f.e1, ai, aj);
  const alg::AlgHomRef psi0 = induced_hom(g.e0, aj, ak);
  const alg::AlgHomRef psi1 = induced_hom(g.e1, aj, ak);

  const alg::Unit wp = inner_witness(bogoliubov(f.p, ai), ai).unit;
  const alg::Unit wb0 = inner_witness(bogoliubov(f.q, aj), aj).unit;
  const alg::Unit wb1 = inner_witness(bogoliubov(g.p, aj), aj).unit;
  const alg::Unit wc = inner_witness(bogoliubov(g.q, ak), ak).unit;

  const grpd::CellCheck cf = grpd::check_two_cell(phi0, phi1, wp, wb0);
  const grpd::CellCheck cg = grpd::check_two_cell(psi0, psi1, wb1, wc);
  rep.cells_certified = cf.ok() && cg.ok();
  if (!rep.cells_certified) return rep;

  const grpd::TwoCell comp = grpd::hcompose(*cf.cell, *cg.cell);
  const DiscreteCell dcomp = discrete_hcompose(f, g);
  rep.composite_certified = true;

  const alg::Unit w = inner_witness(bogoliubov(dcomp.q, ak), ak).unit;
  Scalar lam;
  rep.matches_witness_up_to_scalar = (comp.b().elem() * w.inv()).is_scalar(&lam);
  if (rep.matches_witness_up_to_scalar) {
    rep.scalar = lam;
    rep.on_the_nose = lam.is_one();
  }

  // Displayed forms of the composite b-component, rebuilt from scratch.
  const alg::AlgebraElement h = wb1.inv() * wb0.elem();
  const alg::AlgebraElement h_ex = wb0.elem() * wb1.inv();
  const alg::AlgebraElement f1 = wc.elem() * psi1->apply(h);
  const alg::AlgebraElement f2 = psi0->apply(h) * wc.elem();
  const alg::AlgebraElement f3 = psi0->apply(h_ex) * wc.elem();
  if (!(comp.b().elem() - f1).is_zero()) {
    throw CertificationError("composite b-component disagrees with its defining formula");
  }
  rep.exchange_form_exact = (f1 - f3).is_zero();
  rep.naive_form_exact = (f1 - f2).is_zero();
  rep.b_components_commute = (h - h_ex).is_zero();
  return rep;
}

ModularData::ModularData(Matrix rho_in) : rho(std::move(rho_in)), rho_inv() {
  if (rho.rows() != rho.cols()) throw ShapeError("state matrix must be square");
  if (!(rho.field() == kQi)) throw FieldMismatch("state matrix must live over Q(i)");
  if (!(rho.dagger() == rho)) throw CertificationError("state matrix is not Hermitian");
  // Positive definiteness via leading principal minors; Hermitian minors
  // are real, so only the real part needs a sign check.
  for (std::size_t k = 1; k <= rho.rows(); ++k) {
    Matrix corner(k, k, kQi);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) corner.at(i, j) = rho.at(i, j);
    }
    const Scalar det = exact::determinant(corner);
    if (!(det.im() == 0) || det.re() <= 0) {
      throw CertificationError("state matrix is not positive definite");
    }
  }
  if (!(rho.trace() == qi(1))) throw CertificationError("state matrix must have trace 1");
  const auto inv = exact::invert(rho);
  if (!inv) throw CertificationError("state matrix is singular");
  rho_inv = *inv;
}

Matrix modular_continuation(const ModularData& d, const Matrix& x) {
  if (x.rows() != d.rho.rows() || x.cols() != d.rho.cols()) {
    throw ShapeError("observable shape does not match the state");
  }
  return d.rho * x * d.rho_inv;
}

KmsReport kms_check(const ModularData& d, const Matrix& x, const Matrix& y) {
  KmsReport rep;
  const Matrix flowed = modular_continuation(d, y);
  rep.lhs = (d.rho * x * flowed).trace();
  rep.rhs = (d.rho * y * x).trace();
  rep.holds = rep.lhs == rep.rhs;
  const Matrix opposite = d.rho_inv * y * d.rho;
  rep.opposite_lhs = (d.rho * x * opposite).trace();
  rep.opposite_holds = rep.opposite_lhs == rep.rhs;
  return rep;
}

}  // namespace twocat::ferm
