#include "twocat/scalar.hpp"

#include <cctype>

namespace twocat::exact {

namespace {

bool is_small_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
  v %= p;
  if (v < 0) v += p;
  return v;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  b = mod_norm(b, p);
  while (e > 0) {
    if (e & 1) r = mod_mul(r, b, p);
    b = mod_mul(b, b, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

Rat rat(long num, long den) {
  if (den == 0) throw NotAUnit("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat rat_parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational", 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw ParseError("unexpected character in rational", i);
    }
  }
  // GMP's set_str takes a leading '-' but not an explicit '+'.
  const std::string body = text[0] == '+' ? text.substr(1) : text;
  Rat q;
  if (body.empty() || q.set_str(body, 10) != 0) throw ParseError("malformed rational", 0);
  if (q.get_den() == 0) throw ParseError("zero denominator", 0);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  return q.get_str();
}

FieldDesc FieldDesc::prime(std::int64_t p) {
  if (!is_small_prime(p)) throw FieldMismatch("modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::int64_t{1} << 31)) throw FieldMismatch("modulus too large");
  return {FieldKind::PrimeField, p};
}

std::string FieldDesc::str() const {
  return kind == FieldKind::GaussianRational ? "Q(i)" : "F_" + std::to_string(modulus);
}

Scalar Scalar::zero(const FieldDesc& f) {
  return f.kind == FieldKind::GaussianRational ? gauss(0, 0) : fp(0, f.modulus);
}

Scalar Scalar::one(const FieldDesc& f) {
  return f.kind == FieldKind::GaussianRational ? gauss(1, 0) : fp(1, f.modulus);
}

Scalar Scalar::of_int(long n, const FieldDesc& f) {
  return f.kind == FieldKind::GaussianRational ? gauss(Rat(n), 0) : fp(n, f.modulus);
}

Scalar Scalar::gauss(Rat re, Rat im) {
  return Scalar(Gauss{std::move(re), std::move(im)});
}

Scalar Scalar::fp(std::int64_t value, std::int64_t p) {
  FieldDesc f = FieldDesc::prime(p);  // validates p
  return Scalar(Fp{mod_norm(value, f.modulus), f.modulus});
}

FieldDesc Scalar::field() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) {
    (void)g;
    return FieldDesc::rationals();
  }
  return {FieldKind::PrimeField, std::get<Fp>(v_).p};
}

bool Scalar::is_zero() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) return g->re == 0 && g->im == 0;
  return std::get<Fp>(v_).v == 0;
}

bool Scalar::is_one() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) return g->re == 1 && g->im == 0;
  return std::get<Fp>(v_).v == 1 % std::get<Fp>(v_).p;
}

void Scalar::require_same_field(const Scalar& o) const {
  if (!(field() == o.field())) {
    throw FieldMismatch("scalar fields differ: " + field().str() + " vs " + o.field().str());
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(o);
  if (const auto* g = std::get_if<Gauss>(&v_)) {
    const auto& h = std::get<Gauss>(o.v_);
    Rat re = g->re + h.re;
    Rat im = g->im + h.im;
    return gauss(std::move(re), std::move(im));
  }
  const auto& a = std::get<Fp>(v_);
  const auto& b = std::get<Fp>(o.v_);
  return Scalar(Fp{mod_norm(a.v + b.v, a.p), a.p});
}

Scalar Scalar::operator-(const Scalar& o) const {
  return *this + (-o);
}

Scalar Scalar::operator-() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) {
    Rat re = -g->re;
    Rat im = -g->im;
    return gauss(std::move(re), std::move(im));
  }
  const auto& a = std::get<Fp>(v_);
  return Scalar(Fp{mod_norm(-a.v, a.p), a.p});
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(o);
  if (const auto* g = std::get_if<Gauss>(&v_)) {
    const auto& h = std::get<Gauss>(o.v_);
    Rat re = g->re * h.re - g->im * h.im;
    Rat im = g->re * h.im + g->im * h.re;
    return gauss(std::move(re), std::move(im));
  }
  const auto& a = std::get<Fp>(v_);
  const auto& b = std::get<Fp>(o.v_);
  return Scalar(Fp{mod_mul(a.v, b.v, a.p), a.p});
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field() == o.field())) return false;
  return v_ == o.v_;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw NotAUnit("inverse of zero");
  if (const auto* g = std::get_if<Gauss>(&v_)) {
    Rat n = g->re * g->re + g->im * g->im;  // > 0 for nonzero Gaussian rationals
    Rat re = g->re / n;
    Rat im = -g->im / n;
    return gauss(std::move(re), std::move(im));
  }
  const auto& a = std::get<Fp>(v_);
  return Scalar(Fp{mod_pow(a.v, a.p - 2, a.p), a.p});
}

Scalar Scalar::conj() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) {
    Rat im = -g->im;
    return gauss(g->re, std::move(im));
  }
  return *this;
}

const Rat& Scalar::re() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) return g->re;
  throw FieldMismatch("re() on prime-field scalar");
}

const Rat& Scalar::im() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) return g->im;
  throw FieldMismatch("im() on prime-field scalar");
}

std::int64_t Scalar::residue() const {
  if (const auto* f = std::get_if<Fp>(&v_)) return f->v;
  throw FieldMismatch("residue() on Gaussian scalar");
}

std::string Scalar::str() const {
  if (const auto* g = std::get_if<Gauss>(&v_)) {
    if (g->im == 0) return rat_str(g->re);
    std::string im_part = rat_str(abs(g->im)) + "*i";
    std::string sign = g->im < 0 ? "-" : "+";
    if (g->re == 0) return (g->im < 0 ? "-" : "") + im_part;
    return rat_str(g->re) + sign + im_part;
  }
  const auto& a = std::get<Fp>(v_);
  return std::to_string(a.v) + " mod " + std::to_string(a.p);
}

Scalar Scalar::parse(const std::string& text, const FieldDesc& f) {
  if (f.kind == FieldKind::PrimeField) {
    auto pos = text.find(" mod ");
    std::string head = pos == std::string::npos ? text : text.substr(0, pos);
    if (pos != std::string::npos) {
      std::int64_t p = 0;
      try {
        p = std::stoll(text.substr(pos + 5));
      } catch (const std::exception&) {
        throw ParseError("malformed modulus", pos + 5);
      }
      if (p != f.modulus) throw FieldMismatch("modulus mismatch in \"" + text + "\"");
    }
    try {
      return fp(std::stoll(head), f.modulus);
    } catch (const std::exception&) {
      throw ParseError("malformed residue", 0);
    }
  }
  // Gaussian: [rational][(+|-)rational*i] or just "[rational]*i" forms.
  std::string s = text;
  if (s.empty()) throw ParseError("empty scalar", 0);
  auto istar = s.find("*i");
  if (istar == std::string::npos) {
    if (!s.empty() && s.back() == 'i') {
      // bare "i", "-i", "3i" style
      std::string head = s.substr(0, s.size() - 1);
      if (head.empty() || head == "+") return gauss(0, 1);
      if (head == "-") return gauss(0, -1);
      return gauss(0, rat_parse(head));
    }
    return gauss(rat_parse(s), 0);
  }
  // Split at the sign that starts the imaginary part.  Walk back from "*i"
  // past the rational to the preceding '+'/'-' (if any).
  std::size_t split = std::string::npos;
  for (std::size_t i = istar; i-- > 0;) {
    char c = s[i];
    if (c == '+' || c == '-') {
      // A sign directly after '/' or at position 0 belongs to the imaginary
      // rational itself only if nothing precedes it.
      if (i == 0) {
        split = 0;
        break;
      }
      char prev = s[i - 1];
      if (prev == '/' ) continue;
      split = i;
      break;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') {
      throw ParseError("unexpected character in scalar", i);
    }
  }
  std::string re_part = split == std::string::npos || split == 0 ? "" : s.substr(0, split);
  std::string im_part = s.substr(split == std::string::npos ? 0 : split, istar - (split == std::string::npos ? 0 : split));
  Rat re = re_part.empty() ? Rat(0) : rat_parse(re_part);
  Rat im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = rat_parse(im_part);
  }
  return gauss(std::move(re), std::move(im));
}

}  // namespace twocat::exact
