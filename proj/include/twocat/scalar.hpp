#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "twocat/errors.hpp"

namespace twocat::exact {

using Rat = mpq_class;

// Rational built from raw numerator/denominator, canonicalized.
Rat rat(long num, long den = 1);
Rat rat_parse(const std::string& text);
std::string rat_str(const Rat& q);

enum class FieldKind { GaussianRational, PrimeField };

// A coefficient field: either Q(i) or F_p for a small prime p.
struct FieldDesc {
  FieldKind kind = FieldKind::GaussianRational;
  std::int64_t modulus = 0;  // prime p when kind == PrimeField, else 0

  bool operator==(const FieldDesc&) const = default;
  std::string str() const;

  static FieldDesc rationals() { return {FieldKind::GaussianRational, 0}; }
  static FieldDesc prime(std::int64_t p);
};

// Exact field element.  Gaussian rationals carry two mpq components; prime
// field elements are a residue plus the modulus.  No floating point anywhere.
class Scalar {
 public:
  Scalar() : v_(Gauss{0, 0}) {}

  static Scalar zero(const FieldDesc& f);
  static Scalar one(const FieldDesc& f);
  static Scalar of_int(long n, const FieldDesc& f);
  static Scalar gauss(Rat re, Rat im = 0);
  static Scalar imaginary_unit() { return gauss(0, 1); }
  static Scalar fp(std::int64_t value, std::int64_t p);

  FieldDesc field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;  // throws NotAUnit on zero
  // Complex conjugate on Q(i); identity on F_p.
  Scalar conj() const;

  // Accessors for the Gaussian case (throw FieldMismatch otherwise).
  const Rat& re() const;
  const Rat& im() const;
  // Residue accessor for the prime-field case.
  std::int64_t residue() const;

  std::string str() const;
  // Accepts what str() produces: "p/q", "p/q+r/s*i", "v mod p".
  static Scalar parse(const std::string& text, const FieldDesc& f);

 private:
  struct Gauss {
    Rat re, im;
    bool operator==(const Gauss&) const = default;
  };
  struct Fp {
    std::int64_t v, p;
    bool operator==(const Fp&) const = default;
  };
  std::variant<Gauss, Fp> v_;

  explicit Scalar(Gauss g) : v_(std::move(g)) {}
  explicit Scalar(Fp f) : v_(f) {}
  void require_same_field(const Scalar& o) const;
};

}  // namespace twocat::exact
