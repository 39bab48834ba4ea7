#pragma once

#include <cstddef>
#include <vector>

#include "twocat/scalar.hpp"

namespace twocat::exact {

// Dense row-major matrix over a fixed Scalar field.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), field_(FieldDesc::rationals()) {}
  Matrix(std::size_t rows, std::size_t cols, const FieldDesc& field);

  static Matrix identity(std::size_t n, const FieldDesc& field);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldDesc& field() const { return field_; }

  Scalar& at(std::size_t i, std::size_t j);
  const Scalar& at(std::size_t i, std::size_t j) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& c) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  // Conjugate transpose (entrywise conj() then transpose).
  Matrix dagger() const;
  Scalar trace() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_scalar_multiple_of_identity(Scalar* lambda_out = nullptr) const;

  // Kronecker product, used to assemble tensor-factor operators.
  static Matrix kron(const Matrix& a, const Matrix& b);

  // Flatten row-major into a coordinate vector.
  std::vector<Scalar> flatten() const;
  static Matrix unflatten(const std::vector<Scalar>& v, std::size_t rows, std::size_t cols,
                          const FieldDesc& field);

  std::string str() const;

 private:
  std::size_t rows_, cols_;
  FieldDesc field_;
  std::vector<Scalar> e_;

  void require_same_shape(const Matrix& o) const;
};

}  // namespace twocat::exact
