#include "twocat/matrix.hpp"

#include <sstream>

namespace twocat::exact {

Matrix::Matrix(std::size_t rows, std::size_t cols, const FieldDesc& field)
    : rows_(rows), cols_(cols), field_(field), e_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(std::size_t n, const FieldDesc& field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty() || rows[0].empty()) throw ShapeError("from_rows: empty matrix");
  Matrix m(rows.size(), rows[0].size(), rows[0][0].field());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw ShapeError("from_rows: ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (!(rows[i][j].field() == m.field_)) throw FieldMismatch("from_rows: mixed fields");
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

Scalar& Matrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw ShapeError("index out of range");
  return e_[i * cols_ + j];
}

const Scalar& Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw ShapeError("index out of range");
  return e_[i * cols_ + j];
}

void Matrix::require_same_shape(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix shapes differ");
  if (!(field_ == o.field_)) throw FieldMismatch("matrix fields differ");
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_shape(o);
  Matrix r(rows_, cols_, field_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_shape(o);
  Matrix r(rows_, cols_, field_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(rows_, cols_, field_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
  if (!(field_ == o.field_)) throw FieldMismatch("matrix product field mismatch");
  Matrix r(rows_, o.cols_, field_);
  // ikj order with zero-skip; many operands here are sparse signed
  // permutation matrices, so the skip pays off.
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = e_[i * cols_ + k];
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.e_[k * o.cols_ + j];
        if (b.is_zero()) continue;
        r.e_[i * o.cols_ + j] = r.e_[i * o.cols_ + j] + a * b;
      }
    }
  }
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(rows_, cols_, field_);
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * c;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
  return e_ == o.e_;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::dagger() const {
  Matrix r(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

Scalar Matrix::trace() const {
  if (rows_ != cols_) throw ShapeError("trace of non-square matrix");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_, field_);
}

bool Matrix::is_scalar_multiple_of_identity(Scalar* lambda_out) const {
  if (rows_ != cols_ || rows_ == 0) return false;
  const Scalar& lambda = at(0, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? !(at(i, j) == lambda) : !at(i, j).is_zero()) return false;
    }
  }
  if (lambda_out) *lambda_out = lambda;
  return true;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  if (!(a.field_ == b.field_)) throw FieldMismatch("kron field mismatch");
  Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l)
          r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
    }
  return r;
}

std::vector<Scalar> Matrix::flatten() const { return e_; }

Matrix Matrix::unflatten(const std::vector<Scalar>& v, std::size_t rows, std::size_t cols,
                         const FieldDesc& field) {
  if (v.size() != rows * cols) throw ShapeError("unflatten size mismatch");
  Matrix m(rows, cols, field);
  m.e_ = v;
  return m;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

}  // namespace twocat::exact
