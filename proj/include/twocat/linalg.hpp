#pragma once

#include <optional>
#include <vector>

#include "twocat/matrix.hpp"

namespace twocat::exact {

// Basis of the solution space of a homogeneous system.  Each constraint is a
// row of coefficients of length `unknowns`; returns kernel basis vectors.
std::vector<std::vector<Scalar>> solve_linear(const std::vector<std::vector<Scalar>>& constraints,
                                              std::size_t unknowns, const FieldDesc& field);

// Exact inverse; std::nullopt when singular.
std::optional<Matrix> invert(const Matrix& m);

// Exact determinant by fraction-free-ish Gaussian elimination over the field.
Scalar determinant(const Matrix& m);

// Monic minimal polynomial of a square matrix, coefficients low to high
// (last coefficient is 1).
std::vector<Scalar> minimal_polynomial(const Matrix& m);

// Incremental reduced-row-echelon span tracker.  Accepts vectors one at a
// time; for any vector in the current span it can report exact coordinates
// over the accepted (independent) vectors.
class SpanSolver {
 public:
  SpanSolver(std::size_t width, const FieldDesc& field)
      : width_(width), field_(field) {}

  // Adds v if it enlarges the span; returns true when accepted.
  bool add(const std::vector<Scalar>& v);
  std::size_t dimension() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  bool contains(const std::vector<Scalar>& v) const;
  // Coordinates of v over the accepted vectors, or nullopt if outside span.
  std::optional<std::vector<Scalar>> coords(const std::vector<Scalar>& v) const;

 private:
  std::size_t width_;
  FieldDesc field_;
  std::vector<std::vector<Scalar>> rows_;    // fully reduced, pivot = 1
  std::vector<std::size_t> pivot_col_;
  std::vector<std::vector<Scalar>> combo_;   // rows_[k] = sum combo_[k][j] * accepted_j

  // v = sum alpha_k rows_[k] + residual
  void reduce(std::vector<Scalar>& v, std::vector<Scalar>& alpha) const;
};

}  // namespace twocat::exact
