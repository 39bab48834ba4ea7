#include "twocat/linalg.hpp"

namespace twocat::exact {

void SpanSolver::reduce(std::vector<Scalar>& v, std::vector<Scalar>& alpha) const {
  alpha.assign(rows_.size(), Scalar::zero(field_));
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    // By value: the j-loop clears v[pivot_col_[k]], which c must survive.
    const Scalar c = v[pivot_col_[k]];
    if (c.is_zero()) continue;
    alpha[k] = c;
    for (std::size_t j = 0; j < width_; ++j) {
      if (!rows_[k][j].is_zero()) v[j] = v[j] - c * rows_[k][j];
    }
  }
}

bool SpanSolver::add(const std::vector<Scalar>& v) {
  if (v.size() != width_) throw ShapeError("SpanSolver::add width mismatch");
  std::vector<Scalar> r = v;
  std::vector<Scalar> alpha;
  reduce(r, alpha);
  std::size_t piv = width_;
  for (std::size_t j = 0; j < width_; ++j) {
    if (!r[j].is_zero()) {
      piv = j;
      break;
    }
  }
  if (piv == width_) return false;

  const std::size_t original_index = combo_.empty() ? 0 : combo_[0].size();
  Scalar inv = r[piv].inverse();
  for (auto& x : r) x = x * inv;

  // Combination of r over accepted originals: (e_new - sum alpha_k rows_k) / pivot.
  std::vector<Scalar> comb(original_index + 1, Scalar::zero(field_));
  comb[original_index] = inv;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (alpha[k].is_zero()) continue;
    Scalar f = alpha[k] * inv;
    for (std::size_t j = 0; j < combo_[k].size(); ++j) comb[j] = comb[j] - f * combo_[k][j];
  }
  // Keep earlier rows fully reduced against the new pivot.
  for (auto& cb : combo_) cb.resize(original_index + 1, Scalar::zero(field_));
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = rows_[k][piv];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < width_; ++j) rows_[k][j] = rows_[k][j] - c * r[j];
    for (std::size_t j = 0; j <= original_index; ++j) combo_[k][j] = combo_[k][j] - c * comb[j];
  }
  rows_.push_back(std::move(r));
  pivot_col_.push_back(piv);
  combo_.push_back(std::move(comb));
  return true;
}

bool SpanSolver::contains(const std::vector<Scalar>& v) const {
  if (v.size() != width_) throw ShapeError("SpanSolver::contains width mismatch");
  std::vector<Scalar> r = v;
  std::vector<Scalar> alpha;
  reduce(r, alpha);
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

std::optional<std::vector<Scalar>> SpanSolver::coords(const std::vector<Scalar>& v) const {
  if (v.size() != width_) throw ShapeError("SpanSolver::coords width mismatch");
  std::vector<Scalar> r = v;
  std::vector<Scalar> alpha;
  reduce(r, alpha);
  for (const auto& x : r)
    if (!x.is_zero()) return std::nullopt;
  std::size_t n = combo_.empty() ? 0 : combo_[0].size();
  std::vector<Scalar> out(n, Scalar::zero(field_));
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (alpha[k].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] = out[j] + alpha[k] * combo_[k][j];
  }
  return out;
}

std::vector<std::vector<Scalar>> solve_linear(const std::vector<std::vector<Scalar>>& constraints,
                                              std::size_t unknowns, const FieldDesc& field) {
  // Row-reduce the constraint matrix, then read off free-variable basis.
  std::vector<std::vector<Scalar>> rows;
  std::vector<std::size_t> pivot_col;
  for (const auto& c : constraints) {
    if (c.size() != unknowns) throw ShapeError("solve_linear constraint width mismatch");
    std::vector<Scalar> r = c;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Scalar f = r[pivot_col[k]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < unknowns; ++j)
        if (!rows[k][j].is_zero()) r[j] = r[j] - f * rows[k][j];
    }
    std::size_t piv = unknowns;
    for (std::size_t j = 0; j < unknowns; ++j) {
      if (!r[j].is_zero()) {
        piv = j;
        break;
      }
    }
    if (piv == unknowns) continue;
    Scalar inv = r[piv].inverse();
    for (auto& x : r) x = x * inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Scalar f = rows[k][piv];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < unknowns; ++j) rows[k][j] = rows[k][j] - f * r[j];
    }
    rows.push_back(std::move(r));
    pivot_col.push_back(piv);
  }
  std::vector<bool> is_pivot(unknowns, false);
  for (auto p : pivot_col) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < unknowns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(unknowns, Scalar::zero(field));
    v[free] = Scalar::one(field);
    for (std::size_t k = 0; k < rows.size(); ++k) v[pivot_col[k]] = -rows[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("invert: non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n, m.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i) {
      if (!a.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    Scalar f = a.at(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) * f;
      inv.at(col, j) = inv.at(col, j) * f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      Scalar c = a.at(i, col);
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) = a.at(i, j) - c * a.at(col, j);
        inv.at(i, j) = inv.at(i, j) - c * inv.at(col, j);
      }
    }
  }
  return inv;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant: non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Scalar det = Scalar::one(m.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i) {
      if (!a.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv == n) return Scalar::zero(m.field());
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      det = -det;
    }
    det = det * a.at(col, col);
    Scalar f = a.at(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      Scalar c = a.at(i, col) * f;
      if (c.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) a.at(i, j) = a.at(i, j) - c * a.at(col, j);
    }
  }
  return det;
}

std::vector<Scalar> minimal_polynomial(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("minimal_polynomial: non-square matrix");
  SpanSolver span(m.rows() * m.cols(), m.field());
  std::vector<Matrix> powers;
  Matrix p = Matrix::identity(m.rows(), m.field());
  for (;;) {
    auto c = span.coords(p.flatten());
    if (c) {
      // p = sum c_i powers_i, so minpoly is t^d - sum c_i t^i.
      std::vector<Scalar> out(powers.size() + 1, Scalar::zero(m.field()));
      for (std::size_t i = 0; i < c->size(); ++i) out[i] = -(*c)[i];
      out[powers.size()] = Scalar::one(m.field());
      return out;
    }
    span.add(p.flatten());
    powers.push_back(p);
    p = p * m;
  }
}

}  // namespace twocat::exact
