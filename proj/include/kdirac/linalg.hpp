#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "kdirac/matrix.hpp"

namespace kdirac {

/// Reduced row echelon form together with the pivot columns.
struct EchelonForm {
  Matrix r;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination over the rationals. Exact: pivots are chosen as
/// the first nonzero entry per column, rows are rescaled to leading 1, so the
/// result is the canonical RREF of the row space.
inline EchelonForm reduced_row_echelon(Matrix m) {
  EchelonForm ef;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot_row = row;
    while (pivot_row < m.rows() && m(pivot_row, col) == 0) ++pivot_row;
    if (pivot_row == m.rows()) continue;
    m.swap_rows(row, pivot_row);
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    ef.pivots.push_back(col);
    ++row;
  }
  ef.r = std::move(m);
  return ef;
}

inline std::size_t rank(const Matrix& m) { return reduced_row_echelon(m).rank(); }

/// A list of linearly independent column vectors spanning a subspace.
struct SubspaceBasis {
  std::size_t ambient_dim = 0;
  Matrix vectors;  // ambient_dim x dim, columns are the basis

  std::size_t dim() const { return vectors.cols(); }

  static SubspaceBasis empty(std::size_t ambient) {
    return SubspaceBasis{ambient, Matrix(ambient, 0)};
  }
  static SubspaceBasis full(std::size_t ambient) {
    return SubspaceBasis{ambient, Matrix::identity(ambient)};
  }
};

/// Canonical basis of the null space, derived from the RREF: one vector per
/// free column, unit coordinate at the free column.
inline SubspaceBasis kernel_basis(const Matrix& m) {
  const EchelonForm ef = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ef.pivots) is_pivot[p] = true;

  SubspaceBasis basis;
  basis.ambient_dim = m.cols();
  basis.vectors = Matrix(m.cols(), m.cols() - ef.rank());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis.vectors(free, out) = 1;
    for (std::size_t i = 0; i < ef.rank(); ++i)
      basis.vectors(ef.pivots[i], out) = -ef.r(i, free);
    ++out;
  }
  return basis;
}

/// Canonical basis of the column space: RREF of the transpose, nonzero rows
/// transposed back. Deterministic for golden tests.
inline SubspaceBasis image_basis(const Matrix& m) {
  const EchelonForm ef = reduced_row_echelon(m.transpose());
  SubspaceBasis basis;
  basis.ambient_dim = m.rows();
  basis.vectors = Matrix(m.rows(), ef.rank());
  for (std::size_t i = 0; i < ef.rank(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) basis.vectors(j, i) = ef.r(i, j);
  return basis;
}

/// Canonical form of a column span; two matrices span the same subspace iff
/// their canonical forms are equal.
inline Matrix canonical_span(const Matrix& columns) { return image_basis(columns).vectors; }

inline bool same_span(const Matrix& a, const Matrix& b) {
  return canonical_span(a) == canonical_span(b);
}

/// True when every column of v lies in the column span of span_cols.
inline bool span_contains(const Matrix& span_cols, const Matrix& v) {
  const std::size_t r = rank(span_cols);
  return rank(Matrix::hcat(span_cols, v)) == r;
}

/// Solves A x = b for all columns of b; throws when inconsistent or when the
/// solution is not unique (A must have full column rank).
inline Matrix solve_full_column_rank(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const EchelonForm ef = reduced_row_echelon(Matrix::hcat(a, b));
  if (ef.rank() > 0 && ef.pivots.back() >= a.cols()) {
    // a pivot in the right block means some column of b leaves the span
    throw std::invalid_argument("solve: inconsistent system");
  }
  if (ef.rank() != a.cols()) throw std::invalid_argument("solve: rank-deficient system");
  Matrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = ef.r(i, a.cols() + j);
  return x;
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  return solve_full_column_rank(m, Matrix::identity(m.rows()));
}

/// Intersection of two column spans, canonicalized.
inline SubspaceBasis intersect_spans(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("intersect: ambient mismatch");
  if (a.cols() == 0 || b.cols() == 0) return SubspaceBasis::empty(a.rows());
  // x in both spans: a*s = b*t, i.e. [a | -b] (s,t)^T = 0
  const SubspaceBasis k = kernel_basis(Matrix::hcat(a, -b));
  Matrix s_part(a.cols(), k.dim());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < k.dim(); ++j) s_part(i, j) = k.vectors(i, j);
  SubspaceBasis out;
  out.ambient_dim = a.rows();
  out.vectors = canonical_span(a * s_part);
  return out;
}

/// Projector P with image span(u) and kernel span(w). Requires the columns of
/// u and w together to form a basis of the ambient space.
inline Matrix projector_along(const SubspaceBasis& u, const SubspaceBasis& w) {
  if (u.ambient_dim != w.ambient_dim)
    throw std::invalid_argument("projector_along: ambient mismatch");
  const std::size_t n = u.ambient_dim;
  if (u.dim() + w.dim() != n)
    throw std::invalid_argument("projector_along: dimensions do not sum to ambient");
  const Matrix m = Matrix::hcat(u.vectors, w.vectors);
  Matrix selector(n, n);
  for (std::size_t i = 0; i < u.dim(); ++i) selector(i, i) = 1;
  Matrix m_inv;
  try {
    m_inv = inverse(m);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("projector_along: u and w do not span (rank defect)");
  }
  return m * selector * m_inv;
}

}  // namespace kdirac
