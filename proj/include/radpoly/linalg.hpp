#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "radpoly/rational.hpp"

namespace radpoly {

template <exact_field S>
struct ReducedEchelon {
  Matrix<S> matrix;
  std::vector<Eigen::Index> pivot_columns;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_columns.size()); }
};

/// Exact reduced row echelon form. Pivot row: first nonzero at or below the
/// current row.
template <exact_field S>
ReducedEchelon<S> reduced_echelon(Matrix<S> m) {
  ReducedEchelon<S> out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == S(0)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == S(0)) continue;
      const S f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.matrix = std::move(m);
  return out;
}

template <exact_field S>
Eigen::Index rank(const Matrix<S>& m) {
  return reduced_echelon<S>(m).rank();
}

template <exact_field S>
S determinant(Matrix<S> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  S det(1);
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col) == S(0)) ++pivot;
    if (pivot == n) return S(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (m(i, col) == S(0)) continue;
      const S f = m(i, col) / m(col, col);
      for (Eigen::Index j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Solves A X = B exactly for square invertible A.
template <exact_field S>
Matrix<S> solve(const Matrix<S>& A, const Matrix<S>& B) {
  if (A.rows() != A.cols() || B.rows() != A.rows()) throw std::invalid_argument("solve: shape mismatch");
  Matrix<S> aug(A.rows(), A.cols() + B.cols());
  aug << A, B;
  auto red = reduced_echelon<S>(std::move(aug));
  if (red.rank() < A.rows() || red.pivot_columns.back() >= A.cols()) throw singular_matrix("matrix is singular");
  return red.matrix.rightCols(B.cols());
}

template <exact_field S>
Vector<S> solve(const Matrix<S>& A, const Vector<S>& b) {
  Matrix<S> B = b;
  return solve<S>(A, B).col(0);
}

template <exact_field S>
Matrix<S> inverse(const Matrix<S>& A) {
  return solve<S>(A, Matrix<S>(Matrix<S>::Identity(A.rows(), A.cols())));
}

/// True when the rows of A and B span the same subspace.
template <exact_field S>
bool same_row_space(const Matrix<S>& A, const Matrix<S>& B) {
  if (A.cols() != B.cols()) return false;
  auto ra = reduced_echelon<S>(A), rb = reduced_echelon<S>(B);
  if (ra.rank() != rb.rank()) return false;
  return ra.matrix.topRows(ra.rank()) == rb.matrix.topRows(rb.rank());
}

}  // namespace radpoly
