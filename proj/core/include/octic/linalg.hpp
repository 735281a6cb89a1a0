#pragma once

#include <utility>
#include <vector>

#include "octic/error.hpp"

namespace octic {

template <class K>
using Matrix = std::vector<std::vector<K>>;

/// Reduced row echelon form over a field, in place. Returns the pivot columns.
template <class K>
std::vector<int> row_reduce(Matrix<K>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    K inv = K(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      K f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the right null space {v : m v = 0}.
template <class K>
std::vector<std::vector<K>> nullspace(Matrix<K> m, int cols) {
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(cols, K(0));
    v[free] = K(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
int rank(Matrix<K> m) {
  return static_cast<int>(row_reduce(m).size());
}

/// Determinant over a field by Gaussian elimination.
template <class K>
K determinant(Matrix<K> m) {
  const int n = static_cast<int>(m.size());
  K det(1);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && is_zero(m[p][c])) ++p;
    if (p == n) return K(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    K inv = K(1) / m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m[i][c])) continue;
      K f = m[i][c] * inv;
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Fraction-free determinant over an integral domain (Bareiss). `div` must
/// perform exact division in the ring; `one` is the ring's unit.
template <class R, class ExactDiv>
R bareiss_determinant(Matrix<R> m, ExactDiv div, const R& one) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return one;
  R prev = one;
  bool negate = false;
  for (int k = 0; k < n - 1; ++k) {
    if (is_zero(m[k][k])) {
      int p = k + 1;
      while (p < n && is_zero(m[p][k])) ++p;
      if (p == n) return R(0);
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m[i][j] = div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace octic
