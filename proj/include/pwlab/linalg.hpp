// Small exact dense linear algebra over the coefficient field and over the
// scalar (rational function) field. Sizes here are tiny; plain Gauss is fine.

#pragma once

#include "pwlab/scalar.hpp"

namespace pwlab {

// rank of a matrix of scalars (entries in the rational function field)
inline int matrix_rank(std::vector<std::vector<Scalar>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t prow = 0;
  for (size_t c = 0; c < cols && prow < rows; ++c) {
    size_t piv = prow;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[prow]);
    Scalar inv = Scalar(1) / m[prow][c];
    for (size_t cc = c; cc < cols; ++cc) m[prow][cc] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == prow || m[r][c].is_zero()) continue;
      Scalar f = m[r][c];
      for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[prow][cc];
    }
    ++rank;
    ++prow;
  }
  return rank;
}

// nullspace basis of an (rows x cols) matrix over Q(sqrt2)
inline std::vector<std::vector<Coeff>> nullspace(std::vector<std::vector<Coeff>> m, size_t cols) {
  size_t rows = m.size();
  std::vector<int> pivot_of_col(cols, -1);
  size_t prow = 0;
  for (size_t c = 0; c < cols && prow < rows; ++c) {
    size_t piv = prow;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[prow]);
    Coeff inv = m[prow][c].inv();
    for (size_t cc = c; cc < cols; ++cc) m[prow][cc] = m[prow][cc] * inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == prow || m[r][c].is_zero()) continue;
      Coeff f = m[r][c];
      for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[prow][cc];
    }
    pivot_of_col[c] = static_cast<int>(prow);
    ++prow;
  }
  std::vector<std::vector<Coeff>> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (pivot_of_col[fc] >= 0) continue;
    std::vector<Coeff> v(cols, Coeff(0));
    v[fc] = Coeff(1);
    for (size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -m[static_cast<size_t>(pivot_of_col[c])][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace pwlab
