#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "zpkit/numeric.hpp"

namespace zpkit {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row major

inline IntMat identity_mat(std::size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::size_t rows(const IntMat& m) { return m.size(); }
inline std::size_t cols(const IntMat& m) { return m.empty() ? 0 : m[0].size(); }

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (cols(a) != rows(b)) throw std::invalid_argument("mat_mul: shape");
  IntMat c(rows(a), IntVec(cols(b), 0));
  for (std::size_t i = 0; i < rows(a); ++i)
    for (std::size_t k = 0; k < cols(a); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols(b); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline IntMat transpose(const IntMat& m) {
  IntMat t(cols(m), IntVec(rows(m), 0));
  for (std::size_t i = 0; i < rows(m); ++i)
    for (std::size_t j = 0; j < cols(m); ++j) t[j][i] = m[i][j];
  return t;
}

inline IntVec mat_vec(const IntMat& m, const IntVec& v) {
  if (cols(m) != v.size()) throw std::invalid_argument("mat_vec: shape");
  IntVec r(rows(m), 0);
  for (std::size_t i = 0; i < rows(m); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

// Bareiss fraction-free determinant; square matrices only.
inline Int det(IntMat m) {
  std::size_t n = rows(m);
  if (n != cols(m)) throw std::invalid_argument("det: not square");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

inline int rank_int(IntMat m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols(m) && r < rows(m); ++c) {
    std::size_t p = r;
    while (p < rows(m) && m[p][c] == 0) ++p;
    if (p == rows(m)) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < rows(m); ++i) {
      if (m[i][c] == 0) continue;
      Int a = m[r][c], b = m[i][c];
      // fraction-free row elimination
      for (std::size_t j = c; j < cols(m); ++j) m[i][j] = m[i][j] * a - m[r][j] * b;
    }
    ++r;
  }
  return static_cast<int>(r);
}

inline bool is_zero_vec(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline IntVec primitive_part(IntVec v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  // sign normalization: first nonzero entry positive
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

}  // namespace zpkit
