#pragma once

#include <cstddef>
#include <utility>

#include "zpkit/intmat.hpp"

namespace zpkit {

struct HnfResult {
  IntMat h;          // row Hermite normal form, same shape as input
  IntMat transform;  // unimodular, transform * input = h
};

// Row HNF: row echelon, positive pivots, entries above a pivot reduced
// into [0, pivot).
inline HnfResult hnf(const IntMat& m) {
  std::size_t r = rows(m), c = cols(m);
  HnfResult out{m, identity_mat(r)};
  IntMat& h = out.h;
  IntMat& u = out.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    // clear the column below `row` with euclidean steps
    while (true) {
      std::size_t p = row;
      for (std::size_t i = row; i < r; ++i) {
        if (h[i][col] == 0) continue;
        if (h[p][col] == 0 || abs(h[i][col]) < abs(h[p][col])) p = i;
      }
      if (h[p][col] == 0) break;
      std::swap(h[row], h[p]);
      std::swap(u[row], u[p]);
      bool clean = true;
      for (std::size_t i = row + 1; i < r; ++i) {
        if (h[i][col] == 0) continue;
        Int q = h[i][col] / h[row][col];
        if (q != 0) {
          for (std::size_t j = 0; j < c; ++j) h[i][j] -= q * h[row][j];
          for (std::size_t j = 0; j < r; ++j) u[i][j] -= q * u[row][j];
        }
        if (h[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (h[row][col] == 0) continue;
    if (h[row][col] < 0) {
      for (std::size_t j = 0; j < c; ++j) h[row][j] = -h[row][j];
      for (std::size_t j = 0; j < r; ++j) u[row][j] = -u[row][j];
    }
    // reduce entries above the pivot
    for (std::size_t i = 0; i < row; ++i) {
      Int q = h[i][col] / h[row][col];
      if (h[i][col] - q * h[row][col] < 0) q -= 1;
      if (q != 0) {
        for (std::size_t j = 0; j < c; ++j) h[i][j] -= q * h[row][j];
        for (std::size_t j = 0; j < r; ++j) u[i][j] -= q * u[row][j];
      }
    }
    ++row;
  }
  return out;
}

inline IntMat drop_zero_rows(const IntMat& m) {
  IntMat out;
  for (const auto& row : m)
    if (!is_zero_vec(row)) out.push_back(row);
  return out;
}

struct SnfResult {
  std::vector<Int> diag;  // d1 | d2 | ... padded with zeros to min(r,c)
  IntMat left, right;     // unimodular, left * input * right diagonal
};

inline SnfResult snf(const IntMat& m) {
  std::size_t r = rows(m), c = cols(m);
  IntMat a = m;
  SnfResult out;
  out.left = identity_mat(r);
  out.right = identity_mat(c);
  std::size_t t = 0;
  auto col_op = [&](std::size_t j, std::size_t k, const Int& q) {
    // col_k -= q * col_j
    for (std::size_t i = 0; i < r; ++i) a[i][k] -= q * a[i][j];
    for (std::size_t i = 0; i < c; ++i) out.right[i][k] -= q * out.right[i][j];
  };
  auto col_swap = [&](std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < r; ++i) std::swap(a[i][j], a[i][k]);
    for (std::size_t i = 0; i < c; ++i) std::swap(out.right[i][j], out.right[i][k]);
  };
  while (t < r && t < c) {
    // find a nonzero pivot
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < r && !found; ++i)
      for (std::size_t j = t; j < c && !found; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(a[t], a[pi]);
    std::swap(out.left[t], out.left[pi]);
    if (pj != t) col_swap(t, pj);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a[i][t] == 0) continue;
        Int q = a[i][t] / a[t][t];
        for (std::size_t j = 0; j < c; ++j) a[i][j] -= q * a[t][j];
        for (std::size_t j = 0; j < r; ++j) out.left[i][j] -= q * out.left[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          std::swap(out.left[t], out.left[i]);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a[t][j] == 0) continue;
        Int q = a[t][j] / a[t][t];
        col_op(t, j, q);
        if (a[t][j] != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
    }
    // divisibility: fold any non-multiple into the pivot position
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = t + 1; i < r && !again; ++i)
        for (std::size_t j = t + 1; j < c && !again; ++j)
          if (a[i][j] % a[t][t] != 0) {
            // add row i to row t, then re-eliminate
            for (std::size_t k = 0; k < c; ++k) a[t][k] += a[i][k];
            for (std::size_t k = 0; k < r; ++k) out.left[t][k] += out.left[i][k];
            again = true;
          }
      if (again) {
        bool d2 = true;
        while (d2) {
          d2 = false;
          for (std::size_t i = t + 1; i < r; ++i) {
            if (a[i][t] == 0) continue;
            Int q = a[i][t] / a[t][t];
            for (std::size_t j = 0; j < c; ++j) a[i][j] -= q * a[t][j];
            for (std::size_t j = 0; j < r; ++j)
              out.left[i][j] -= q * out.left[t][j];
            if (a[i][t] != 0) {
              std::swap(a[t], a[i]);
              std::swap(out.left[t], out.left[i]);
              d2 = true;
            }
          }
          for (std::size_t j = t + 1; j < c; ++j) {
            if (a[t][j] == 0) continue;
            Int q = a[t][j] / a[t][t];
            col_op(t, j, q);
            if (a[t][j] != 0) {
              col_swap(t, j);
              d2 = true;
            }
          }
        }
      }
    }
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < c; ++j) a[t][j] = -a[t][j];
      for (std::size_t j = 0; j < r; ++j) out.left[t][j] = -out.left[t][j];
    }
    ++t;
  }
  std::size_t k = std::min(r, c);
  out.diag.assign(k, 0);
  for (std::size_t i = 0; i < t; ++i) out.diag[i] = a[i][i];
  return out;
}

// Basis of {x in Z^r : x * m = 0} (left kernel of the r x c matrix m),
// automatically saturated. Rows of the result have length r.
inline IntMat left_kernel(const IntMat& m) {
  HnfResult h = hnf(m);
  IntMat ker;
  for (std::size_t i = 0; i < rows(m); ++i)
    if (is_zero_vec(h.h[i])) ker.push_back(h.transform[i]);
  return ker;
}

// Basis of {x in Z^n : m * x = 0} for m with n columns.
inline IntMat kernel(const IntMat& m) { return left_kernel(transpose(m)); }

// {a in Z^n : a orthogonal to every row of m} -- same as kernel(m) since
// m * a = (row_i . a)_i.
inline IntMat orthogonal_complement(const IntMat& m) { return kernel(m); }

// Saturation of the row span of m inside Z^n: intersect the Q-span with Z^n.
inline IntMat saturate(const IntMat& m) {
  if (m.empty()) return m;
  IntMat comp = orthogonal_complement(m);
  if (comp.empty()) return identity_mat(cols(m));
  return orthogonal_complement(comp);
}

}  // namespace zpkit
