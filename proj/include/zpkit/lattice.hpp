#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zpkit/hnf.hpp"
#include "zpkit/intmat.hpp"
#include "zpkit/numeric.hpp"

namespace zpkit {

using RealVec = std::vector<Real>;
using RealMat = std::vector<RealVec>;

// Sublattice of Z^n, canonically represented by its row HNF basis with
// zero rows removed.
struct IntegerLattice {
  IntMat basis;  // rows = generators, HNF, no zero rows
  int ambient_dim = 0;

  IntegerLattice() = default;
  IntegerLattice(IntMat generators, int n) : ambient_dim(n) {
    for (const auto& row : generators)
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("IntegerLattice: generator length");
    basis = drop_zero_rows(hnf(generators).h);
  }

  static IntegerLattice full(int n) { return IntegerLattice(identity_mat(n), n); }
  static IntegerLattice zero(int n) { return IntegerLattice(IntMat{}, n); }

  int rank() const { return static_cast<int>(basis.size()); }

  bool operator==(const IntegerLattice& o) const {
    return ambient_dim == o.ambient_dim && basis == o.basis;
  }

  bool contains(const IntVec& v) const {
    // reduce v against the HNF basis
    IntVec w = v;
    for (const auto& row : basis) {
      std::size_t p = 0;
      while (p < row.size() && row[p] == 0) ++p;
      if (p == row.size()) continue;
      if (w[p] % row[p] != 0) continue;
      Int q = w[p] / row[p];
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= q * row[j];
    }
    return is_zero_vec(w);
  }

  bool contains_lattice(const IntegerLattice& sub) const {
    for (const auto& row : sub.basis)
      if (!contains(row)) return false;
    return true;
  }

  IntegerLattice saturation() const {
    if (basis.empty()) return *this;
    return IntegerLattice(saturate(basis), ambient_dim);
  }

  IntegerLattice orthogonal_complement_lattice() const {
    if (basis.empty()) return full(ambient_dim);
    return IntegerLattice(orthogonal_complement(basis), ambient_dim);
  }
};

// Symmetric positive-definite inner product on R^dim, high precision.
struct GramForm {
  RealMat matrix;
  int dim = 0;

  static GramForm identity(int n) {
    GramForm g;
    g.dim = n;
    g.matrix.assign(n, RealVec(n, Real(0)));
    for (int i = 0; i < n; ++i) g.matrix[i][i] = 1;
    return g;
  }

  Real inner(const IntVec& u, const IntVec& v) const {
    Real s = 0;
    for (int i = 0; i < dim; ++i) {
      if (u[i] == 0) continue;
      Real ui = to_real(u[i]);
      for (int j = 0; j < dim; ++j)
        if (v[j] != 0) s += ui * matrix[i][j] * to_real(v[j]);
    }
    return s;
  }

  Real norm2(const IntVec& v) const { return inner(v, v); }

  // positive-definiteness via Cholesky; returns the factor or nullopt
  std::optional<RealMat> cholesky() const {
    RealMat l(dim, RealVec(dim, Real(0)));
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j <= i; ++j) {
        Real s = matrix[i][j];
        for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
        if (i == j) {
          if (s <= 0) return std::nullopt;
          l[i][i] = sqrt(s);
        } else {
          l[i][j] = s / l[j][j];
        }
      }
    }
    return l;
  }

  bool positive_definite() const { return cholesky().has_value(); }
};

inline RealMat gram_of_basis(const IntMat& basis, const GramForm& form) {
  std::size_t r = basis.size();
  RealMat g(r, RealVec(r, Real(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      g[i][j] = g[j][i] = form.inner(basis[i], basis[j]);
  return g;
}

inline Real real_det(RealMat m) {
  std::size_t n = m.size();
  Real d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k; i < n; ++i)
      if (abs(m[i][k]) > abs(m[p][k])) p = i;
    if (m[p][k] == 0) return Real(0);
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Real f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

// vol = |det Gram(basis)|^{1/2}, invariant under unimodular basis change.
inline Real lattice_volume(const IntegerLattice& lat, const GramForm& form) {
  if (form.dim != lat.ambient_dim)
    throw std::invalid_argument("lattice_volume: dimension mismatch");
  if (!form.positive_definite())
    throw std::domain_error("lattice_volume: form not positive definite");
  if (lat.rank() == 0) return Real(1);
  Real d = real_det(gram_of_basis(lat.basis, form));
  return sqrt(abs(d));
}

// Volume of the unit ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
inline Real unit_ball_volume(int n) {
  Real p = pi_value();
  Real num = pow(p, Real(n) / 2);
  Real g;
  mpfr_gamma(g.backend().data(),
             Real(Real(n) / 2 + 1).backend().data(), MPFR_RNDN);
  return num / g;
}

namespace detail {

// LLL on an explicit list of real row vectors; reduces `b` in place and
// accumulates the corresponding integer transform rows in `coords`.
inline void lll_rows(RealMat& b, IntMat& coords, double delta) {
  std::size_t n = b.size();
  if (n <= 1) return;
  std::size_t d = b[0].size();
  auto dot = [&](const RealVec& x, const RealVec& y) {
    Real s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  RealMat bstar;
  RealMat mu;
  RealVec bnorm;
  auto gso = [&]() {
    bstar.assign(n, RealVec(d, Real(0)));
    mu.assign(n, RealVec(n, Real(0)));
    bnorm.assign(n, Real(0));
    for (std::size_t i = 0; i < n; ++i) {
      bstar[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = bnorm[j] == 0 ? Real(0) : dot(b[i], bstar[j]) / bnorm[j];
        for (std::size_t k = 0; k < d; ++k) bstar[i][k] -= mu[i][j] * bstar[j][k];
      }
      bnorm[i] = dot(bstar[i], bstar[i]);
    }
  };
  gso();
  std::size_t k = 1;
  long iter_guard = 0;
  while (k < n) {
    if (++iter_guard > 200000) throw std::runtime_error("lll: no convergence");
    for (std::size_t j = k; j-- > 0;) {
      Int q = round_to_int(mu[k][j]);
      if (q != 0) {
        Real qr = to_real(q);
        for (std::size_t t = 0; t < d; ++t) b[k][t] -= qr * b[j][t];
        for (std::size_t t = 0; t < coords[k].size(); ++t)
          coords[k][t] -= q * coords[j][t];
        gso();
      }
    }
    if (bnorm[k] >= (Real(delta) - mu[k][k - 1] * mu[k][k - 1]) * bnorm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(coords[k], coords[k - 1]);
      gso();
      if (k > 1) --k;
    }
  }
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

inline IntVec sign_canonical(IntVec v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

}  // namespace detail

// LLL reduction of the lattice basis with respect to `form`. The returned
// object generates the same lattice (same HNF) but carries the reduced
// basis rows in `basis` order of increasing norm.
struct LLLResult {
  IntMat reduced;  // reduced generators, rows in the ambient Z^n
  IntegerLattice lattice;
};

inline LLLResult lll_reduce(const IntegerLattice& lat, const GramForm& form,
                            double delta = 0.99) {
  if (delta <= 0.25 || delta >= 1.0)
    throw std::invalid_argument("lll_reduce: delta out of (0.25, 1)");
  if (!form.positive_definite())
    throw std::domain_error("lll_reduce: degenerate form");
  auto chol = form.cholesky();
  std::size_t r = lat.basis.size();
  int n = lat.ambient_dim;
  // embed basis rows via the Cholesky factor so euclidean LLL realises `form`
  RealMat emb(r, RealVec(n, Real(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (int k = 0; k < n; ++k) {
      Real s = 0;
      for (int j = 0; j < n; ++j)
        if (lat.basis[i][j] != 0) s += to_real(lat.basis[i][j]) * (*chol)[j][k];
      emb[i][k] = s;
    }
  IntMat coords = identity_mat(r);
  detail::lll_rows(emb, coords, delta);
  IntMat reduced(r, IntVec(n, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < r; ++k) s += coords[i][k] * lat.basis[k][j];
      reduced[i][j] = s;
    }
  LLLResult out;
  out.reduced = reduced;
  out.lattice = IntegerLattice(reduced, n);
  if (!(out.lattice == lat))
    throw std::runtime_error("lll_reduce: lattice not preserved");
  return out;
}

struct MinimaReport {
  RealVec minima;            // nondecreasing
  IntMat achieving_vectors;  // lattice elements in the ambient Z^n
  Real volume;
};

// Exact successive minima by Fincke-Pohst enumeration after LLL.
// Refuses above the enumeration rank bound.
inline MinimaReport successive_minima(const IntegerLattice& lat,
                                      const GramForm& form,
                                      int max_rank = 10) {
  int r = lat.rank();
  if (r == 0) throw std::invalid_argument("successive_minima: zero lattice");
  if (r > max_rank)
    throw std::domain_error(
        "successive_minima: rank exceeds enumeration bound; use "
        "LLL-approximate mode");
  LLLResult red = lll_reduce(lat, form);
  const IntMat& b = red.reduced;
  // enumeration radius: the largest reduced-basis norm always admits r
  // independent vectors
  RealMat g = gram_of_basis(b, form);
  Real radius2 = 0;
  for (int i = 0; i < r; ++i) radius2 = max(radius2, g[i][i]);
  radius2 *= Real(1) + eps_at(precision_bits() / 2);

  // Cholesky of the reduced Gram matrix for pruned enumeration
  RealMat q(r, RealVec(r, Real(0)));
  {
    RealMat l(r, RealVec(r, Real(0)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j <= i; ++j) {
        Real s = g[i][j];
        for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
        if (i == j)
          l[i][i] = sqrt(s);
        else
          l[i][j] = s / l[j][j];
      }
    q = l;
  }
  // enumerate coefficient vectors x with ||sum x_i b_i||^2 <= radius2
  std::vector<std::pair<Real, IntVec>> found;  // (norm2, coeffs)
  std::vector<long> x(r, 0);
  {
    RealVec proj(r + 1, Real(0));
    proj[r] = radius2;
    // adapt rec to carry budgets: emulate via lambda above
    std::function<void(int, RealVec)> rec2 = [&](int level, RealVec budgets) {
      if (level < 0) {
        bool zero = true;
        for (long xi : x)
          if (xi) zero = false;
        if (!zero) {
          IntVec cf(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) cf[i] = x[i];
          found.emplace_back(radius2 - budgets[0], cf);
        }
        return;
      }
      Real budget = budgets[level + 1];
      Real off = 0;
      for (int j = level + 1; j < r; ++j) off += Real(x[j]) * q[j][level];
      Real diag = q[level][level];
      Real c = -off / diag;
      Real w = sqrt(budget) / diag;
      long lo = static_cast<long>(
          mpfr_get_si(Real(ceil(c - w)).backend().data(), MPFR_RNDD));
      long hi = static_cast<long>(
          mpfr_get_si(Real(floor(c + w)).backend().data(), MPFR_RNDU));
      for (long v = lo; v <= hi; ++v) {
        Real t = (Real(v) - c) * diag;
        Real used = t * t;
        if (used > budget * (Real(1) + eps_at(precision_bits() / 2))) continue;
        x[level] = v;
        budgets[level] = budget - used;
        rec2(level - 1, budgets);
      }
      x[level] = 0;
    };
    rec2(r - 1, proj);
  }
  // exact norms from the integer coefficients, canonical ordering
  struct Cand {
    Real n2;
    IntVec vec;
  };
  std::vector<Cand> cands;
  cands.reserve(found.size());
  for (auto& [n2, cf] : found) {
    IntVec v(lat.ambient_dim, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < lat.ambient_dim; ++j) v[j] += cf[i] * b[i][j];
    cands.push_back({form.norm2(v), detail::sign_canonical(v)});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& bb) {
    if (a.n2 != bb.n2) return a.n2 < bb.n2;
    return detail::lex_less(a.vec, bb.vec);
  });
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const Cand& a, const Cand& bb) {
                            return a.vec == bb.vec;
                          }),
              cands.end());
  MinimaReport rep;
  rep.volume = lattice_volume(lat, form);
  IntMat chosen;
  for (const auto& cand : cands) {
    IntMat trial = chosen;
    trial.push_back(cand.vec);
    if (rank_int(trial) == static_cast<int>(trial.size())) {
      chosen = trial;
      rep.minima.push_back(sqrt(cand.n2));
      rep.achieving_vectors.push_back(cand.vec);
      if (static_cast<int>(chosen.size()) == r) break;
    }
  }
  if (static_cast<int>(rep.minima.size()) != r)
    throw std::runtime_error("successive_minima: enumeration incomplete");
  return rep;
}

// Kernel vectors of phi, LLL-reduced for small product of norms; reports
// the heuristic product against the c * |phi|^(2(g-g')) bound shape.
struct KernelBasisReport {
  IntMat vectors;
  RealVec norms;
  Real product_of_norms;
  Real phi_norm;       // max-row euclidean norm of phi under `form`
  Real bound_exponent; // 2 * (kernel rank), the paper's 2(g - g') shape
};

inline KernelBasisReport small_kernel_basis(const IntMat& phi,
                                            const GramForm& form) {
  IntMat ker = kernel(phi);
  if (ker.empty())
    throw std::domain_error("small_kernel_basis: trivial kernel");
  IntegerLattice kl(ker, static_cast<int>(cols(phi)));
  LLLResult red = lll_reduce(kl, form);
  KernelBasisReport rep;
  rep.vectors = red.reduced;
  rep.product_of_norms = 1;
  for (const auto& v : rep.vectors) {
    Real n = sqrt(form.norm2(v));
    rep.norms.push_back(n);
    rep.product_of_norms *= n;
  }
  Real pn = 0;
  for (const auto& row : phi) {
    Real s = 0;
    for (const auto& e : row) s += to_real(e) * to_real(e);
    pn = max(pn, s);
  }
  rep.phi_norm = sqrt(pn);
  rep.bound_exponent = Real(2 * rep.vectors.size());
  // every output must annihilate phi exactly
  for (const auto& v : rep.vectors)
    if (!is_zero_vec(mat_vec(phi, v)))
      throw std::runtime_error("small_kernel_basis: kernel check failed");
  return rep;
}

}  // namespace zpkit
