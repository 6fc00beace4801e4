#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zpkit/hnf.hpp"
#include "zpkit/lattice.hpp"
#include "zpkit/numeric.hpp"

namespace zpkit {

using CplxVec = std::vector<Cplx>;
using CplxMat = std::vector<CplxVec>;

namespace detail {

// solve A x = b for square real A by Gaussian elimination with pivoting
inline RealVec solve_real(RealMat a, RealVec b) {
  std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k; i < n; ++i)
      if (abs(a[i][k]) > abs(a[p][k])) p = i;
    if (a[p][k] == 0) throw std::domain_error("solve_real: singular system");
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  RealVec x(n, Real(0));
  for (std::size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// inverse of a unimodular integer matrix (via exact rational elimination)
inline IntMat unimodular_inverse(const IntMat& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
    a[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw std::domain_error("unimodular_inverse: singular");
    std::swap(a[p], a[k]);
    Rat piv = a[k][k];
    for (auto& x : a[k]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rat f = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  IntMat inv(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (denominator(a[i][n + j]) != 1)
        throw std::domain_error("unimodular_inverse: matrix not unimodular");
      inv[i][j] = Int(numerator(a[i][n + j]));
    }
  return inv;
}

}  // namespace detail

// Complex torus C^g / (Z-span of 2g periods) with an ample hermitian form:
// H positive definite, E = Im H integer-valued on the period lattice.
struct PolarizedTorus {
  int g;
  CplxMat periods;    // 2g rows, each a vector in C^g
  CplxMat hermitian;  // g x g, conjugate-symmetric
  Real tolerance;

  PolarizedTorus(int g_, CplxMat periods_, CplxMat hermitian_,
                 Real tol = Real("1e-9"))
      : g(g_),
        periods(std::move(periods_)),
        hermitian(std::move(hermitian_)),
        tolerance(std::move(tol)) {
    if (g < 1) throw std::invalid_argument("PolarizedTorus: g < 1");
    if (static_cast<int>(periods.size()) != 2 * g)
      throw std::invalid_argument("PolarizedTorus: need 2g periods");
    for (const auto& p : periods)
      if (static_cast<int>(p.size()) != g)
        throw std::invalid_argument("PolarizedTorus: period dimension");
    if (static_cast<int>(hermitian.size()) != g)
      throw std::invalid_argument("PolarizedTorus: hermitian dimension");
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        if (abs(hermitian[i][j] - conj(hermitian[j][i])) > tolerance)
          throw std::invalid_argument(
              "PolarizedTorus: form not conjugate-symmetric");
    // periods must be an R-basis of C^g and Re H positive definite on them
    GramForm gf = gram_form();
    if (!gf.positive_definite())
      throw std::invalid_argument(
          "PolarizedTorus: form not positive definite on the period lattice");
    // E = Im H integral on all period pairs
    for (int a = 0; a < 2 * g; ++a)
      for (int b = 0; b < 2 * g; ++b) {
        Real e = herm(periods[a], periods[b]).im;
        if (abs(e - to_real(round_to_int(e))) > tolerance)
          throw std::invalid_argument(
              "PolarizedTorus: Im H not integral on the periods");
      }
  }

  Cplx herm(const CplxVec& v, const CplxVec& w) const {
    Cplx s(Real(0));
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) s += hermitian[i][j] * v[i] * conj(w[j]);
    return s;
  }
  Real inner(const CplxVec& v, const CplxVec& w) const {
    return herm(v, w).re;
  }
  Real norm(const CplxVec& v) const { return sqrt(herm(v, v).re); }

  // Re H as a quadratic form on period coordinates Z^{2g}
  GramForm gram_form() const {
    GramForm gf = GramForm::identity(2 * g);
    for (int a = 0; a < 2 * g; ++a)
      for (int b = 0; b < 2 * g; ++b)
        gf.matrix[a][b] = inner(periods[a], periods[b]);
    return gf;
  }

  // integer period coordinates -> vector in C^g
  CplxVec embed(const IntVec& coords) const {
    CplxVec v(g, Cplx(Real(0)));
    for (int a = 0; a < 2 * g; ++a) {
      if (coords[a] == 0) continue;
      Cplx c(to_real(coords[a]));
      for (int i = 0; i < g; ++i) v[i] += c * periods[a][i];
    }
    return v;
  }

  // C^g as R^{2g}: (Re z_1, Im z_1, ..., Re z_g, Im z_g)
  static RealVec realify(const CplxVec& v) {
    RealVec r(2 * v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[2 * i] = v[i].re;
      r[2 * i + 1] = v[i].im;
    }
    return r;
  }
};

// Abelian subvariety data: a period sublattice whose real span is a complex
// subspace of C^g.
struct Subtorus {
  const PolarizedTorus* parent;
  IntegerLattice period_sublattice;  // coordinates w.r.t. parent periods

  Subtorus(const PolarizedTorus& par, IntegerLattice sub)
      : parent(&par), period_sublattice(std::move(sub)) {
    if (period_sublattice.ambient_dim != 2 * par.g)
      throw std::invalid_argument("Subtorus: ambient dimension mismatch");
    if (period_sublattice.rank() % 2 != 0)
      throw std::invalid_argument("Subtorus: period rank must be even");
    if (!complex_subspace_check())
      throw std::invalid_argument(
          "Subtorus: real span of sublattice is not a complex subspace");
  }

  int dim_c() const { return period_sublattice.rank() / 2; }

  // distance of w from the real span of the sublattice periods
  Real span_distance(const CplxVec& w) const {
    int r = period_sublattice.rank();
    if (r == 0) {
      Real s = 0;
      for (const auto& z : w) s += z.norm2();
      return sqrt(s);
    }
    std::vector<RealVec> rows;
    for (const auto& b : period_sublattice.basis)
      rows.push_back(PolarizedTorus::realify(parent->embed(b)));
    RealVec t = PolarizedTorus::realify(w);
    // least squares via normal equations
    RealMat gram(r, RealVec(r, Real(0)));
    RealVec rhs(r, Real(0));
    auto dot = [](const RealVec& x, const RealVec& y) {
      Real s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
      return s;
    };
    for (int i = 0; i < r; ++i) {
      rhs[i] = dot(rows[i], t);
      for (int j = 0; j <= i; ++j)
        gram[i][j] = gram[j][i] = dot(rows[i], rows[j]);
    }
    RealVec x = detail::solve_real(gram, rhs);
    Real s = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      Real d = t[k];
      for (int i = 0; i < r; ++i) d -= x[i] * rows[i][k];
      s += d * d;
    }
    return sqrt(s);
  }

  bool complex_subspace_check() const {
    for (const auto& b : period_sublattice.basis) {
      CplxVec v = parent->embed(b);
      CplxVec iv(v.size());
      Real scale = 0;
      for (std::size_t k = 0; k < v.size(); ++k) {
        iv[k] = v[k] * Cplx(Real(0), Real(1));
        scale += v[k].norm2();
      }
      if (span_distance(iv) > parent->tolerance * (1 + sqrt(scale)))
        return false;
    }
    return true;
  }
};

// deg = (dim_C)! * vol of the period sublattice under Re H
inline Real degree(const Subtorus& t) {
  int r = t.dim_c();
  Real fac = 1;
  for (int i = 2; i <= r; ++i) fac *= i;
  return fac * lattice_volume(t.period_sublattice, t.parent->gram_form());
}

struct DegreeComparison {
  Real degree_primary;
  Real degree_alternative;
  Real ratio;  // alternative / primary
};

inline DegreeComparison degree_comparability(const Subtorus& t,
                                             const CplxMat& h2) {
  // the alternative form must itself polarize the parent torus
  PolarizedTorus alt(t.parent->g, t.parent->periods, h2, t.parent->tolerance);
  Subtorus talt(alt, t.period_sublattice);
  DegreeComparison out;
  out.degree_primary = degree(t);
  out.degree_alternative = degree(talt);
  out.ratio = out.degree_alternative / out.degree_primary;
  return out;
}

struct PeriodBasisReport {
  MinimaReport minima;      // successive minima under the polarization form
  RealVec norms;            // the minima themselves (they are norms)
  Real product_of_norms;
  Real degree_value;
  Real achieved_constant;   // product / degree
};

inline PeriodBasisReport small_period_basis(const Subtorus& t,
                                            int max_rank = 10) {
  PeriodBasisReport rep;
  rep.minima = successive_minima(t.period_sublattice, t.parent->gram_form(),
                                 max_rank);
  rep.product_of_norms = 1;
  for (const auto& m : rep.minima.minima) {
    rep.norms.push_back(m);
    rep.product_of_norms *= m;
  }
  rep.degree_value = degree(t);
  rep.achieved_constant = rep.product_of_norms / rep.degree_value;
  return rep;
}

struct NearbyPeriodResult {
  IntVec omega_coords;  // period coordinates of omega in the parent lattice
  CplxVec omega;
  CplxVec remainder;       // z - omega, lies in the tangent space
  Real tangent_residual;   // projection residual of the remainder
  Real omega_norm;
};

// Lemma-style rounding: split z over an adapted basis (sublattice saturation
// plus an integral complement), round the complement coordinates to integers.
inline NearbyPeriodResult nearby_period(const CplxVec& z, const Subtorus& t) {
  const PolarizedTorus& par = *t.parent;
  int n = 2 * par.g;
  IntegerLattice sat = t.period_sublattice.saturation();
  int r = sat.rank();
  // adapted basis of Z^n: SNF of the saturated basis; with left * B * right
  // = [I | 0], the rows of right^{-1} form a basis whose first r rows span
  // the saturation.
  IntMat adapted;
  if (r == 0) {
    adapted = identity_mat(n);
  } else {
    SnfResult s = snf(sat.basis);
    for (int i = 0; i < r; ++i)
      if (s.diag[i] != 1)
        throw std::runtime_error("nearby_period: saturation not primitive");
    adapted = detail::unimodular_inverse(s.right);
  }
  // solve z = sum beta_j adapted_j over R^{2g}
  RealMat a(n, RealVec(n));
  for (int j = 0; j < n; ++j) {
    RealVec col = PolarizedTorus::realify(par.embed(adapted[j]));
    for (int i = 0; i < n; ++i) a[i][j] = col[i];
  }
  RealVec beta = detail::solve_real(a, PolarizedTorus::realify(z));
  // complement coordinates must be integral: z in Omega_X + T_Y
  NearbyPeriodResult out;
  out.omega_coords.assign(n, Int(0));
  for (int j = r; j < n; ++j) {
    Int aj = round_to_int(beta[j]);
    if (abs(beta[j] - to_real(aj)) > par.tolerance * 1000)
      throw std::domain_error("nearby_period: z not in Omega_X + T_Y");
    for (int i = 0; i < n; ++i) out.omega_coords[i] += aj * adapted[j][i];
  }
  out.omega = par.embed(out.omega_coords);
  out.remainder.resize(par.g);
  for (int i = 0; i < par.g; ++i) out.remainder[i] = z[i] - out.omega[i];
  out.tangent_residual = t.span_distance(out.remainder);
  out.omega_norm = par.norm(out.omega);
  return out;
}

struct TorsionCosetComplexity {
  long arith;   // minimal torsion-translate order, caller supplied
  Real geom;    // deg_L of the subtorus
  Int total;    // max(arith, ceil(geom))
};

inline TorsionCosetComplexity torsion_coset_complexity(long order,
                                                       const Subtorus& t) {
  if (order < 1)
    throw std::invalid_argument("torsion_coset_complexity: order < 1");
  TorsionCosetComplexity out;
  out.arith = order;
  out.geom = degree(t);
  Int geom_ceil = round_to_int(out.geom);
  if (to_real(geom_ceil) < out.geom) geom_ceil += 1;  // ceiling
  out.total = geom_ceil > order ? geom_ceil : Int(order);
  if (out.total < 1) out.total = 1;
  return out;
}

// lambda(d) = sup of dim(X/H) * rank Hom(X, X/H) over the supplied quotient
// data; by convention 0 exactly when d = dim X (only the trivial quotient).
inline long lambda_value(const std::vector<std::pair<int, int>>& quotients,
                         int d, int dim_x) {
  if (quotients.empty()) {
    if (d == dim_x) return 0;
    throw std::invalid_argument(
        "lambda_value: no quotient data for d < dim X");
  }
  long best = 0;
  for (const auto& [q_dim, hom_rank] : quotients)
    best = std::max(best, static_cast<long>(q_dim) * hom_rank);
  return best;
}

// The two torsion-order bound shapes c D^{6g+1} and c D^{60 g^4} max(1,h)^lambda.
inline std::pair<Real, Real> complexity_bound(const Real& c, long degree_kp,
                                              int g, const Real& height,
                                              long lambda) {
  if (!(c > 0) || degree_kp < 1 || g < 1 || lambda < 0)
    throw std::invalid_argument("complexity_bound: bad arguments");
  Real d = Real(degree_kp);
  Real arith = c * pow(d, 6 * g + 1);
  Real hmax = height > 1 ? height : Real(1);
  long g4 = static_cast<long>(g) * g * g * g;
  Real total = c * pow(d, 60 * g4) * pow(hmax, static_cast<int>(lambda));
  return {arith, total};
}

struct AnnihilatingHomResult {
  IntVec coefficients;  // integer combination of the generators
  CplxMat phi;          // the matrix of the found homomorphism
  Real phi_norm;        // Frobenius norm
  Real residual;        // distance from phi(p_log) to the target period lattice
  int tangent_rank;     // complex rank of phi
  bool surjective;      // tangent_rank == dim target
};

// LLL search for a small integer combination phi of the generator matrices
// with phi(p_log) in the target period lattice.
inline AnnihilatingHomResult small_annihilating_hom(
    const std::vector<CplxMat>& generators, const CplxVec& p_log,
    const PolarizedTorus& target, Real tol = Real("1e-9")) {
  if (generators.empty())
    throw std::invalid_argument("small_annihilating_hom: no generators");
  std::size_t k = generators.size();
  int gp = target.g;
  std::size_t src_dim = p_log.size();
  for (const auto& m : generators)
    if (static_cast<int>(m.size()) != gp ||
        static_cast<std::size_t>(m[0].size()) != src_dim)
      throw std::invalid_argument("small_annihilating_hom: generator shape");
  auto apply = [&](const CplxMat& m) {
    CplxVec v(gp, Cplx(Real(0)));
    for (int i = 0; i < gp; ++i)
      for (std::size_t j = 0; j < src_dim; ++j) v[i] += m[i][j] * p_log[j];
    return v;
  };
  // scaled embedding: rows [K * phi_i(p_log) | eps * e_i] and [K * period | 0]
  Real kscale;
  mpfr_ui_pow_ui(kscale.backend().data(), 2, 64, MPFR_RNDN);
  std::size_t width = 2 * gp + k;
  RealMat rows;
  for (std::size_t i = 0; i < k; ++i) {
    RealVec row(width, Real(0));
    RealVec re = PolarizedTorus::realify(apply(generators[i]));
    for (int j = 0; j < 2 * gp; ++j) row[j] = kscale * re[j];
    row[2 * gp + i] = 1;
    rows.push_back(std::move(row));
  }
  for (int p = 0; p < 2 * gp; ++p) {
    RealVec row(width, Real(0));
    RealVec re = PolarizedTorus::realify(target.periods[p]);
    for (int j = 0; j < 2 * gp; ++j) row[j] = kscale * re[j];
    rows.push_back(std::move(row));
  }
  IntMat coords = identity_mat(static_cast<int>(rows.size()));
  detail::lll_rows(rows, coords, 0.99);
  // scan reduced rows for one with tiny scaled block and nonzero generator part
  std::optional<AnnihilatingHomResult> best;
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    Real res = 0;
    for (int j = 0; j < 2 * gp; ++j) res += rows[ri][j] * rows[ri][j];
    res = sqrt(res) / kscale;
    if (res > tol) continue;
    IntVec coef(coords[ri].begin(), coords[ri].begin() + k);
    if (is_zero_vec(coef)) continue;
    AnnihilatingHomResult cand;
    cand.coefficients = coef;
    cand.phi.assign(gp, CplxVec(src_dim, Cplx(Real(0))));
    for (std::size_t i = 0; i < k; ++i) {
      if (coef[i] == 0) continue;
      Cplx c(to_real(coef[i]));
      for (int a = 0; a < gp; ++a)
        for (std::size_t b = 0; b < src_dim; ++b)
          cand.phi[a][b] += c * generators[i][a][b];
    }
    Real fn = 0;
    for (const auto& rr : cand.phi)
      for (const auto& x : rr) fn += x.norm2();
    cand.phi_norm = sqrt(fn);
    cand.residual = res;
    // complex rank of phi by elimination with a scale-aware threshold
    {
      CplxMat m = cand.phi;
      int rank = 0;
      Real thresh = eps_at(precision_bits() / 2) * (1 + cand.phi_norm);
      for (std::size_t col = 0; col < src_dim && rank < gp; ++col) {
        int piv = -1;
        Real bestv = thresh;
        for (int i = rank; i < gp; ++i)
          if (abs(m[i][col]) > bestv) {
            bestv = abs(m[i][col]);
            piv = i;
          }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int i = rank + 1; i < gp; ++i) {
          Cplx f = m[i][col] / m[rank][col];
          for (std::size_t j = col; j < src_dim; ++j)
            m[i][j] = m[i][j] - f * m[rank][j];
        }
        ++rank;
      }
      cand.tangent_rank = rank;
      cand.surjective = rank == gp;
    }
    if (!best || cand.phi_norm < best->phi_norm ||
        (cand.phi_norm == best->phi_norm &&
         detail::lex_less(cand.coefficients, best->coefficients)))
      best = std::move(cand);
  }
  if (!best)
    throw std::domain_error(
        "small_annihilating_hom: no annihilating combination within the "
        "search bound (LLL block, scale 2^64)");
  return *best;
}

}  // namespace zpkit
