#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpkit/algebraic.hpp"
#include "zpkit/lattice.hpp"
#include "zpkit/numeric.hpp"
#include "zpkit/roots.hpp"

namespace zpkit {

struct KHeightValue {
  long k;
  bool finite;
  Int value;  // >= 1 when finite
};

// H_k: minimal max|a_i| over nonzero integer polynomials of degree <= k
// vanishing at the number. For degree d < k the minimum ranges over integer
// cofactor multiples of the minimal polynomial (Gauss), searched inside a
// Mignotte-style coefficient box.
inline KHeightValue k_height(const AlgebraicNumber& y, long k,
                             long search_limit = 20000000) {
  if (k < 1) throw std::invalid_argument("k_height: k < 1");
  int d = y.degree();
  if (d > k) return {k, false, Int(0)};
  const IntPoly& m = y.minpoly;
  Int mmax = 0;
  for (int i = 0; i <= d; ++i) {
    Int a = abs(m.coeff(i));
    if (a > mmax) mmax = a;
  }
  if (d == k) return {k, true, mmax};  // only constant cofactors
  // cofactor degree q <= k - d; any better multiple has cofactor inside
  // |q_i| <= 2^q sqrt(k+1) * current best
  Int best = mmax;
  int qdeg = static_cast<int>(k) - d;
  Int bound = best * (Int(1) << qdeg) * 2;  // 2 >= sqrt(k+1) for k <= 3
  // search space audit
  Real space = 1;
  for (int i = 0; i <= qdeg; ++i) space *= to_real(Int(2 * bound + 1));
  if (space > Real(search_limit))
    throw std::domain_error("k_height: cofactor search space exceeds limit");
  std::vector<Int> q(qdeg + 1, -bound);
  while (true) {
    bool zero = true;
    for (const auto& x : q)
      if (x != 0) zero = false;
    if (!zero) {
      IntPoly prod = m * IntPoly(std::vector<Int>(q.begin(), q.end()));
      Int mx = 0;
      for (int i = 0; i <= prod.degree(); ++i) {
        Int a = abs(prod.coeff(i));
        if (a > mx) mx = a;
      }
      if (mx < best) best = mx;
    }
    int pos = 0;
    while (pos <= qdeg && q[pos] == bound) {
      q[pos] = -bound;
      ++pos;
    }
    if (pos > qdeg) break;
    q[pos] += 1;
  }
  return {k, true, best};
}

// Real algebraic numbers of degree <= k and k-height <= T inside [lo, hi],
// each exactly once, ordered by value.
inline std::vector<AlgebraicNumber> enumerate_bounded(
    long k, long T, const Rat& lo, const Rat& hi,
    long coeff_limit = 20000000) {
  if (k < 1 || k > 3)
    throw std::domain_error("enumerate_bounded: k outside {1,2,3}");
  if (T < 1 || T > 10000)
    throw std::domain_error("enumerate_bounded: T outside [1, 10^4]");
  if (lo > hi) throw std::invalid_argument("enumerate_bounded: empty box");
  std::vector<AlgebraicNumber> out;
  if (k == 1) {
    // p/q with gcd(p, q) = 1, max(|p|, q) <= T
    for (long q = 1; q <= T; ++q) {
      // ceil(lo * q) .. floor(hi * q)
      Int pn = numerator(lo) * q, pd = denominator(lo);
      Int pmin = pn / pd;
      if (pmin * pd < pn) pmin += 1;  // toward +inf
      Int qn = numerator(hi) * q, qd = denominator(hi);
      Int pmax = qn / qd;
      if (pmax * qd > qn) pmax -= 1;  // toward -inf
      for (Int p = pmin; p <= pmax; ++p) {
        if (abs(p) > T) continue;
        if (gcd(abs(p), Int(q)) != 1) continue;
        out.push_back(AlgebraicNumber::from_rational(Rat(p, q)));
      }
    }
  } else {
    Real space = 1;
    for (long i = 0; i <= k; ++i) space *= 2 * T + 1;
    if (space > Real(coeff_limit))
      throw std::domain_error(
          "enumerate_bounded: coefficient box exceeds resource limit");
    Real rlo = to_real(lo), rhi = to_real(hi);
    Real sep = eps_at(precision_bits() / 2);
    std::map<std::pair<std::vector<std::string>, long>, AlgebraicNumber> seen;
    std::vector<Int> a(k + 1, -T);
    while (true) {
      IntPoly p{std::vector<Int>(a.begin(), a.end())};
      if (p.degree() >= 1) {
        for (const auto& f : factor_int_poly(p)) {
          if (f.degree() > k) continue;  // cannot happen, defensive
          // canonical sign: positive leading coefficient
          IntPoly g = f.leading() > 0 ? f : f * IntPoly{Int(-1)};
          std::vector<Real> roots = real_roots(g);
          std::vector<std::string> key;
          for (int i = 0; i <= g.degree(); ++i)
            key.push_back(g.coeff(i).str());
          for (long ri = 0; ri < static_cast<long>(roots.size()); ++ri) {
            if (roots[ri] < rlo - sep || roots[ri] > rhi + sep) continue;
            auto it = seen.find({key, ri});
            if (it != seen.end()) continue;
            AlgebraicNumber num;
            num.minpoly = g;
            num.approx = Cplx(roots[ri]);
            seen.emplace(std::make_pair(key, ri), num);
          }
        }
      }
      int pos = 0;
      while (pos <= k && a[pos] == T) {
        a[pos] = -T;
        ++pos;
      }
      if (pos > k) break;
      a[pos] += 1;
    }
    for (auto& [key, num] : seen) out.push_back(std::move(num));
  }
  std::sort(out.begin(), out.end(),
            [](const AlgebraicNumber& x, const AlgebraicNumber& y) {
              return x.approx.re < y.approx.re;
            });
  return out;
}

// Fiber of a definable set over a first-coordinate value.
struct FiberResult {
  bool non_isolated = false;  // positive-dimensional fiber detected
  std::vector<Rat> points;    // exact isolated fiber points
};

// A definable subset of R^m x R^n given by a residual-style membership
// predicate plus an optional exact fiber hook over rational first
// coordinates. The demos in scope use m = n = 1.
struct DefinableSample {
  int m = 1, n = 1;
  Rat box_lo, box_hi;  // box for the height-restricted coordinate
  std::function<Real(const RealVec&)> membership;  // residual; <= tol accepted
  std::function<FiberResult(const Rat&)> fiber;    // optional exact fibers
  Real tolerance = Real("1e-9");
};

struct CountResult {
  long k, T;
  long count = 0;
  std::string mode;  // full | isolated | pi2-image
  std::vector<std::pair<Rat, Rat>> witnesses;
  Real min_margin;            // closest approach to the tolerance boundary
  bool non_isolated = false;  // some fiber was positive-dimensional
};

namespace detail {

inline void margin_update(CountResult& r, const Real& residual,
                          const Real& tol) {
  Real gap = abs(residual - tol);
  if (r.min_margin < 0 || gap < r.min_margin) r.min_margin = gap;
}

}  // namespace detail

// N(Z, k, T): tuples in Z whose coordinates are algebraic of k-height <= T.
// First coordinates come from enumeration over the box; second coordinates
// from the exact fiber hook when present, otherwise from enumeration over
// the same box with the membership residual deciding.
inline CountResult count_points(const DefinableSample& z, long k, long T,
                                bool keep_witnesses = false) {
  if (z.m != 1 || z.n != 1)
    throw std::domain_error("count_points: only m = n = 1 is supported");
  if (!z.membership) throw std::invalid_argument("count_points: no predicate");
  CountResult res;
  res.k = k;
  res.T = T;
  res.mode = "full";
  res.min_margin = -1;
  std::vector<AlgebraicNumber> ys =
      enumerate_bounded(k, T, z.box_lo, z.box_hi);
  if (z.fiber) {
    for (const auto& y : ys) {
      if (!y.is_rational()) continue;  // exact fibers are over rationals
      Rat yq = y.as_rational();
      FiberResult f = z.fiber(yq);
      if (f.non_isolated) {
        res.non_isolated = true;
        continue;  // isolated-point semantics: skip the continuum
      }
      for (const auto& zq : f.points) {
        AlgebraicNumber zn = AlgebraicNumber::from_rational(zq);
        KHeightValue h = k_height(zn, k);
        if (!h.finite || h.value > T) continue;
        Real residual = z.membership(RealVec{to_real(yq), to_real(zq)});
        detail::margin_update(res, residual, z.tolerance);
        if (residual > z.tolerance) continue;
        res.count += 1;
        if (keep_witnesses) res.witnesses.emplace_back(yq, zq);
      }
    }
  } else {
    for (const auto& y : ys)
      for (const auto& w : ys) {
        Real residual = z.membership(RealVec{y.approx.re, w.approx.re});
        detail::margin_update(res, residual, z.tolerance);
        if (residual > z.tolerance) continue;
        res.count += 1;
        if (keep_witnesses && y.is_rational() && w.is_rational())
          res.witnesses.emplace_back(y.as_rational(), w.as_rational());
      }
  }
  return res;
}

// #pi_2 of the semi-rational part: only the first coordinate is
// height-restricted; counts distinct isolated fiber points.
inline CountResult semi_rational_count(const DefinableSample& z, long k,
                                       long T, bool keep_witnesses = false) {
  if (z.m != 1 || z.n != 1)
    throw std::domain_error("semi_rational_count: only m = n = 1 supported");
  if (!z.fiber)
    throw std::invalid_argument("semi_rational_count: needs the fiber hook");
  CountResult res;
  res.k = k;
  res.T = T;
  res.mode = "pi2-image";
  res.min_margin = -1;
  std::vector<AlgebraicNumber> ys =
      enumerate_bounded(k, T, z.box_lo, z.box_hi);
  std::vector<Rat> images;
  for (const auto& y : ys) {
    if (!y.is_rational()) continue;
    Rat yq = y.as_rational();
    FiberResult f = z.fiber(yq);
    if (f.non_isolated) {
      res.non_isolated = true;
      res.mode = "isolated";
      continue;
    }
    for (const auto& zq : f.points) {
      if (z.membership) {
        Real residual = z.membership(RealVec{to_real(yq), to_real(zq)});
        detail::margin_update(res, residual, z.tolerance);
        if (residual > z.tolerance) continue;
      }
      images.push_back(zq);
      if (keep_witnesses) res.witnesses.emplace_back(yq, zq);
    }
  }
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  res.count = static_cast<long>(images.size());
  return res;
}

struct GrowthFit {
  Real epsilon_hat;  // slope of log count vs log T
  Real log_c_hat;    // intercept
  RealVec residuals;
};

// least-squares fit of log(count) against log(T)
inline GrowthFit growth_fit(const std::vector<std::pair<long, long>>& counts) {
  std::vector<std::pair<Real, Real>> pts;
  std::vector<long> seen_t;
  for (const auto& [t, c] : counts) {
    if (t < 1 || c < 1) continue;
    pts.emplace_back(log(Real(t)), log(Real(c)));
    seen_t.push_back(t);
  }
  std::sort(seen_t.begin(), seen_t.end());
  seen_t.erase(std::unique(seen_t.begin(), seen_t.end()), seen_t.end());
  if (seen_t.size() < 3)
    throw std::invalid_argument(
        "growth_fit: need at least 3 distinct T with positive counts");
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  Real n = Real(static_cast<long>(pts.size()));
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  Real denom = n * sxx - sx * sx;
  if (denom == 0) {
    // all T identical cannot happen (>= 3 distinct), defensive
    throw std::invalid_argument("growth_fit: degenerate abscissae");
  }
  GrowthFit out;
  out.epsilon_hat = (n * sxy - sx * sy) / denom;
  out.log_c_hat = (sy - out.epsilon_hat * sx) / n;
  for (const auto& [x, y] : pts)
    out.residuals.push_back(y - (out.epsilon_hat * x + out.log_c_hat));
  return out;
}

}  // namespace zpkit
