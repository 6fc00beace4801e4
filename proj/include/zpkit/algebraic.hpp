#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "zpkit/numeric.hpp"
#include "zpkit/polynomial.hpp"
#include "zpkit/roots.hpp"

namespace zpkit {

namespace detail {

// Search for a proper integer factor via subset products of the roots.
// Sound at desk scale: any candidate factor is verified by exact division.
inline std::optional<IntPoly> subset_factor(const IntPoly& p) {
  IntPoly f = primitive_poly(p);
  int d = f.degree();
  if (d <= 1) return std::nullopt;
  if (f.coeff(0) == 0) return IntPoly{Int(0), Int(1)};  // x divides
  if (d > 24) throw std::domain_error("subset_factor: degree too large");
  std::vector<Cplx> roots = complex_roots(f);
  Real lead = to_real(f.leading());
  for (int size = 1; size <= d / 2; ++size) {
    for (unsigned long mask = 0; mask < (1ul << d); ++mask) {
      if (__builtin_popcountl(mask) != size) continue;
      // lc * prod (x - r_i) over the subset, rounded to integers
      std::vector<Cplx> cf{Cplx(lead)};
      for (int i = 0; i < d; ++i) {
        if (!(mask >> i & 1)) continue;
        std::vector<Cplx> next(cf.size() + 1, Cplx(Real(0)));
        for (std::size_t j = 0; j < cf.size(); ++j) {
          next[j + 1] += cf[j];
          next[j] -= cf[j] * roots[i];
        }
        cf = next;
      }
      std::vector<Int> ic(cf.size());
      bool plausible = true;
      for (std::size_t j = 0; j < cf.size(); ++j) {
        if (abs(cf[j].im) > Real(1) / 4) {
          plausible = false;
          break;
        }
        ic[j] = round_to_int(cf[j].re);
        if (abs(cf[j].re - to_real(ic[j])) > Real(1) / 4) {
          plausible = false;
          break;
        }
      }
      if (!plausible) continue;
      IntPoly cand = primitive_poly(IntPoly(std::move(ic)));
      if (cand.degree() < 1 || cand.degree() >= d) continue;
      try {
        poly_div_exact(f, cand);
        return cand;
      } catch (const std::domain_error&) {
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline bool is_irreducible(const IntPoly& p) {
  IntPoly f = primitive_poly(p);
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  if (poly_gcd(f, f.derivative()).degree() > 0) return false;
  return !detail::subset_factor(f).has_value();
}

// Full factorization into irreducible primitive factors (with multiplicity).
inline std::vector<IntPoly> factor_int_poly(IntPoly p) {
  std::vector<IntPoly> out;
  p = primitive_poly(p);
  if (p.degree() < 1) return out;
  std::vector<IntPoly> stack{p};
  while (!stack.empty()) {
    IntPoly f = stack.back();
    stack.pop_back();
    if (f.degree() < 1) continue;
    IntPoly sq = poly_gcd(f, f.derivative());
    if (sq.degree() > 0) {
      stack.push_back(sq);
      stack.push_back(poly_div_exact(f, sq));
      continue;
    }
    auto g = detail::subset_factor(f);
    if (!g) {
      out.push_back(f);
    } else {
      stack.push_back(*g);
      stack.push_back(poly_div_exact(f, *g));
    }
  }
  return out;
}

// Exact algebraic number: primitive irreducible minimal polynomial plus a
// complex approximation selecting the root.
struct AlgebraicNumber {
  IntPoly minpoly;
  Cplx approx;

  int degree() const { return minpoly.degree(); }
  bool is_rational() const { return degree() == 1; }
  Rat as_rational() const {
    if (!is_rational()) throw std::domain_error("not rational");
    return Rat(-minpoly.coeff(0), minpoly.coeff(1));
  }

  static AlgebraicNumber from_rational(const Rat& q) {
    AlgebraicNumber a;
    a.minpoly = IntPoly{Int(-numerator(q)), Int(denominator(q))};
    a.approx = Cplx(to_real(q));
    return a;
  }

  // the irreducible factor of p vanishing at the given approximation
  static AlgebraicNumber from_root(const IntPoly& p, const Cplx& z) {
    AlgebraicNumber best;
    Real best_val;
    bool have = false;
    for (const auto& f : factor_int_poly(p)) {
      Cplx v = f.template eval<Cplx>(z);
      Real m = abs(v);
      if (!have || m < best_val) {
        best.minpoly = f;
        best_val = m;
        have = true;
      }
    }
    if (!have) throw std::domain_error("from_root: constant polynomial");
    // snap the approximation to the closest root of the minimal polynomial
    Real bd;
    bool first = true;
    for (const auto& r : complex_roots(best.minpoly)) {
      Real dd = abs(r - z);
      if (first || dd < bd) {
        best.approx = r;
        bd = dd;
        first = false;
      }
    }
    return best;
  }
};

inline bool is_root_of_unity_poly(const IntPoly& f) {
  // irreducible f is the minimal polynomial of a root of unity iff it is
  // cyclotomic; desk-scale test: all roots on the unit circle and f monic
  if (f.leading() != 1) return false;
  if (f.degree() == 1) return f.coeff(0) == 1 || f.coeff(0) == -1;
  Real tol = eps_at(precision_bits() / 2);
  for (const auto& r : complex_roots(f))
    if (abs(abs(r) - 1) > tol) return false;
  return true;
}

// Absolute logarithmic Weil height via the Mahler measure:
// h(a) = (1/d) (log|lead| + sum log max(1, |root|)).
inline Real weil_height(const AlgebraicNumber& a) {
  const IntPoly& f = a.minpoly;
  if (f.degree() < 1) throw std::domain_error("weil_height: constant");
  if (content(f) != 1)
    throw std::domain_error("weil_height: polynomial not primitive");
  if (!is_irreducible(f))
    throw std::domain_error("weil_height: reducible polynomial");
  if (f.degree() == 1) {
    Rat q = a.as_rational();
    if (q == 0) return Real(0);
    Int p = abs(Int(numerator(q)));
    Int d = abs(Int(denominator(q)));
    return log_int(p > d ? p : d);
  }
  if (is_root_of_unity_poly(f)) return Real(0);
  Real s = log_int(abs(f.leading()));
  for (const auto& r : complex_roots(f)) {
    Real m = abs(r);
    if (m > 1) s += log(m);
  }
  return s / f.degree();
}

}  // namespace zpkit
