#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "zpkit/numeric.hpp"

namespace zpkit {

// Dense univariate polynomial, coefficient of x^i at index i.
template <typename T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  Poly(std::initializer_list<T> init) : c(init) { trim(); }
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  T coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : T(0);
  }
  T leading() const { return c.empty() ? T(0) : c.back(); }

  bool operator==(const Poly& o) const { return c == o.c; }

  Poly operator+(const Poly& o) const {
    std::vector<T> r(std::max(c.size(), o.c.size()), T(0));
    for (std::size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<T> r(std::max(c.size(), o.c.size()), T(0));
    for (std::size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return Poly(std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<T> r(c.size() + o.c.size() - 1, T(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    }
    return Poly(std::move(r));
  }
  Poly operator*(const T& s) const {
    std::vector<T> r = c;
    for (auto& x : r) x *= s;
    return Poly(std::move(r));
  }
  Poly operator-() const { return *this * T(-1); }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<T> r(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * T(static_cast<long>(i));
    return Poly(std::move(r));
  }

  template <typename U>
  U eval(const U& x) const {
    U r(0);
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + U(c[i]);
    return r;
  }

  Poly shifted(int k) const {  // multiply by x^k, k >= 0
    if (is_zero()) return *this;
    std::vector<T> r(c.size() + k, T(0));
    for (std::size_t i = 0; i < c.size(); ++i) r[i + k] = c[i];
    return Poly(std::move(r));
  }

  static Poly x_power(int k) {
    std::vector<T> r(k + 1, T(0));
    r[k] = 1;
    return Poly(std::move(r));
  }
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

inline Int content(const IntPoly& p) {
  Int g = 0;
  for (const auto& x : p.c) g = gcd(g, x);
  return g;
}

inline IntPoly primitive_poly(IntPoly p) {
  Int g = content(p);
  if (g > 1)
    for (auto& x : p.c) x /= g;
  if (!p.c.empty() && p.c.back() < 0)
    for (auto& x : p.c) x = -x;
  return p;
}

inline RatPoly to_rat(const IntPoly& p) {
  std::vector<Rat> r(p.c.size());
  for (std::size_t i = 0; i < p.c.size(); ++i) r[i] = Rat(p.c[i]);
  return RatPoly(std::move(r));
}

inline IntPoly clear_denominators(const RatPoly& p) {
  Int l = 1;
  for (const auto& q : p.c) l = lcm(l, Int(denominator(q)));
  std::vector<Int> r(p.c.size());
  for (std::size_t i = 0; i < p.c.size(); ++i)
    r[i] = Int(numerator(p.c[i])) * (l / Int(denominator(p.c[i])));
  return IntPoly(std::move(r));
}

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("poly divmod by zero");
  RatPoly r = a;
  std::vector<Rat> q(std::max(0, a.degree() - b.degree() + 1), Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Rat f = r.leading() / b.leading();
    int k = r.degree() - b.degree();
    q[k] = f;
    RatPoly sub = b.shifted(k) * f;
    r = r - sub;
  }
  return {RatPoly(std::move(q)), r};
}

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = b;
    b = r;
  }
  if (!a.is_zero()) {
    Rat l = a.leading();
    for (auto& x : a.c) x /= l;  // monic
  }
  return a;
}

// gcd of integer polynomials, primitive result
inline IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_poly(b);
  if (b.is_zero()) return primitive_poly(a);
  RatPoly g = poly_gcd(to_rat(a), to_rat(b));
  return primitive_poly(clear_denominators(g));
}

// exact division; throws if not divisible
inline IntPoly poly_div_exact(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divmod(to_rat(a), to_rat(b));
  if (!r.is_zero()) throw std::domain_error("poly_div_exact: not divisible");
  for (const auto& x : q.c)
    if (denominator(x) != 1)
      throw std::domain_error("poly_div_exact: nonintegral quotient");
  return clear_denominators(q);
}

inline IntPoly square_free_part(const IntPoly& p) {
  if (p.degree() <= 1) return primitive_poly(p);
  IntPoly g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return primitive_poly(p);
  return primitive_poly(poly_div_exact(primitive_poly(p), g));
}

// ---- integer power series (truncated, coefficient of q^i at index i) ----

inline std::vector<Int> series_mul(const std::vector<Int>& a,
                                   const std::vector<Int>& b, int n) {
  std::vector<Int> r(n, 0);
  for (int i = 0; i < std::min<int>(n, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j + i < n && j < static_cast<int>(b.size()); ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

// inverse of a series with constant term 1
inline std::vector<Int> series_inverse(const std::vector<Int>& a, int n) {
  if (a.empty() || a[0] != 1)
    throw std::domain_error("series_inverse: constant term must be 1");
  std::vector<Int> r(n, 0);
  r[0] = 1;
  for (int k = 1; k < n; ++k) {
    Int s = 0;
    for (int j = 1; j <= k && j < static_cast<int>(a.size()); ++j)
      s += a[j] * r[k - j];
    r[k] = -s;
  }
  return r;
}

inline std::vector<Int> series_pow(std::vector<Int> base, int e, int n) {
  std::vector<Int> r(n, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = series_mul(r, base, n);
    base = series_mul(base, base, n);
    e >>= 1;
  }
  return r;
}

}  // namespace zpkit
