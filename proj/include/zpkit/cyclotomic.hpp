#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "zpkit/numeric.hpp"
#include "zpkit/polynomial.hpp"

namespace zpkit {

inline long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

// Phi_m via repeated exact division of x^m - 1 by Phi_d for proper d | m.
inline const IntPoly& cyclotomic_polynomial(long m) {
  static std::map<long, IntPoly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m < 1");
  std::vector<Int> xm(m + 1, 0);
  xm[0] = -1;
  xm[m] = 1;
  IntPoly p{std::move(xm)};
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
  return cache.emplace(m, std::move(p)).first->second;
}

// Element of Z[zeta_m] as a polynomial in zeta reduced mod Phi_m.
struct CycloElt {
  long m = 1;
  std::vector<Int> c;  // length phi(m), coefficient of zeta^i at index i

  explicit CycloElt(long order = 1)
      : m(order), c(static_cast<std::size_t>(euler_phi(order)), Int(0)) {}

  static CycloElt from_int(long order, const Int& v) {
    CycloElt e(order);
    e.c[0] = v;
    return e;
  }

  // zeta_m^k
  static CycloElt zeta_power(long order, long k) {
    CycloElt e(order);
    k %= order;
    if (k < 0) k += order;
    e.add_monomial(Int(1), k);
    return e;
  }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }

  // add v * zeta^k (k already reduced mod m), reducing mod Phi_m
  void add_monomial(const Int& v, long k) {
    long phi = static_cast<long>(c.size());
    if (k < phi) {
      c[k] += v;
      return;
    }
    // zeta^k with k >= phi(m): reduce via Phi_m(zeta) = 0
    // maintain a scratch dense vector up to degree k
    std::vector<Int> t(k + 1, 0);
    t[k] = v;
    reduce_dense(t);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += t[i];
  }

  void reduce_dense(std::vector<Int>& t) const {
    const IntPoly& phi = cyclotomic_polynomial(m);
    int d = phi.degree();
    for (int k = static_cast<int>(t.size()) - 1; k >= d; --k) {
      if (t[k] == 0) continue;
      Int f = t[k];  // phi is monic
      for (int j = 0; j <= d; ++j) t[k - d + j] -= f * phi.coeff(j);
    }
    t.resize(d);
  }

  CycloElt operator+(const CycloElt& o) const {
    CycloElt r(m);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  CycloElt operator-(const CycloElt& o) const {
    CycloElt r(m);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  CycloElt operator*(const CycloElt& o) const {
    std::vector<Int> t(c.size() + o.c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < o.c.size(); ++j) t[i + j] += c[i] * o.c[j];
    }
    reduce_dense(t);
    CycloElt r(m);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = t[i];
    return r;
  }
  CycloElt operator*(const Int& s) const {
    CycloElt r(m);
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] * s;
    return r;
  }
  CycloElt& operator+=(const CycloElt& o) { return *this = *this + o; }
  CycloElt& operator-=(const CycloElt& o) { return *this = *this - o; }

  bool operator==(const CycloElt& o) const { return m == o.m && c == o.c; }

  // Galois action zeta -> zeta^u, gcd(u, m) = 1
  CycloElt galois(long u) const {
    CycloElt r(m);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      r.add_monomial(c[i], (static_cast<long>(i) * u) % m);
    }
    return r;
  }

  Cplx to_complex() const {
    Real pi = pi_value();
    Cplx s(Real(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Real ang = 2 * pi * Real(static_cast<long>(i)) / m;
      s += Cplx(cos(ang), sin(ang)) * Cplx(to_real(c[i]));
    }
    return s;
  }
};

}  // namespace zpkit
