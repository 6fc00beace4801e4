#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace zpkit {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

// Working precision for Real, in bits. Tracked separately because
// boost expresses default_precision in decimal digits.
inline int& precision_bits_ref() {
  static int bits = 128;
  return bits;
}

inline void set_precision_bits(int bits) {
  if (bits < 24) throw std::invalid_argument("precision_bits too small");
  precision_bits_ref() = bits;
  Real::default_precision(static_cast<unsigned>(bits * 0.30103) + 2);
}

inline int precision_bits() { return precision_bits_ref(); }

struct PrecisionGuard {
  int saved;
  explicit PrecisionGuard(int bits) : saved(precision_bits()) {
    set_precision_bits(bits);
  }
  ~PrecisionGuard() { set_precision_bits(saved); }
};

inline Real pi_value() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

inline Real eps_at(int bits) { return pow(Real(2), -bits); }

struct Cplx {
  Real re, im;
  Cplx() : re(0), im(0) {}
  Cplx(Real r) : re(std::move(r)), im(0) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Cplx(double r) : re(r), im(0) {}
  Cplx(double r, double i) : re(r), im(i) {}

  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator-() const { return {-re, -im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx operator/(const Cplx& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Cplx& operator+=(const Cplx& o) { return *this = *this + o; }
  Cplx& operator-=(const Cplx& o) { return *this = *this - o; }
  Cplx& operator*=(const Cplx& o) { return *this = *this * o; }

  Cplx conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
};

inline Real abs(const Cplx& z) { return sqrt(z.norm2()); }

inline Cplx conj(const Cplx& z) { return z.conj(); }

inline Cplx exp(const Cplx& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

inline Cplx pow_n(Cplx base, long e) {
  Cplx r(Real(1));
  bool inv = e < 0;
  unsigned long k = inv ? -static_cast<unsigned long>(e) : e;
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return inv ? Cplx(Real(1)) / r : r;
}

inline Real to_real(const Int& z) { return Real(z.backend().data()); }
inline Real to_real(const Rat& q) {
  return to_real(Int(numerator(q))) / to_real(Int(denominator(q)));
}

inline Int round_to_int(const Real& x) {
  Real r = floor(x + Real(1) / 2);
  Int z;
  mpfr_get_z(z.backend().data(), r.backend().data(), MPFR_RNDN);
  return z;
}

// log of a positive integer, valid for operands far larger than the
// working precision (mpfr reads the full mpz).
inline Real log_int(const Int& z) {
  if (z <= 0) throw std::domain_error("log_int: nonpositive");
  return log(to_real(z));
}

}  // namespace zpkit
