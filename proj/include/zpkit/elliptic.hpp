#pragma once

#include <stdexcept>
#include <vector>

#include "zpkit/numeric.hpp"

namespace zpkit {

// Rational point on a short Weierstrass curve, or the point at infinity.
struct ECPoint {
  bool infinity = true;
  Rat x, y;

  ECPoint() = default;
  ECPoint(Rat x_, Rat y_) : infinity(false), x(std::move(x_)), y(std::move(y_)) {}

  bool operator==(const ECPoint& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
};

struct EllipticCurveQ {
  Rat a, b;  // y^2 = x^3 + a x + b

  EllipticCurveQ(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {
    if (4 * a * a * a + 27 * b * b == 0)
      throw std::invalid_argument("EllipticCurveQ: singular curve");
  }

  bool on_curve(const ECPoint& p) const {
    if (p.infinity) return true;
    return p.y * p.y == p.x * p.x * p.x + a * p.x + b;
  }

  ECPoint neg(const ECPoint& p) const {
    if (p.infinity) return p;
    return ECPoint(p.x, -p.y);
  }

  ECPoint add(const ECPoint& p, const ECPoint& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    if (p.x == q.x) {
      if (p.y == -q.y) return ECPoint();  // vertical chord / order-2 tangent
      // doubling
      Rat lam = (3 * p.x * p.x + a) / (2 * p.y);
      Rat x3 = lam * lam - 2 * p.x;
      return ECPoint(x3, lam * (p.x - x3) - p.y);
    }
    Rat lam = (q.y - p.y) / (q.x - p.x);
    Rat x3 = lam * lam - p.x - q.x;
    return ECPoint(x3, lam * (p.x - x3) - p.y);
  }

  ECPoint dbl(const ECPoint& p) const { return add(p, p); }

  ECPoint mul(long n, ECPoint p) const {
    if (n < 0) {
      n = -n;
      p = neg(p);
    }
    ECPoint r;
    while (n > 0) {
      if (n & 1) r = add(r, p);
      p = dbl(p);
      n >>= 1;
    }
    return r;
  }

  // rational torsion has order at most 12, so a direct multiple test decides
  bool is_torsion(const ECPoint& p) const {
    if (!on_curve(p)) throw std::invalid_argument("is_torsion: not on curve");
    for (long n = 1; n <= 12; ++n)
      if (mul(n, p).infinity) return true;
    return false;
  }
};

namespace detail {

// x-coordinate duplication on y^2 = x^3 + ax + b as a map on numerator and
// denominator, with gcd reduction each step
struct XFrac {
  Int num, den;  // x = num / den, den > 0
};

inline XFrac x_double(const XFrac& v, const Rat& ar, const Rat& br) {
  // clear the curve coefficients to integers once per call
  Int ad = denominator(ar), an = numerator(ar);
  Int bd = denominator(br), bn = numerator(br);
  Int l = lcm(ad, bd);
  Int A = an * (l / ad), B = bn * (l / bd);  // a = A/l, b = B/l
  const Int& p = v.num;
  const Int& q = v.den;
  // x' = (x^4 - 2 a x^2 - 8 b x + a^2) / (4 (x^3 + a x + b)), homogenized
  Int p2 = p * p, q2 = q * q;
  Int num = l * l * p2 * p2 - 2 * A * l * p2 * q2 - 8 * B * l * p * q * q2 +
            A * A * q2 * q2;
  Int den = 4 * l * q * (l * p2 * p + A * p * q2 + B * q * q2);
  Int g = gcd(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

inline Real naive_height(const XFrac& v) {
  Int p = abs(v.num);
  const Int& q = v.den;
  const Int& m = p > q ? p : q;
  if (m == 0) return Real(0);
  return log_int(m);
}

}  // namespace detail

struct CanonicalHeightResult {
  Real value;
  int iterations;
  Real tail_bound;  // estimated truncation error of the doubling limit
};

// Neron-Tate height as the doubling limit lim 4^{-n} h(x(2^n P)) with exact
// rational duplication. The per-step corrections delta_n = h(x_{n+1}) -
// 4 h(x_n) are uniformly bounded; we track the observed envelope
// B = max_k |delta_k| and stop once the implied tail B * 4^{-n} / 3 drops
// below the tolerance. Termination decisions are evaluated at a fixed
// internal precision so the truncation point does not depend on the
// caller's working precision.
inline CanonicalHeightResult canonical_height(const EllipticCurveQ& e,
                                              const ECPoint& p,
                                              Real tolerance = Real("1e-6"),
                                              int max_doublings = 12) {
  if (!e.on_curve(p))
    throw std::invalid_argument("canonical_height: point not on curve");
  if (p.infinity || e.is_torsion(p)) return {Real(0), 0, Real(0)};
  PrecisionGuard guard(precision_bits() < 256 ? 256 : precision_bits());
  detail::XFrac x{Int(numerator(p.x)), Int(denominator(p.x))};
  if (x.den < 0) {
    x.num = -x.num;
    x.den = -x.den;
  }
  Real scale = 1;
  Real prev = detail::naive_height(x);
  Real envelope = 1;  // bound on |delta_k|, refined from observations
  Real tail = 0;
  int n = 0;
  for (; n < max_doublings; ++n) {
    x = detail::x_double(x, e.a, e.b);
    if (x.den == 0)
      throw std::runtime_error("canonical_height: hit a 2-division pole");
    scale /= 4;
    Real cur = scale * detail::naive_height(x);
    Real delta = abs(cur - prev) / scale;  // |delta_n| = 4^{n+1} |c_{n+1}-c_n|
    if (delta > envelope) envelope = delta;
    prev = cur;
    tail = envelope * scale / 3;
    if (n >= 3 && tail < tolerance) break;
  }
  CanonicalHeightResult out;
  out.iterations = n + 1;
  out.tail_bound = tail;
  out.value = prev;
  return out;
}

}  // namespace zpkit
