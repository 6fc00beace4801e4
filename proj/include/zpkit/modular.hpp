#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include <cmath>

#include "zpkit/cyclotomic.hpp"
#include "zpkit/intmat.hpp"
#include "zpkit/lattice.hpp"
#include "zpkit/numeric.hpp"
#include "zpkit/polynomial.hpp"

namespace zpkit {

struct UpperHalfPoint {
  Cplx value;
  explicit UpperHalfPoint(Cplx z) : value(std::move(z)) {
    if (!(value.im > 0))
      throw std::invalid_argument("UpperHalfPoint: Im(z) must be positive");
  }
};

// 2x2 integer matrix acting by fractional linear transformation
inline Cplx moebius_apply(const IntMat& g, const Cplx& z) {
  Cplx num = Cplx(to_real(g[0][0])) * z + Cplx(to_real(g[0][1]));
  Cplx den = Cplx(to_real(g[1][0])) * z + Cplx(to_real(g[1][1]));
  return num / den;
}

struct FundamentalDomainResult {
  Cplx z;       // |Re| <= 1/2, |z| >= 1
  IntMat gamma; // det 1, z = gamma . input
};

inline FundamentalDomainResult reduce_to_fundamental_domain(
    const UpperHalfPoint& zin) {
  Cplx z = zin.value;
  IntMat gamma = identity_mat(2);
  for (int iter = 0; iter < 10000; ++iter) {
    Int t = round_to_int(z.re);
    if (t != 0) {
      z.re -= to_real(t);
      // translation by -t on the left
      gamma[0][0] -= t * gamma[1][0];
      gamma[0][1] -= t * gamma[1][1];
    }
    if (z.norm2() < 1) {
      z = -(Cplx(Real(1)) / z);
      // S = [[0,-1],[1,0]] on the left: rows (r0, r1) -> (-r1, r0)
      std::swap(gamma[0], gamma[1]);
      for (auto& x : gamma[0]) x = -x;
    } else {
      break;
    }
  }
  // recompute at full precision from the accumulated matrix
  FundamentalDomainResult out;
  out.gamma = gamma;
  out.z = moebius_apply(gamma, zin.value);
  return out;
}

// ---- j-function q-expansion, exact integer coefficients ----

// coefficients c_k of j = 1/q + 744 + 196884 q + ..., index i = k + 1
inline const std::vector<Int>& j_series(int terms) {
  static std::vector<Int> cache;
  if (static_cast<int>(cache.size()) >= terms) return cache;
  int n = terms + 8;
  // Euler function by the pentagonal number theorem
  std::vector<Int> euler(n, 0);
  euler[0] = 1;
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2;
    long g2 = k * (3 * k + 1) / 2;
    if (g1 >= n && g2 >= n) break;
    Int s = (k % 2) ? -1 : 1;
    if (g1 < n) euler[g1] += s;
    if (g2 < n) euler[g2] += s;
  }
  std::vector<Int> eta24 = series_pow(euler, 24, n);
  std::vector<Int> e4(n, 0);
  e4[0] = 1;
  for (long m = 1; m < n; ++m) {
    Int s3 = 0;
    for (long d = 1; d <= m; ++d)
      if (m % d == 0) s3 += Int(d) * d * d;
    e4[m] = 240 * s3;
  }
  std::vector<Int> num = series_mul(series_mul(e4, e4, n), e4, n);
  cache = series_mul(num, series_inverse(eta24, n), n);  // c_{k}, k = i - 1
  cache.resize(n);
  return cache;
}

struct JEvalResult {
  Cplx value;
  int terms;        // number of q-powers used (beyond the pole term)
  Real tail_bound;  // rigorous bound on the dropped tail
};

// j(z) by fundamental-domain reduction and truncated q-expansion with the
// coefficient bound |c_k| <= e^{4 pi sqrt(k)}.
inline JEvalResult j_eval(const UpperHalfPoint& zin,
                          int precision_bits_req = 0) {
  int bits = precision_bits_req > 0 ? precision_bits_req : precision_bits();
  PrecisionGuard guard(bits + 32);
  FundamentalDomainResult red = reduce_to_fundamental_domain(zin);
  Real pi = pi_value();
  Real qabs = exp(-2 * pi * red.z.im);
  Real logq = -2 * pi * red.z.im;  // log |q| < 0
  // choose K with K log(1/|q|) - 4 pi sqrt(K) >= bits log 2 + margin
  Real target = Real(bits + 8) * log(Real(2));
  int K = 4;
  while (K < 4000 && -Real(K) * logq - 4 * pi * sqrt(Real(K)) < target) ++K;
  if (K >= 4000)
    throw std::domain_error(
        "j_eval: requested precision unattainable at the truncation cap; "
        "lower precision_bits or increase the cap");
  const std::vector<Int>& c = j_series(K + 2);
  Cplx q = exp(Cplx(Real(0), 2 * pi) * red.z);
  // Horner over k = K down to -1; c[k+1] is the q^k coefficient
  Cplx val(Real(0));
  for (int k = K; k >= -1; --k) val = val * q + Cplx(to_real(c[k + 1]));
  val = val / q;  // the Horner sum computed q * (actual series)
  JEvalResult out;
  out.terms = K;
  // tail: sum_{k>K} e^{4 pi sqrt k} |q|^k, ratio bound e^{2 pi / sqrt K} |q|
  Real first = exp(4 * pi * sqrt(Real(K + 1)) + Real(K + 1) * logq);
  Real ratio = exp(2 * pi / sqrt(Real(K))) * qabs;
  out.tail_bound = ratio < 1 ? Real(first / (1 - ratio)) : Real(first * 1000000);
  {
    PrecisionGuard g2(bits);
    out.value = Cplx(Real(val.re), Real(val.im));
    out.tail_bound = Real(out.tail_bound);
  }
  return out;
}

// ---- quadratic points and scaling matrices ----

struct QuadraticPoint {
  Int a, b, c;  // a z^2 + b z + c = 0, a > 0, primitive
  QuadraticPoint(Int a_, Int b_, Int c_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a <= 0) throw std::invalid_argument("QuadraticPoint: need a > 0");
    if (gcd(gcd(a, b), c) != 1)
      throw std::invalid_argument("QuadraticPoint: polynomial not primitive");
    if (b * b - 4 * a * c >= 0)
      throw std::invalid_argument("QuadraticPoint: root not in H");
  }
  Cplx root() const {
    Real disc = to_real(Int(4 * a * c - b * b));
    return Cplx(-to_real(b) / (2 * to_real(a)),
                sqrt(disc) / (2 * to_real(a)));
  }
};

inline Int discriminant(const QuadraticPoint& q) {
  return q.b * q.b - 4 * q.a * q.c;
}

struct RationalScalingMatrix {
  IntMat entries;  // primitive integers, det > 0
  Int n_of_g;      // the determinant

  static RationalScalingMatrix from_rational(const std::vector<std::vector<Rat>>& g) {
    Int l = 1;
    for (const auto& row : g)
      for (const auto& x : row) l = lcm(l, Int(denominator(x)));
    IntMat m(2, IntVec(2));
    Int gc = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        m[i][j] = Int(numerator(g[i][j])) * (l / Int(denominator(g[i][j])));
        gc = gcd(gc, m[i][j]);
      }
    if (gc > 1)
      for (auto& row : m)
        for (auto& x : row) x /= gc;
    Int d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (d <= 0)
      throw std::invalid_argument("RationalScalingMatrix: determinant <= 0");
    RationalScalingMatrix out;
    out.entries = m;
    out.n_of_g = d;
    return out;
  }
  static RationalScalingMatrix identity() {
    return from_rational({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  }
};

// ---- modular polynomials, exact ----

inline long psi_degree(long n) {
  long r = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      r += r / p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) r += r / m;
  return r;
}

struct ModularPolynomial {
  long level;
  std::map<std::pair<int, int>, Int> terms;  // (deg X, deg Y) -> coeff

  Int coeff(int i, int j) const {
    auto it = terms.find({i, j});
    return it == terms.end() ? Int(0) : it->second;
  }

  Cplx eval(const Cplx& x, const Cplx& y) const {
    int dx = 0;
    for (const auto& [k, v] : terms) dx = std::max(dx, k.first);
    // Horner in X with inner polynomials in Y
    Cplx acc(Real(0));
    for (int i = dx; i >= 0; --i) {
      Cplx inner(Real(0));
      int dy = 0;
      for (const auto& [k, v] : terms)
        if (k.first == i) dy = std::max(dy, k.second);
      for (int j = dy; j >= 0; --j)
        inner = inner * y + Cplx(to_real(coeff(i, j)));
      acc = acc * x + inner;
    }
    return acc;
  }

  bool symmetric() const {
    for (const auto& [k, v] : terms)
      if (coeff(k.second, k.first) != v) return false;
    return true;
  }
};

namespace detail {

// Laurent series in w = q^{1/N} with coefficients in Z[zeta_N]:
// sum_i c[i] w^{val + i}, exact on the stored range [val, top()].
struct CycloSeries {
  long m;  // zeta order
  long val;
  std::vector<CycloElt> c;

  long top() const { return val + static_cast<long>(c.size()) - 1; }

  CycloElt at(long e) const {  // coefficient of w^e
    long i = e - val;
    if (i < 0 || i >= static_cast<long>(c.size())) return CycloElt(m);
    return c[i];
  }
};

// product, exact up to min(a.top + b.val, b.top + a.val)
inline CycloSeries cyclo_series_mul(const CycloSeries& a, const CycloSeries& b) {
  CycloSeries r;
  r.m = a.m;
  r.val = a.val + b.val;
  long rtop = std::min(a.top() + b.val, b.top() + a.val);
  long len = rtop - r.val + 1;
  if (len < 0) len = 0;
  r.c.assign(len, CycloElt(a.m));
  for (long i = 0; i < static_cast<long>(a.c.size()); ++i) {
    if (a.c[i].is_zero()) continue;
    for (long j = 0; j < static_cast<long>(b.c.size()); ++j) {
      long k = i + j;
      if (k >= len) break;
      if (b.c[j].is_zero()) continue;
      r.c[k] += a.c[i] * b.c[j];
    }
  }
  return r;
}

// sum, exact up to min of the operand tops
inline CycloSeries cyclo_series_sub(const CycloSeries& a, const CycloSeries& b) {
  CycloSeries r;
  r.m = a.m;
  r.val = std::min(a.val, b.val);
  long rtop = std::min(a.top(), b.top());
  long len = rtop - r.val + 1;
  if (len < 0) len = 0;
  r.c.assign(len, CycloElt(a.m));
  for (long e = r.val; e <= rtop; ++e) r.c[e - r.val] = a.at(e) - b.at(e);
  return r;
}

}  // namespace detail

// Exact Phi_N by integer series arithmetic over the coset representatives
// [[a, b], [0, d]], ad = N, 0 <= b < d, gcd(a, b, d) = 1.
inline ModularPolynomial modular_polynomial(long N, long level_bound = 10) {
  if (N < 1 || N > level_bound)
    throw std::domain_error("modular_polynomial: level outside bound");
  ModularPolynomial out;
  out.level = N;
  if (N == 1) {  // j(z) = j(gz): X - Y
    out.terms[{1, 0}] = 1;
    out.terms[{0, 1}] = -1;
    return out;
  }
  struct Rep {
    long a, b, d;
  };
  std::vector<Rep> reps;
  for (long a = 1; a <= N; ++a) {
    if (N % a != 0) continue;
    long d = N / a;
    for (long b = 0; b < d; ++b)
      if (std::gcd(std::gcd(a, b), d) == 1) reps.push_back({a, b, d});
  }
  long psi = psi_degree(N);
  if (static_cast<long>(reps.size()) != psi)
    throw std::runtime_error("modular_polynomial: coset count mismatch");

  long total_val = 0;
  for (const auto& r : reps) total_val += r.a * r.a;  // pole orders in w
  long hi = N;                       // keep through q^1
  long series_len = hi + total_val;  // worst-case needed j terms

  const std::vector<Int>& jc = j_series(static_cast<int>(series_len) + 4);

  // j(M z) = sum_k c_k zeta_N^{k a b} w^{k a^2}; carry each factor exact on
  // [val, val + L - 1] with L = hi + total_val + 1 so the full product is
  // exact through w^hi
  long span = hi + total_val;
  std::vector<detail::CycloSeries> factors;
  for (const auto& r : reps) {
    detail::CycloSeries s;
    s.m = N;
    s.val = -r.a * r.a;
    s.c.assign(span + 1, CycloElt(N));
    for (long k = -1;; ++k) {
      long e = k * r.a * r.a;
      if (e > s.top()) break;
      if (k + 1 >= static_cast<long>(jc.size())) break;
      long ze = ((k % N) * ((r.a * r.b) % N) % N + N) % N;
      s.c[e - s.val] += CycloElt::zeta_power(N, ze) * jc[k + 1];
    }
    factors.push_back(std::move(s));
  }

  // prod (X - f_i) as a polynomial in X with CycloSeries coefficients
  std::vector<detail::CycloSeries> poly;  // poly[i] = coeff of X^i
  {
    detail::CycloSeries one;
    one.m = N;
    one.val = 0;
    one.c.assign(span + 1, CycloElt(N));
    one.c[0] = CycloElt::from_int(N, 1);
    poly.push_back(one);
  }
  for (const auto& f : factors) {
    // next = poly * (X - f)
    std::vector<detail::CycloSeries> next(poly.size() + 1);
    for (std::size_t i = 0; i <= poly.size(); ++i) {
      if (i >= 1 && i < poly.size()) {
        next[i] =
            detail::cyclo_series_sub(poly[i - 1], detail::cyclo_series_mul(poly[i], f));
      } else if (i >= 1) {
        next[i] = poly[i - 1];
      } else {
        detail::CycloSeries prod = detail::cyclo_series_mul(poly[0], f);
        for (auto& e : prod.c) e = CycloElt(N) - e;
        next[0] = std::move(prod);
      }
    }
    poly = std::move(next);
  }
  if (static_cast<long>(poly.size()) != psi + 1)
    throw std::runtime_error("modular_polynomial: degree bookkeeping");

  // convert each coefficient series (in w) to an exact polynomial in j
  // and assemble Phi
  long jlen = hi / N + total_val / N + 4;
  std::vector<std::vector<Int>> jpow;  // jpow[m] = series of j^m from q^{-m}
  {
    // dense representation: index i = exponent + m for j^m
    long maxpole = total_val / N + 1;
    jpow.resize(maxpole + 1);
    std::vector<Int> base(jc.begin(), jc.begin() + std::min<long>(jc.size(), jlen + maxpole));
    jpow[0] = {Int(1)};
    for (long m2 = 1; m2 <= maxpole; ++m2) {
      // j^m has valuation -m; store c[i] = coeff of q^{i - m}
      if (m2 == 1)
        jpow[1] = base;
      else
        jpow[m2] = series_mul(jpow[m2 - 1], base,
                              static_cast<int>(jpow[m2 - 1].size()));
    }
  }
  for (long i = 0; i <= psi; ++i) {
    const detail::CycloSeries& s = poly[i];
    if (i == psi) {
      // leading coefficient must be exactly 1
      continue;
    }
    // check zeta-freeness and exponent divisibility, fold into q-series
    std::map<long, Int> qser;  // q-exponent -> integer coeff
    for (long e = s.val; e <= hi; ++e) {
      CycloElt v = s.at(e);
      if (v.is_zero()) continue;
      for (std::size_t t = 1; t < v.c.size(); ++t)
        if (v.c[t] != 0)
          throw std::runtime_error(
              "modular_polynomial: nonrational series coefficient");
      if (e % N != 0)
        throw std::runtime_error(
            "modular_polynomial: fractional q-exponent survives");
      qser[e / N] = v.c[0];
    }
    // eliminate poles with powers of j
    std::map<long, Int> ypoly;  // Y-degree -> coeff
    while (true) {
      long pole = 0;
      Int lead = 0;
      for (const auto& [e, cc] : qser)
        if (cc != 0 && e < pole) {
          pole = e;
          lead = cc;
        }
      if (pole == 0) break;
      long m2 = -pole;
      ypoly[m2] += lead;
      // qser -= lead * j^m  (jpow[m][idx] is coeff of q^{idx - m})
      for (std::size_t idx = 0; idx < jpow[m2].size(); ++idx) {
        long e = static_cast<long>(idx) - m2;
        if (e > hi / N + 1) break;
        if (jpow[m2][idx] == 0) continue;
        qser[e] -= lead * jpow[m2][idx];
      }
    }
    // constant term
    auto it0 = qser.find(0);
    if (it0 != qser.end() && it0->second != 0) ypoly[0] += it0->second;
    if (it0 != qser.end()) qser.erase(it0);
    for (const auto& [e, cc] : qser)
      if (e <= 1 && cc != 0)
        throw std::runtime_error(
            "modular_polynomial: series residue after elimination");
    for (const auto& [m2, cc] : ypoly)
      if (cc != 0) out.terms[{static_cast<int>(i), static_cast<int>(m2)}] = cc;
  }
  out.terms[{static_cast<int>(psi), 0}] = 1;
  // drop explicit zeros
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

// ---- special subvarieties of Y(1)^n ----

struct SpecialSubvarietyModular {
  int n;                                   // ambient Y(1)^n
  std::vector<std::vector<int>> partition; // partition[0] = R0 (may be empty)
  std::vector<QuadraticPoint> fixed_points;      // one per R0 coordinate
  std::vector<RationalScalingMatrix> matrices;   // per non-leading index

  int dim() const { return static_cast<int>(partition.size()) - 1; }

  void validate() const {
    std::vector<int> seen(n, 0);
    for (const auto& part : partition)
      for (int i : part) {
        if (i < 1 || i > n)
          throw std::invalid_argument("partition index out of range");
        seen[i - 1] += 1;
      }
    for (int s : seen)
      if (s != 1) throw std::invalid_argument("not a partition of {1..n}");
    for (std::size_t k = 1; k < partition.size(); ++k)
      if (partition[k].empty())
        throw std::invalid_argument("only R0 may be empty");
    if (fixed_points.size() != partition[0].size())
      throw std::invalid_argument("fixed point count mismatch");
    std::size_t expected = 0;
    for (std::size_t k = 1; k < partition.size(); ++k)
      expected += partition[k].size() - 1;
    if (matrices.size() != expected)
      throw std::invalid_argument("matrix count mismatch");
  }
};

inline Int complexity(const SpecialSubvarietyModular& s) {
  s.validate();
  Int m = 1;
  for (const auto& q : s.fixed_points) {
    Int d = abs(discriminant(q));
    if (d > m) m = d;
  }
  for (const auto& g : s.matrices)
    if (g.n_of_g > m) m = g.n_of_g;
  return m;
}

// Parameter height of the canonical special point t in M_R: the maximum
// 1-height of the primitive matrix entries and 2-height of the quadratic
// fixed coordinates.
inline Int special_point_parameter_height(const SpecialSubvarietyModular& s) {
  s.validate();
  Int h = 1;
  for (const auto& g : s.matrices)
    for (const auto& row : g.entries)
      for (const auto& x : row) {
        Int ax = abs(x);
        if (ax > h) h = ax;
      }
  for (const auto& q : s.fixed_points) {
    for (const Int* x : {&q.a, &q.b, &q.c}) {
      Int ax = abs(*x);
      if (ax > h) h = ax;
    }
  }
  return h;
}

// ---- Mobius fibers M^R_t ----

struct MobiusFiber {
  int n;
  std::vector<std::vector<int>> partition;  // partition[0] = R0
  std::vector<Cplx> fixed;                  // per R0 coordinate
  std::vector<RealMat> matrices;            // GL2+(R), per non-leading index

  int dim() const { return static_cast<int>(partition.size()) - 1; }

  // z from the part parameters w (one per R_i, i >= 1)
  std::vector<Cplx> parametrize(const std::vector<Cplx>& w) const {
    if (static_cast<int>(w.size()) != dim())
      throw std::invalid_argument("mobius parametrize: parameter count");
    std::vector<Cplx> z(n);
    for (std::size_t i = 0; i < partition[0].size(); ++i)
      z[partition[0][i] - 1] = fixed[i];
    std::size_t mat_idx = 0;
    for (std::size_t k = 1; k < partition.size(); ++k) {
      const auto& part = partition[k];
      z[part[0] - 1] = w[k - 1];
      for (std::size_t t = 1; t < part.size(); ++t) {
        const RealMat& g = matrices[mat_idx++];
        Cplx num = Cplx(g[0][0]) * w[k - 1] + Cplx(g[0][1]);
        Cplx den = Cplx(g[1][0]) * w[k - 1] + Cplx(g[1][1]);
        z[part[t] - 1] = num / den;
      }
    }
    return z;
  }

  bool contains(const std::vector<Cplx>& z, const Real& tol) const {
    if (static_cast<int>(z.size()) != n) return false;
    for (std::size_t i = 0; i < partition[0].size(); ++i) {
      if (abs(z[partition[0][i] - 1] - fixed[i]) > tol) return false;
    }
    std::size_t mat_idx = 0;
    for (std::size_t k = 1; k < partition.size(); ++k) {
      const auto& part = partition[k];
      Cplx lead = z[part[0] - 1];
      for (std::size_t t = 1; t < part.size(); ++t) {
        const RealMat& g = matrices[mat_idx++];
        Cplx num = Cplx(g[0][0]) * lead + Cplx(g[0][1]);
        Cplx den = Cplx(g[1][0]) * lead + Cplx(g[1][1]);
        if (abs(z[part[t] - 1] - num / den) > tol) return false;
      }
    }
    return true;
  }
};

inline MobiusFiber mobius_fiber(int n, std::vector<std::vector<int>> partition,
                                std::vector<Cplx> fixed,
                                std::vector<RealMat> matrices) {
  for (const auto& g : matrices) {
    Real d = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if (!(d > 0))
      throw std::invalid_argument("mobius_fiber: determinant must be positive");
  }
  for (const auto& z : fixed)
    if (!(z.im > 0))
      throw std::invalid_argument("mobius_fiber: fixed point not in H");
  MobiusFiber f{n, std::move(partition), std::move(fixed), std::move(matrices)};
  // reuse the validation shape checks
  std::vector<int> seen(n, 0);
  for (const auto& part : f.partition)
    for (int i : part) seen.at(i - 1) += 1;
  for (int s : seen)
    if (s != 1) throw std::invalid_argument("mobius_fiber: not a partition");
  return f;
}

// ---- numerical modular-relation detection (heuristic) ----

struct ModularRelation {
  long level;
  Real residual;
};

// |Phi(j(z1), j(z2))| with internal precision raised enough that the huge
// integer coefficients cannot swamp the requested working accuracy; the
// result is rounded back to the caller's precision.
inline Real phi_residual(const ModularPolynomial& phi, const UpperHalfPoint& z1,
                         const UpperHalfPoint& z2) {
  long coeff_bits = 0;
  for (const auto& [k, v] : phi.terms)
    coeff_bits = std::max<long>(coeff_bits, msb(abs(v) + 1) + 1);
  JEvalResult j1c = j_eval(z1, 64);
  JEvalResult j2c = j_eval(z2, 64);
  double jmag = std::max(
      1.0, std::max(mpfr_get_d(abs(j1c.value).backend().data(), MPFR_RNDN),
                    mpfr_get_d(abs(j2c.value).backend().data(), MPFR_RNDN)));
  long psi = psi_degree(phi.level);
  int bits = static_cast<int>(coeff_bits + psi * (std::log2(jmag) + 4) +
                              precision_bits() + 64);
  int caller_bits = precision_bits();
  PrecisionGuard guard(bits);
  JEvalResult j1 = j_eval(z1, bits);
  JEvalResult j2 = j_eval(z2, bits);
  Real res = abs(phi.eval(j1.value, j2.value));
  PrecisionGuard back(caller_bits);
  return Real(res);
}

inline std::optional<ModularRelation> detect_modular_relation(
    const UpperHalfPoint& z1, const UpperHalfPoint& z2, long n_max,
    const Real& tolerance, long level_bound = 10) {
  for (long N = 1; N <= n_max; ++N) {
    ModularPolynomial phi = modular_polynomial(N, level_bound);
    Real res = phi_residual(phi, z1, z2);
    if (res < tolerance) return ModularRelation{N, res};
  }
  return std::nullopt;
}

}  // namespace zpkit
