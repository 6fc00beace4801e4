#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpkit/algebraic.hpp"
#include "zpkit/cyclotomic.hpp"
#include "zpkit/hnf.hpp"
#include "zpkit/lattice.hpp"
#include "zpkit/numeric.hpp"

namespace zpkit {

// Coordinate class for which multiplicative relations are decidable:
// a nonzero rational times an explicit root of unity, q * zeta_ord^exp.
struct TorusCoord {
  Rat q = 1;
  long ord = 1;  // order of the root-of-unity part
  long exp = 0;

  TorusCoord() = default;
  TorusCoord(Rat value) : q(std::move(value)) {
    if (q == 0) throw std::invalid_argument("TorusCoord: zero coordinate");
  }
  TorusCoord(Rat value, long order, long e) : q(std::move(value)), ord(order) {
    if (q == 0) throw std::invalid_argument("TorusCoord: zero coordinate");
    normalize(e);
  }

  void normalize(long e) {
    e %= ord;
    if (e < 0) e += ord;
    long g = std::gcd(e, ord);
    if (e == 0) {
      ord = 1;
      exp = 0;
    } else {
      ord /= g;
      exp = e / g;
    }
  }

  bool is_root_of_unity() const { return q == 1 || q == -1; }

  TorusCoord operator*(const TorusCoord& o) const {
    long l = std::lcm(ord, o.ord);
    TorusCoord r;
    r.q = q * o.q;
    r.ord = l;
    r.normalize(exp * (l / ord) + o.exp * (l / o.ord));
    return r;
  }
  TorusCoord inverse() const {
    TorusCoord r;
    r.q = 1 / q;
    r.ord = ord;
    r.normalize(-exp);
    return r;
  }
  TorusCoord pow(const Int& e) const {
    TorusCoord base = e < 0 ? inverse() : *this;
    Int k = abs(e);
    TorusCoord r;
    while (k != 0) {
      if (k % 2 != 0) r = r * base;
      base = base * base;
      k /= 2;
    }
    return r;
  }
  bool is_one() const { return q == 1 && ord == 1; }

  Cplx to_complex() const {
    Real pi = pi_value();
    Real ang = 2 * pi * Real(exp) / ord;
    return Cplx(cos(ang), sin(ang)) * Cplx(to_real(q));
  }
};

using TorusPoint = std::vector<TorusCoord>;

// Algebraic subgroup of G_m^n cut out by the monomial relations x^a = 1,
// a ranging over the rows of `relations`.
struct SubgroupSpec {
  IntegerLattice relations;
  int ambient_dim;

  SubgroupSpec(IntegerLattice rel, int n)
      : relations(std::move(rel)), ambient_dim(n) {
    if (relations.ambient_dim != n)
      throw std::invalid_argument("SubgroupSpec: dimension mismatch");
  }
  bool connected() const { return relations == relations.saturation(); }
};

inline int subgroup_dim(const SubgroupSpec& s) {
  return s.ambient_dim - s.relations.rank();
}

// Coset c * T of a subtorus T, with T the image of the one-parameter
// family generated by the rows of `directions`.
struct MonomialSubvariety {
  TorusPoint constants;
  IntegerLattice directions;  // saturated exponent lattice of the subtorus
  int ambient_dim;

  MonomialSubvariety(TorusPoint c, IntegerLattice dirs, int n)
      : constants(std::move(c)),
        directions(dirs.saturation()),
        ambient_dim(n) {
    if (static_cast<int>(constants.size()) != n ||
        directions.ambient_dim != n)
      throw std::invalid_argument("MonomialSubvariety: dimension mismatch");
  }

  int dim() const { return directions.rank(); }
};

struct DefectReport {
  int dim_A;
  int dim_special_closure;
  int dim_geodesic_closure;
  int delta;
  int delta_geo;
  int rank_L;
  int rank_M;
};

namespace detail {

inline void factor_into(std::map<long, long>& acc, Int n, long sign_slot) {
  (void)sign_slot;
  if (n < 0) n = -n;
  for (long p = 2; Int(p) * p <= n; ++p) {
    while (n % p == 0) {
      acc[p] += 1;
      n /= p;
    }
    if (p > 1000000)
      throw std::domain_error("multiplicative relations: factor too large");
  }
  if (n > 1) {
    if (n > 1000000000000LL)
      throw std::domain_error("multiplicative relations: factor too large");
    acc[static_cast<long>(n)] += 1;
  }
}

// rows = primes, columns = coordinates; entry = v_p(q_i)
inline IntMat valuation_matrix(const TorusPoint& p) {
  std::map<long, std::map<int, long>> val;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    std::map<long, long> num, den;
    factor_into(num, Int(numerator(p[i].q)), 0);
    factor_into(den, Int(denominator(p[i].q)), 0);
    for (auto& [pr, e] : num) val[pr][i] += e;
    for (auto& [pr, e] : den) val[pr][i] -= e;
  }
  IntMat m;
  for (auto& [pr, row] : val) {
    IntVec r(p.size(), 0);
    for (auto& [i, e] : row) r[i] = e;
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace detail

// Lattice of exponent vectors a with p^a a root of unity (including +-1).
inline IntegerLattice root_of_unity_relations(const TorusPoint& p) {
  int n = static_cast<int>(p.size());
  IntMat v = detail::valuation_matrix(p);
  if (v.empty()) return IntegerLattice::full(n);
  return IntegerLattice(kernel(v), n);
}

// L = monomials constant on v; M = monomials that are roots of unity on v.
inline std::pair<IntegerLattice, IntegerLattice> constant_monomial_lattices(
    const MonomialSubvariety& v) {
  int n = v.ambient_dim;
  IntegerLattice L = v.directions.orthogonal_complement_lattice();
  // a in M iff a in L and constants^a is a root of unity
  IntMat cond = detail::valuation_matrix(v.constants);
  for (const auto& d : v.directions.basis) cond.push_back(d);
  IntegerLattice M =
      cond.empty() ? IntegerLattice::full(n) : IntegerLattice(kernel(cond), n);
  // M as defined must lie inside L
  if (!L.contains_lattice(M))
    throw std::runtime_error("constant_monomial_lattices: M not inside L");
  return {L, M};
}

inline DefectReport defect_report(const MonomialSubvariety& v) {
  auto [L, M] = constant_monomial_lattices(v);
  DefectReport r;
  r.dim_A = v.dim();
  r.rank_L = L.rank();
  r.rank_M = M.rank();
  r.dim_special_closure = v.ambient_dim - r.rank_M;
  r.dim_geodesic_closure = v.ambient_dim - r.rank_L;
  r.delta = r.dim_special_closure - r.dim_A;
  r.delta_geo = r.dim_geodesic_closure - r.dim_A;
  if (r.delta - r.delta_geo != r.rank_L - r.rank_M)
    throw std::runtime_error("defect_report: rank identity violated");
  return r;
}

// containment a <= b as subvarieties: directions nested and translation
// compatible (constants(a)/constants(b) lies on the subtorus of b times
// roots of unity captured by b's special structure -- here: the quotient
// point must satisfy every monomial relation of b's subtorus exactly).
inline bool monomial_containment(const MonomialSubvariety& a,
                                 const MonomialSubvariety& b) {
  if (a.ambient_dim != b.ambient_dim) return false;
  if (!b.directions.contains_lattice(a.directions)) return false;
  IntegerLattice rel = b.directions.orthogonal_complement_lattice();
  for (const auto& m : rel.basis) {
    TorusCoord prod;
    for (int i = 0; i < a.ambient_dim; ++i)
      prod = prod * (a.constants[i] * b.constants[i].inverse()).pow(m[i]);
    if (!prod.is_one()) return false;
  }
  return true;
}

// Def 4.3 inequality for nested monomial cosets.
inline bool defect_condition_check(const MonomialSubvariety& a,
                                   const MonomialSubvariety& b) {
  if (!monomial_containment(a, b))
    throw std::invalid_argument("defect_condition_check: a not contained in b");
  DefectReport ra = defect_report(a);
  DefectReport rb = defect_report(b);
  return rb.delta - rb.delta_geo <= ra.delta - ra.delta_geo;
}

// Smallest special subvariety (torsion coset) containing the point p.
inline MonomialSubvariety smallest_special(const TorusPoint& p) {
  int n = static_cast<int>(p.size());
  IntegerLattice M = root_of_unity_relations(p);
  IntegerLattice dirs = M.orthogonal_complement_lattice();
  return MonomialSubvariety(p, dirs, n);
}

// ---- torsion points on curves (Manin-Mumford at desk scale) ----

struct LaurentTerm {
  Int c;
  long ex, ey;
};
using Laurent2 = std::vector<LaurentTerm>;

struct RootOfUnityPoint {
  long order;                  // minimal
  std::vector<long> exponents; // coordinates zeta_order^{e_i}
  bool operator<(const RootOfUnityPoint& o) const {
    if (order != o.order) return order < o.order;
    return exponents < o.exponents;
  }
  bool operator==(const RootOfUnityPoint& o) const {
    return order == o.order && exponents == o.exponents;
  }
};

struct TorsionCoset {  // positive-dimensional component, e.g. {x = zeta}
  int fixed_coordinate;  // 0 for x, 1 for y
  long order;
  long exponent;
};

struct TorsionSearchResult {
  std::vector<RootOfUnityPoint> points;  // isolated, canonical order
  std::vector<TorsionCoset> cosets;
};

namespace detail {

inline bool vanishes_identically_x(const Laurent2& f, long m, long a) {
  // substitute x = zeta_m^a; group by y-exponent and test each class
  std::map<long, CycloElt> by_y;
  for (const auto& t : f) {
    auto it = by_y.find(t.ey);
    if (it == by_y.end()) it = by_y.emplace(t.ey, CycloElt(m)).first;
    it->second.add_monomial(t.c, ((t.ex % m) * (a % m) % m + m) % m);
  }
  for (auto& [e, v] : by_y)
    if (!v.is_zero()) return false;
  return true;
}

inline bool vanishes_identically_y(const Laurent2& f, long m, long b) {
  std::map<long, CycloElt> by_x;
  for (const auto& t : f) {
    auto it = by_x.find(t.ex);
    if (it == by_x.end()) it = by_x.emplace(t.ex, CycloElt(m)).first;
    it->second.add_monomial(t.c, ((t.ey % m) * (b % m) % m + m) % m);
  }
  for (auto& [e, v] : by_x)
    if (!v.is_zero()) return false;
  return true;
}

}  // namespace detail

// Exact evaluation f(zeta_m^a, zeta_m^b) in Z[zeta_m].
inline bool torsion_point_on_curve(const Laurent2& f, long m, long a, long b) {
  CycloElt acc(m);
  for (const auto& t : f) {
    long e = ((t.ex * a + t.ey * b) % m + m) % m;
    acc.add_monomial(t.c, e);
  }
  return acc.is_zero();
}

inline TorsionSearchResult torsion_points_on_curve(const Laurent2& f,
                                                   long max_order,
                                                   long hard_bound = 10000) {
  if (f.empty())
    throw std::invalid_argument("torsion_points_on_curve: zero polynomial");
  if (max_order > hard_bound)
    throw std::domain_error("torsion_points_on_curve: max_order above bound");
  TorsionSearchResult out;
  for (long m = 1; m <= max_order; ++m) {
    // positive-dimensional cosets x = zeta_m^a or y = zeta_m^b
    std::vector<long> coset_x, coset_y;
    for (long a = 0; a < m; ++a) {
      if (m > 1 && std::gcd(a, m) != 1) continue;  // minimal order only
      if (detail::vanishes_identically_x(f, m, a)) {
        out.cosets.push_back({0, m, a});
        coset_x.push_back(a);
      }
      if (detail::vanishes_identically_y(f, m, a)) {
        out.cosets.push_back({1, m, a});
        coset_y.push_back(a);
      }
    }
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        if (m > 1 && std::gcd(std::gcd(a, b), m) != 1) continue;
        bool on_coset = false;
        for (long ca : coset_x)
          if (ca == a) on_coset = true;
        for (long cb : coset_y)
          if (cb == b) on_coset = true;
        // points on lower-order cosets found earlier are also excluded
        for (const auto& cs : out.cosets) {
          long g = m / std::gcd(m, cs.order);
          (void)g;
          long coord = cs.fixed_coordinate == 0 ? a : b;
          // coordinate zeta_m^coord equals zeta_{cs.order}^{cs.exponent}?
          if (static_cast<long long>(coord) * cs.order ==
              static_cast<long long>(cs.exponent) * m)
            on_coset = true;
        }
        if (on_coset) continue;
        if (torsion_point_on_curve(f, m, a, b))
          out.points.push_back({m, {a, b}});
      }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

// ---- unlikely intersections for parametrized curves ----

struct LaurentRat {  // t^shift * p(t), p(0) != 0 preferred
  RatPoly p;
  long shift = 0;
};

struct UnlikelyHit {
  IntegerLattice relations;  // all satisfied exponent vectors, rank >= 2
  bool t_is_rational;
  Rat t_rational;            // valid when t_is_rational
  long t_zeta_order = 0;     // valid when !t_is_rational (t a root of unity)
  long t_zeta_exp = 0;
  std::vector<Real> coordinate_heights;  // rational parameters only
};

namespace detail {

// numerator polynomial of prod x_i(t)^{a_i} - 1 after clearing t powers
inline IntPoly relation_numerator(const std::vector<LaurentRat>& curve,
                                  const IntVec& a) {
  RatPoly pos{Rat(1)};
  RatPoly neg{Rat(1)};
  long shift_pos = 0, shift_neg = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    long e = static_cast<long>(a[i]);
    if (e > 0) {
      for (long k = 0; k < e; ++k) pos = pos * curve[i].p;
      shift_pos += e * curve[i].shift;
    } else if (e < 0) {
      for (long k = 0; k < -e; ++k) neg = neg * curve[i].p;
      shift_neg += (-e) * curve[i].shift;
    }
  }
  long s = shift_pos - shift_neg;
  if (s > 0)
    pos = pos.shifted(static_cast<int>(s));
  else if (s < 0)
    neg = neg.shifted(static_cast<int>(-s));
  return primitive_poly(clear_denominators(pos - neg));
}

inline std::vector<Rat> rational_roots(const IntPoly& p) {
  std::vector<Rat> out;
  IntPoly f = primitive_poly(p);
  if (f.degree() < 1) return out;
  // strip t = 0 roots
  int v = 0;
  while (f.coeff(v) == 0) ++v;
  if (v > 0) {
    std::vector<Int> c(f.c.begin() + v, f.c.end());
    f = IntPoly(std::move(c));
  }
  Int a0 = abs(f.coeff(0));
  Int ad = abs(f.leading());
  std::vector<Int> ps, qs;
  for (Int d = 1; d * d <= a0; ++d)
    if (a0 % d == 0) {
      ps.push_back(d);
      ps.push_back(a0 / d);
    }
  for (Int d = 1; d * d <= ad; ++d)
    if (ad % d == 0) {
      qs.push_back(d);
      qs.push_back(ad / d);
    }
  for (const Int& pnum : ps)
    for (const Int& qden : qs)
      for (int s = -1; s <= 1; s += 2) {
        Rat cand(pnum * s, qden);
        if (f.template eval<Rat>(cand) == 0) out.push_back(cand);
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline TorusCoord eval_coord_rational(const LaurentRat& x, const Rat& t) {
  Rat v = x.p.template eval<Rat>(t);
  for (long k = 0; k < x.shift; ++k) v *= t;
  for (long k = 0; k < -x.shift; ++k) v /= t;
  return TorusCoord(v);
}

}  // namespace detail

// Searches for parameters t at which at least two independent primitive
// exponent vectors a, b with sup norm <= exponent_bound satisfy
// curve(t)^a = curve(t)^b = 1 exactly, i.e. curve(t) lies in a subgroup of
// codimension >= 2. Rational t are reported with Weil heights of the
// coordinates; root-of-unity t are detected through cyclotomic factors of
// the relation numerators and verified by exact divisibility.
inline std::vector<UnlikelyHit> unlikely_search(
    const std::vector<LaurentRat>& curve, int exponent_bound,
    int t_height_bound) {
  int n = static_cast<int>(curve.size());
  if (n < 3)
    throw std::invalid_argument("unlikely_search: need ambient dimension >= 3");
  for (const auto& x : curve)
    if (x.p.is_zero())
      throw std::invalid_argument("unlikely_search: zero coordinate");

  // degeneracy check: curve inside a proper algebraic subgroup iff some
  // nonzero a gives x(t)^a identically 1
  std::vector<IntVec> vectors;
  {
    IntVec a(n, 0);
    std::function<void(int)> gen = [&](int i) {
      if (i == n) {
        if (!is_zero_vec(a)) vectors.push_back(a);
        return;
      }
      for (int v = -exponent_bound; v <= exponent_bound; ++v) {
        a[i] = v;
        gen(i + 1);
      }
      a[i] = 0;
    };
    gen(0);
  }
  std::vector<IntVec> primitive;
  for (auto& a : vectors) {
    IntVec p = primitive_part(a);
    if (p == a) primitive.push_back(a);
  }
  std::vector<IntPoly> numerators(primitive.size());
  for (std::size_t i = 0; i < primitive.size(); ++i) {
    numerators[i] = detail::relation_numerator(curve, primitive[i]);
    if (numerators[i].is_zero())
      throw std::invalid_argument(
          "unlikely_search: curve lies in the proper subgroup x^a = 1 "
          "(degenerate input)");
  }

  int max_deg = 0;
  for (const auto& num : numerators) max_deg = std::max(max_deg, num.degree());

  // candidate rational parameters across all single relations
  std::vector<Rat> rational_cands;
  for (const auto& num : numerators)
    for (const Rat& t : detail::rational_roots(num)) {
      if (t == 0) continue;
      Int hn = abs(Int(numerator(t)));
      Int hd = abs(Int(denominator(t)));
      if ((hn > hd ? hn : hd) <= t_height_bound) rational_cands.push_back(t);
    }
  std::sort(rational_cands.begin(), rational_cands.end());
  rational_cands.erase(
      std::unique(rational_cands.begin(), rational_cands.end()),
      rational_cands.end());

  std::vector<UnlikelyHit> hits;
  for (const Rat& t : rational_cands) {
    TorusPoint pt;
    bool on_torus = true;
    try {
      for (int k = 0; k < n; ++k)
        pt.push_back(detail::eval_coord_rational(curve[k], t));
    } catch (const std::invalid_argument&) {
      on_torus = false;
    }
    if (!on_torus) continue;
    IntMat satisfied;
    for (const auto& a : primitive) {
      TorusCoord m;
      for (int k = 0; k < n; ++k) m = m * pt[k].pow(a[k]);
      if (m.is_one()) satisfied.push_back(a);
    }
    if (satisfied.empty() || rank_int(satisfied) < 2) continue;
    UnlikelyHit h;
    h.relations = IntegerLattice(satisfied, n);
    h.t_is_rational = true;
    h.t_rational = t;
    for (const auto& c : pt)
      h.coordinate_heights.push_back(
          weil_height(AlgebraicNumber::from_rational(c.q)));
    hits.push_back(std::move(h));
  }

  // root-of-unity parameters: t a primitive d-th root with Phi_d dividing
  // at least two independent relation numerators
  for (long d = 3; d <= max_deg * max_deg + 6; ++d) {  // d <= 2 is rational
    const IntPoly& cyc = cyclotomic_polynomial(d);
    if (cyc.degree() > max_deg) continue;
    bool coord_vanishes = false;
    for (const auto& x : curve)
      if (poly_gcd(clear_denominators(x.p), cyc).degree() > 0)
        coord_vanishes = true;
    if (coord_vanishes) continue;
    IntMat satisfied;
    for (std::size_t i = 0; i < primitive.size(); ++i) {
      if (numerators[i].degree() < cyc.degree()) continue;
      if (poly_gcd(numerators[i], cyc) == primitive_poly(cyc))
        satisfied.push_back(primitive[i]);
    }
    if (satisfied.empty() || rank_int(satisfied) < 2) continue;
    for (long e = 0; e < d; ++e) {
      if (d > 1 && std::gcd(e, d) != 1) continue;
      UnlikelyHit h;
      h.relations = IntegerLattice(satisfied, n);
      h.t_is_rational = false;
      h.t_zeta_order = d;
      h.t_zeta_exp = e;
      hits.push_back(std::move(h));
    }
  }

  std::sort(hits.begin(), hits.end(),
            [](const UnlikelyHit& x, const UnlikelyHit& y) {
              if (x.t_is_rational != y.t_is_rational) return x.t_is_rational;
              if (x.t_is_rational) return x.t_rational < y.t_rational;
              if (x.t_zeta_order != y.t_zeta_order)
                return x.t_zeta_order < y.t_zeta_order;
              return x.t_zeta_exp < y.t_zeta_exp;
            });
  return hits;
}

}  // namespace zpkit
