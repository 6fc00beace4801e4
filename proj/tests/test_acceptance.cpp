// Acceptance gate: ten criteria, one PASS/FAIL line each, nonzero exit on
// any failure. Tolerances are pinned here and nowhere else.

#include <chrono>
#include <iostream>
#include <numeric>
#include <random>
#include <vector>

#include "zpkit/abelian.hpp"
#include "zpkit/counting.hpp"
#include "zpkit/elliptic.hpp"
#include "zpkit/modular.hpp"
#include "zpkit/torus.hpp"

using namespace zpkit;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << idx << " " << name
            << (detail.empty() ? "" : " (" + detail + ")") << "\n";
  if (!ok) ++failures;
}

long elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// ---- criterion 1: Manin-Mumford demo ----
void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  Laurent2 f{{Int(1), 1, 0}, {Int(1), 0, 1}, {Int(-1), 0, 0}};
  TorsionSearchResult r = torsion_points_on_curve(f, 30);
  long ms = elapsed_ms(t0);
  bool ok = r.points.size() == 2 && ms < 5000;
  for (const auto& p : r.points) ok = ok && p.order == 6;
  report(1, "manin-mumford-torsion", ok,
         std::to_string(r.points.size()) + " points, " + std::to_string(ms) +
             " ms");
}

// ---- criterion 2: defect calculus on nested coset pairs ----
std::pair<MonomialSubvariety, MonomialSubvariety> nested_pair(
    std::mt19937_64& rng) {
  int n = 2 + static_cast<int>(rng() % 5);
  int rb = 1 + static_cast<int>(rng() % n);
  IntMat db(rb, IntVec(n, 0));
  for (auto& row : db)
    for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
  IntegerLattice dirs_b(db, n);
  rb = dirs_b.rank();
  TorusPoint cb;
  for (int i = 0; i < n; ++i) {
    cb.emplace_back(
        Rat(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 5)),
        1 + static_cast<long>(rng() % 6), static_cast<long>(rng() % 6));
  }
  MonomialSubvariety b(cb, dirs_b, n);
  int ra = rb == 0 ? 0 : static_cast<int>(rng() % (rb + 1));
  IntMat da;
  for (int i = 0; i < ra; ++i) {
    IntVec row(n, 0);
    for (int jb = 0; jb < rb; ++jb) {
      long c = static_cast<long>(rng() % 5) - 2;
      for (int jj = 0; jj < n; ++jj) row[jj] += c * b.directions.basis[jb][jj];
    }
    da.push_back(row);
  }
  TorusCoord lambda(Rat(1 + static_cast<long>(rng() % 3)),
                    1 + static_cast<long>(rng() % 6),
                    static_cast<long>(rng() % 6));
  IntVec e(n, 0);
  for (int jb = 0; jb < rb; ++jb) {
    long w = static_cast<long>(rng() % 3) - 1;
    for (int jj = 0; jj < n; ++jj) e[jj] += w * b.directions.basis[jb][jj];
  }
  TorusPoint ca = cb;
  for (int i = 0; i < n; ++i) ca[i] = ca[i] * lambda.pow(e[i]);
  return {MonomialSubvariety(ca, IntegerLattice(da, n), n), b};
}

void criterion_2() {
  std::mt19937_64 rng(2);
  int inequality_ok = 0, identity_ok = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    auto [a, b] = nested_pair(rng);
    if (!monomial_containment(a, b)) {
      report(2, "defect-calculus", false, "construction broke containment");
      return;
    }
    if (defect_condition_check(a, b)) ++inequality_ok;
    DefectReport ra = defect_report(a);
    DefectReport rb = defect_report(b);
    if (ra.delta - ra.delta_geo == ra.rank_L - ra.rank_M &&
        rb.delta - rb.delta_geo == rb.rank_L - rb.rank_M)
      ++identity_ok;
  }
  report(2, "defect-calculus", inequality_ok == trials && identity_ok == trials,
         std::to_string(inequality_ok) + "/200 inequality, " +
             std::to_string(identity_ok) + "/200 rank identity");
}

// ---- criterion 3: Minkowski sweep ----
void criterion_3() {
  std::mt19937_64 rng(3);
  auto t0 = std::chrono::steady_clock::now();
  const int trials = 1000;
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);
    IntMat basis;
    do {
      basis.assign(n, IntVec(n, 0));
      for (auto& row : basis)
        for (auto& x : row) x = static_cast<long>(rng() % 19) - 9;
    } while (rank_int(basis) != n);
    MinimaReport rep =
        successive_minima(IntegerLattice(basis, n), GramForm::identity(n));
    Real prod = 1;
    for (const auto& m : rep.minima) prod *= m;
    if (prod <= pow(Real(2), n) * rep.volume / unit_ball_volume(n)) ++ok;
  }
  long ms = elapsed_ms(t0);
  report(3, "minkowski-sweep", ok == trials && ms < 60000,
         std::to_string(ok) + "/1000, " + std::to_string(ms) + " ms");
}

// ---- criterion 4: modular polynomials ----
void criterion_4() {
  bool ok = true;
  std::string detail;
  ModularPolynomial p1 = modular_polynomial(1);
  ok = ok && p1.terms.size() == 2 && p1.coeff(1, 0) == 1 &&
       p1.coeff(0, 1) == -1;
  std::mt19937_64 rng(4);
  Real worst = 0;
  for (long n = 2; n <= 5; ++n) {
    ModularPolynomial p = modular_polynomial(n);
    long psi = psi_degree(n);
    int deg_x = 0;
    for (const auto& [k, v] : p.terms) deg_x = std::max(deg_x, k.first);
    ok = ok && p.symmetric() && deg_x == psi && p.coeff(psi, 0) == 1;
    for (int t = 0; t < 20; ++t) {
      // dyadic tau: N * tau is then exactly representable, so the identity
      // is tested at genuinely related arguments
      Real re = Real(static_cast<long>(rng() % 2048)) / 1024 - 1;
      Real im = Real(3) / 4 + Real(static_cast<long>(rng() % 512)) / 1024;
      UpperHalfPoint tau(Cplx(re, im));
      UpperHalfPoint ntau(Cplx(re * n, im * n));
      Real res = phi_residual(p, tau, ntau);
      if (res > worst) worst = res;
      ok = ok && res < Real("1e-6");
    }
  }
  report(4, "modular-polynomials", ok,
         "worst |Phi_N(j,j')| = " +
             std::to_string(mpfr_get_d(worst.backend().data(), MPFR_RNDN)));
}

// ---- criterion 5: j-values ----
void criterion_5() {
  bool ok = true;
  Real d1 = abs(j_eval(UpperHalfPoint(Cplx(Real(0), Real(1)))).value -
                Cplx(Real(1728)));
  Real d2 =
      abs(j_eval(UpperHalfPoint(Cplx(Real(1) / 2, sqrt(Real(3)) / 2))).value);
  ok = ok && d1 < Real("1e-9") && d2 < Real("1e-9");
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50 && ok; ++t) {
    Cplx tau(Real(static_cast<long>(rng() % 2048)) / 1024 - 1,
             Real(3) / 4 + Real(static_cast<long>(rng() % 512)) / 1024);
    IntMat g{{1, 0}, {0, 1}};
    for (int k = 0; k < 6; ++k) {
      if (rng() % 2) {
        long s = static_cast<long>(rng() % 5) - 2;
        g = IntMat{{g[0][0] + s * g[1][0], g[0][1] + s * g[1][1]},
                   {g[1][0], g[1][1]}};
      } else {
        g = IntMat{{-g[1][0], -g[1][1]}, {g[0][0], g[0][1]}};
      }
    }
    Cplx a = j_eval(UpperHalfPoint(tau)).value;
    Cplx b = j_eval(UpperHalfPoint(moebius_apply(g, tau))).value;
    ok = ok && abs(a - b) < Real("1e-8") * (1 + abs(a));
  }
  report(5, "j-values", ok, "");
}

// ---- criterion 6: counting ----
void criterion_6() {
  bool ok = true;
  std::vector<long> phi(201, 0);
  for (long q = 1; q <= 200; ++q)
    for (long p = 1; p <= q; ++p)
      if (std::gcd(p, q) == 1) ++phi[q];
  long expect = 1;
  for (long t = 1; t <= 200; ++t) {
    expect += phi[t];
    if (static_cast<long>(enumerate_bounded(1, t, Rat(0), Rat(1)).size()) !=
        expect) {
      ok = false;
      break;
    }
  }
  DefinableSample s;
  s.box_lo = Rat(1);
  s.box_hi = Rat(2);
  Real l2 = log(Real(2));
  s.membership = [l2](const RealVec& v) {
    return Real(abs(v[1] - exp(v[0] * l2)));
  };
  s.fiber = [](const Rat& x) {
    FiberResult f;
    if (denominator(x) == 1 && numerator(x) >= 0 && numerator(x) < 30)
      f.points = {Rat(Int(1) << numerator(x).convert_to<unsigned>())};
    return f;
  };
  for (long t = 4; t <= 100 && ok; ++t)
    ok = count_points(s, 1, t).count == 2;
  std::vector<std::pair<long, long>> counts;
  for (long t = 10; t <= 100; t += 10)
    counts.push_back(
        {t, static_cast<long>(enumerate_bounded(1, t, Rat(0), Rat(1)).size())});
  GrowthFit fit = growth_fit(counts);
  double eps = mpfr_get_d(fit.epsilon_hat.backend().data(), MPFR_RNDN);
  ok = ok && eps >= 1.8 && eps <= 2.2;
  report(6, "height-counting", ok, "epsilon_hat = " + std::to_string(eps));
}

// ---- criteria 7 and 9 share these tori ----
PolarizedTorus elliptic_torus_i() {
  CplxMat periods{{Cplx(Real(1))}, {Cplx(Real(0), Real(1))}};
  return PolarizedTorus(1, periods, CplxMat{{Cplx(Real(1))}});
}

PolarizedTorus product_torus_i() {
  Cplx i(Real(0), Real(1));
  CplxMat periods{{Cplx(Real(1)), Cplx(Real(0))},
                  {i, Cplx(Real(0))},
                  {Cplx(Real(0)), Cplx(Real(1))},
                  {Cplx(Real(0)), i}};
  CplxMat herm{{Cplx(Real(1)), Cplx(Real(0))},
               {Cplx(Real(0)), Cplx(Real(1))}};
  return PolarizedTorus(2, periods, herm);
}

void criterion_7() {
  PolarizedTorus e = elliptic_torus_i();
  Subtorus full(e, IntegerLattice::full(2));
  bool ok = abs(degree(full) - 1) < Real("1e-9");
  PolarizedTorus p = product_torus_i();
  Subtorus whole(p, IntegerLattice::full(4));
  ok = ok && abs(degree(whole) - 2) < Real("1e-9");
  DegreeComparison c1 = degree_comparability(full, CplxMat{{Cplx(Real(2))}});
  ok = ok && abs(c1.ratio - 2) < Real("1e-9");
  CplxMat h4{{Cplx(Real(2)), Cplx(Real(0))}, {Cplx(Real(0)), Cplx(Real(2))}};
  DegreeComparison c2 = degree_comparability(whole, h4);
  ok = ok && abs(c2.ratio - 4) < Real("1e-9");
  report(7, "degree-formula", ok, "");
}

// ---- criterion 8: canonical heights ----
void criterion_8() {
  EllipticCurveQ e(Rat(0), Rat(-2));
  ECPoint g(Rat(3), Rat(5));
  std::vector<Real> h(5, Real(0));
  for (long m = 1; m <= 4; ++m)
    h[m] = canonical_height(e, e.mul(m, g)).value;
  bool ok = abs(h[2] - 4 * h[1]) < Real("1e-6");
  auto hm = [&](long m) { return h[std::abs(m)]; };
  std::vector<std::pair<long, long>> pairs{{1, 1},  {1, -1}, {1, 2},  {2, -1},
                                           {2, 1},  {2, 2},  {-1, 2}, {-2, 1},
                                           {-1, -1}, {1, -2}};
  for (auto [m, n] : pairs)
    ok = ok && abs(hm(m + n) + hm(m - n) - 2 * hm(m) - 2 * hm(n)) <
                   Real("1e-5");
  // torsion points on curves with small known torsion subgroups
  EllipticCurveQ t1(Rat(0), Rat(1));  // (0, 1) has order 6
  EllipticCurveQ t2(Rat(-1), Rat(0));  // (0, 0), (1, 0), (-1, 0) have order 2
  ok = ok && canonical_height(t1, ECPoint(Rat(0), Rat(1))).value < Real("1e-8");
  ok = ok && canonical_height(t2, ECPoint(Rat(0), Rat(0))).value < Real("1e-8");
  ok = ok && canonical_height(t2, ECPoint(Rat(1), Rat(0))).value < Real("1e-8");
  report(8, "canonical-height", ok, "");
}

// ---- criterion 9: small annihilating homomorphism ----
void criterion_9() {
  PolarizedTorus target = elliptic_torus_i();
  std::vector<CplxMat> gens{
      {{Cplx(Real(1)), Cplx(Real(-1))}},  // the difference map
      {{Cplx(Real(1)), Cplx(Real(1))}},
  };
  Cplx w(Real("0.311"), Real("0.177"));
  CplxVec p_log{w, w};  // diagonal point: killed exactly by pr1 - pr2
  AnnihilatingHomResult r = small_annihilating_hom(gens, p_log, target);
  bool ok = r.residual == 0 && abs(r.coefficients[0]) == 1 &&
            r.coefficients[1] == 0;
  std::mt19937_64 rng(9);
  std::vector<CplxMat> id{{{Cplx(Real(1))}}};
  for (int t = 0; t < 100 && ok; ++t) {
    long order = 1 + static_cast<long>(rng() % 12);
    Cplx i(Real(0), Real(1));
    Cplx p = (Cplx(Real(static_cast<long>(rng() % order))) +
              i * Cplx(Real(static_cast<long>(rng() % order)))) /
             Cplx(Real(order));
    // after order-scaling the point is a period, so the residual is exact
    AnnihilatingHomResult s =
        small_annihilating_hom(id, {p * Cplx(Real(order))}, target);
    ok = ok && s.residual < Real("1e-25");
  }
  report(9, "annihilating-hom", ok, "");
}

// ---- criterion 10: k-heights ----
void criterion_10() {
  std::mt19937_64 rng(10);
  bool ok = true;
  for (int t = 0; t < 500 && ok; ++t) {
    long p = static_cast<long>(rng() % 2001) - 1000;
    long q = 1 + static_cast<long>(rng() % 1000);
    Rat x(p, q);
    KHeightValue h = k_height(AlgebraicNumber::from_rational(x), 1);
    ok = h.finite && h.value == max(abs(numerator(x)), Int(denominator(x)));
  }
  AlgebraicNumber r2 = AlgebraicNumber::from_root(
      IntPoly{Int(-2), Int(0), Int(1)}, Cplx(Real("1.414")));
  ok = ok && k_height(r2, 2).finite && k_height(r2, 2).value == 2;
  // monotonicity in k over an enumerated batch
  for (const auto& a : enumerate_bounded(2, 3, Rat(0), Rat(1))) {
    KHeightValue h2 = k_height(a, 2);
    KHeightValue h3 = k_height(a, 3);
    ok = ok && h2.finite && h3.finite && h3.value <= h2.value;
    if (a.degree() == 1) {
      KHeightValue h1 = k_height(a, 1);
      ok = ok && h1.finite && h2.value <= h1.value;
    }
  }
  report(10, "k-heights", ok, "");
}

}  // namespace

int main() {
  set_precision_bits(128);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " ("
            << (10 - failures) << "/10)\n";
  return failures == 0 ? 0 : 1;
}
