#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zpkit/modular.hpp"

using namespace zpkit;

namespace {

const int kPrecInit = (set_precision_bits(128), 0);

// dyadic coordinates: exact at any working precision, so integer multiples
// N * tau stay exactly related to tau (no representation rounding for the
// huge-derivative Phi_N identity checks)
Cplx random_tau(std::mt19937_64& rng) {
  Real re = Real(static_cast<long>(rng() % 2048)) / 1024 - 1;
  Real im = Real(3) / 4 + Real(static_cast<long>(rng() % 512)) / 1024;
  return Cplx(re, im);
}

IntMat random_gamma(std::mt19937_64& rng) {
  // random word in S and T keeps entries modest and det = 1
  IntMat g{{1, 0}, {0, 1}};
  for (int k = 0; k < 6; ++k) {
    if (rng() % 2) {
      long t = static_cast<long>(rng() % 5) - 2;  // T^t
      g = IntMat{{g[0][0] + t * g[1][0], g[0][1] + t * g[1][1]},
                 {g[1][0], g[1][1]}};
    } else {  // S
      g = IntMat{{-g[1][0], -g[1][1]}, {g[0][0], g[0][1]}};
    }
  }
  return g;
}

}  // namespace

TEST_CASE("j at the two elliptic points") {
  // j(i) = 1728 and j(zeta_3 shifted to the domain corner) = 0
  JEvalResult ji = j_eval(UpperHalfPoint(Cplx(Real(0), Real(1))));
  CHECK(abs(ji.value - Cplx(Real(1728))) < Real("1e-30"));
  Real h = sqrt(Real(3)) / 2;
  JEvalResult jr = j_eval(UpperHalfPoint(Cplx(Real(1) / 2, h)));
  CHECK(abs(jr.value) < Real("1e-30"));
}

TEST_CASE("j-series integrality: leading coefficients") {
  // q^-1 + 744 + 196884 q + 21493760 q^2 + 864299970 q^3 + ...
  const auto& c = j_series(6);
  CHECK(c[0] == 1);  // q^-1
  CHECK(c[1] == 744);
  CHECK(c[2] == 196884);
  CHECK(c[3] == 21493760);
  CHECK(c[4] == 864299970);
}

TEST_CASE("fundamental domain reduction lands in the domain") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    Cplx z(Real(static_cast<long>(rng() % 4000)) / 100 - 20,
           Real(static_cast<long>(rng() % 300) + 5) / 100);
    FundamentalDomainResult r =
        reduce_to_fundamental_domain(UpperHalfPoint(z));
    CHECK(abs(r.z.re) <= Real(1) / 2 + Real("1e-30"));
    CHECK(r.z.norm2() >= 1 - Real("1e-30"));
    CHECK(r.gamma[0][0] * r.gamma[1][1] - r.gamma[0][1] * r.gamma[1][0] == 1);
    Cplx back = moebius_apply(r.gamma, z);
    CHECK(abs(back - r.z) < Real("1e-25"));
  }
}

TEST_CASE("j is SL2(Z)-invariant") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    Cplx tau = random_tau(rng);
    IntMat g = random_gamma(rng);
    Cplx moved = moebius_apply(g, tau);
    Cplx a = j_eval(UpperHalfPoint(tau)).value;
    Cplx b = j_eval(UpperHalfPoint(moved)).value;
    CHECK(abs(a - b) < Real("1e-8") * (1 + abs(a)));
  }
}

TEST_CASE("modular polynomial level 1 is X - Y") {
  ModularPolynomial p = modular_polynomial(1);
  CHECK(p.coeff(1, 0) == 1);
  CHECK(p.coeff(0, 1) == -1);
  CHECK(p.terms.size() == 2);
}

TEST_CASE("modular polynomial level 2: exact classical coefficients") {
  ModularPolynomial p = modular_polynomial(2);
  CHECK(p.coeff(3, 0) == 1);
  CHECK(p.coeff(0, 3) == 1);
  CHECK(p.coeff(2, 2) == -1);
  CHECK(p.coeff(2, 1) == 1488);
  CHECK(p.coeff(1, 2) == 1488);
  CHECK(p.coeff(2, 0) == -162000);
  CHECK(p.coeff(0, 2) == -162000);
  CHECK(p.coeff(1, 1) == 40773375);
  CHECK(p.coeff(1, 0) == Int("8748000000"));
  CHECK(p.coeff(0, 1) == Int("8748000000"));
  CHECK(p.coeff(0, 0) == Int("-157464000000000"));
}

TEST_CASE("modular polynomials: symmetry and degree psi(N)") {
  for (long n = 2; n <= 5; ++n) {
    ModularPolynomial p = modular_polynomial(n);
    CHECK(p.symmetric());
    long psi = psi_degree(n);
    CHECK(p.coeff(psi, 0) == 1);  // monic in X of degree psi(N)
    int deg_x = 0;
    for (const auto& [k, v] : p.terms) deg_x = std::max(deg_x, k.first);
    CHECK(deg_x == psi);
  }
}

TEST_CASE("Phi_N(j(tau), j(N tau)) vanishes") {
  std::mt19937_64 rng(33);
  for (long n = 2; n <= 4; ++n) {
    ModularPolynomial p = modular_polynomial(n);
    for (int t = 0; t < 5; ++t) {
      UpperHalfPoint tau(random_tau(rng));
      UpperHalfPoint ntau(Cplx(tau.value.re * n, tau.value.im * n));
      CHECK(phi_residual(p, tau, ntau) < Real("1e-6"));
    }
  }
}

TEST_CASE("detect modular relation between tau and N tau") {
  std::mt19937_64 rng(34);
  for (long n = 1; n <= 3; ++n) {
    Cplx tau = random_tau(rng);
    auto rel = detect_modular_relation(
        UpperHalfPoint(tau), UpperHalfPoint(Cplx(tau.re * n, tau.im * n)), 4,
        Real("1e-6"));
    REQUIRE(rel.has_value());
    CHECK(rel->level == n);
  }
  // unrelated generic points yield no relation
  auto none = detect_modular_relation(
      UpperHalfPoint(Cplx(Real("0.1234"), Real("1.71"))),
      UpperHalfPoint(Cplx(Real("0.4321"), Real("2.3"))), 4, Real("1e-6"));
  CHECK_FALSE(none.has_value());
}

TEST_CASE("quadratic point discriminant and root") {
  QuadraticPoint q{Int(1), Int(0), Int(1)};  // tau = i
  CHECK(discriminant(q) == -4);
  CHECK(abs(q.root() - Cplx(Real(0), Real(1))) < Real("1e-30"));
}

TEST_CASE("special subvariety complexity oracles") {
  SpecialSubvarietyModular s;
  s.n = 2;
  s.partition = {{}, {1, 2}};
  s.matrices.push_back(RationalScalingMatrix::identity());
  CHECK(complexity(s) == 1);
  // a fixed CM point of discriminant -7 dominates the complexity
  SpecialSubvarietyModular c;
  c.n = 2;
  c.partition = {{1}, {2}};
  c.fixed_points.push_back(QuadraticPoint{Int(1), Int(1), Int(2)});
  CHECK(complexity(c) == 7);
}

TEST_CASE("moebius fibers parametrize and contain their points") {
  std::vector<RealMat> mats = {
      {{Real(2), Real(0)}, {Real(0), Real(1)}}};  // z -> 2z
  MobiusFiber f = mobius_fiber(2, {{}, {1, 2}}, {}, mats);
  Cplx w(Real("0.3"), Real("1.4"));
  std::vector<Cplx> z = f.parametrize({w});
  REQUIRE(z.size() == 2);
  CHECK(abs(z[1] - Cplx(w.re * 2, w.im * 2)) < Real("1e-30"));
  CHECK(f.contains(z, Real("1e-9")));
}
