#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zpkit/torus.hpp"

using namespace zpkit;

namespace {

const int kPrecInit = (set_precision_bits(128), 0);

// random monomial coset pair A contained in B: A's direction lattice is
// spanned by integer combinations of B's, and A's base point is B's base
// point translated along B's subtorus
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
    long num = 1 + static_cast<long>(rng() % 5);
    long den = 1 + static_cast<long>(rng() % 5);
    long ord = 1 + static_cast<long>(rng() % 6);
    cb.emplace_back(Rat(num, den), ord, static_cast<long>(rng() % ord));
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

}  // namespace

TEST_CASE("torus coordinate arithmetic") {
  TorusCoord a(Rat(2), 4, 1);  // 2 i
  TorusCoord b(Rat(3), 4, 3);  // 3 (-i)
  TorusCoord p = a * b;
  CHECK(p.q == 6);
  CHECK(p.ord == 1);  // i * (-i) = 1
  TorusCoord c = a.pow(Int(4));
  CHECK(c.q == 16);
  CHECK(c.ord == 1);
  CHECK((a * a.inverse()).is_one());
}

TEST_CASE("torsion points on x + y = 1 are the sixth roots") {
  // the only torsion solutions are (zeta_6, zeta_6^-1) and its conjugate
  Laurent2 f{{Int(1), 1, 0}, {Int(1), 0, 1}, {Int(-1), 0, 0}};
  TorsionSearchResult r = torsion_points_on_curve(f, 30);
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[0].order == 6);
  CHECK(r.points[1].order == 6);
  CHECK(r.cosets.empty());
  // exponents are (1, 5) and (5, 1) in some order
  std::vector<IntVec> got;
  for (const auto& p : r.points)
    got.push_back(IntVec{p.exponents[0], p.exponents[1]});
  std::sort(got.begin(), got.end());
  CHECK(got[0] == IntVec{1, 5});
  CHECK(got[1] == IntVec{5, 1});
}

TEST_CASE("torsion search reports coordinate cosets for degenerate curves") {
  // (x - 1) vanishes on the full coset {1} x G_m: expect a coset, no points
  Laurent2 f{{Int(1), 1, 0}, {Int(-1), 0, 0}};
  TorsionSearchResult r = torsion_points_on_curve(f, 10);
  CHECK(r.points.empty());
  REQUIRE(r.cosets.size() == 1);
  CHECK(r.cosets[0].fixed_coordinate == 0);
  CHECK(r.cosets[0].order == 1);
}

TEST_CASE("defect report: fixed oracle") {
  // coset (2, zeta_3, 1) * {(t, t^2, 1)} in G_m^3
  TorusPoint c{TorusCoord(Rat(2)), TorusCoord(Rat(1), 3, 1),
               TorusCoord(Rat(1))};
  MonomialSubvariety v(c, IntegerLattice(IntMat{{1, 2, 0}}, 3), 3);
  DefectReport r = defect_report(v);
  CHECK(r.dim_A == 1);
  CHECK(r.dim_special_closure == 2);   // constant 2 forces one extra dim
  CHECK(r.dim_geodesic_closure == 1);  // torsion translate is geodesic
  CHECK(r.delta == 1);
  CHECK(r.delta_geo == 0);
  CHECK(r.delta - r.delta_geo == r.rank_L - r.rank_M);
}

TEST_CASE("defect of a torsion coset is zero") {
  TorusPoint c{TorusCoord(Rat(1), 5, 2), TorusCoord(Rat(1), 5, 1)};
  MonomialSubvariety v(c, IntegerLattice(IntMat{{1, 1}}, 2), 2);
  DefectReport r = defect_report(v);
  CHECK(r.delta == 0);
  CHECK(r.delta_geo == 0);
}

TEST_CASE("nested cosets satisfy the defect inequality and rank identity") {
  std::mt19937_64 rng(21);
  int done = 0;
  while (done < 200) {
    auto [a, b] = nested_pair(rng);
    REQUIRE(monomial_containment(a, b));
    CHECK(defect_condition_check(a, b));
    DefectReport ra = defect_report(a);
    DefectReport rb = defect_report(b);
    // delta is monotone under containment (the defect inequality)
    CHECK(ra.delta >= rb.delta - (b.dim() - a.dim()));
    CHECK(ra.delta - ra.delta_geo == ra.rank_L - ra.rank_M);
    CHECK(rb.delta - rb.delta_geo == rb.rank_L - rb.rank_M);
    ++done;
  }
}

TEST_CASE("smallest special subvariety through a point") {
  TorusPoint p{TorusCoord(Rat(2)), TorusCoord(Rat(4))};
  MonomialSubvariety s = smallest_special(p);
  // 2 and 4 satisfy x^2 = y: the special closure is one-dimensional
  CHECK(s.dim() == 1);
  CHECK(monomial_containment(MonomialSubvariety(p, IntegerLattice::zero(2), 2),
                             s));
}

TEST_CASE("unlikely intersections on (t, 1 - t, 2)") {
  std::vector<LaurentRat> curve(3);
  curve[0].p = RatPoly{Rat(0), Rat(1)};
  curve[1].p = RatPoly{Rat(1), Rat(-1)};
  curve[2].p = RatPoly{Rat(2)};
  auto hits = unlikely_search(curve, 6, 16);
  CHECK(!hits.empty());
  bool zeta6 = false, half = false;
  for (const auto& h : hits) {
    CHECK(h.relations.rank() >= 2);  // codimension >= 2 intersections only
    if (!h.t_is_rational && h.t_zeta_order == 6) zeta6 = true;
    if (h.t_is_rational && h.t_rational == Rat(1, 2)) half = true;
  }
  CHECK(zeta6);  // t = zeta_6 gives 1 - t = zeta_6^-1 = t^-1 twice over
  CHECK(half);   // t = 1/2: coordinates (1/2, 1/2, 2) satisfy two relations
}

TEST_CASE("unlikely search demands at least three coordinates") {
  std::vector<LaurentRat> curve(2);
  curve[0].p = RatPoly{Rat(0), Rat(1)};
  curve[1].p = RatPoly{Rat(1), Rat(-1)};
  CHECK_THROWS(unlikely_search(curve, 4, 8));
}
