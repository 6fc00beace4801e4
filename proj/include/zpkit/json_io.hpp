#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "zpkit/abelian.hpp"
#include "zpkit/counting.hpp"
#include "zpkit/elliptic.hpp"
#include "zpkit/lattice.hpp"
#include "zpkit/modular.hpp"
#include "zpkit/torus.hpp"

namespace zpkit {

using nlohmann::json;

// ---- scalar helpers ----

inline std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline Rat parse_rat(const std::string& s) {
  auto pos = s.find('/');
  if (pos == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, pos)), Int(s.substr(pos + 1)));
}

inline std::string real_to_string(const Real& x, int digits = 30) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

inline double real_to_double(const Real& x) {
  return mpfr_get_d(x.backend().data(), MPFR_RNDN);
}

inline json cplx_to_json(const Cplx& z) {
  return json::array({real_to_string(z.re), real_to_string(z.im)});
}

// ---- lattices: {"ambient_dim": n, "basis": [[...], ...]} ----

inline json lattice_to_json(const IntegerLattice& lat) {
  json basis = json::array();
  for (const auto& row : lat.basis) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.str());
    basis.push_back(r);
  }
  return json{{"ambient_dim", lat.ambient_dim}, {"basis", basis}};
}

inline IntegerLattice lattice_from_json(const json& j) {
  int n = j.at("ambient_dim").get<int>();
  IntMat basis;
  for (const auto& row : j.at("basis")) {
    IntVec r;
    for (const auto& x : row)
      r.push_back(x.is_string() ? Int(x.get<std::string>())
                                : Int(x.get<long>()));
    basis.push_back(r);
  }
  return IntegerLattice(basis, n);
}

// ---- torus coordinates: {"rational": "p/q", "zeta_order": m, "zeta_exp": e} ----

inline json torus_coord_to_json(const TorusCoord& c) {
  return json{{"rational", rat_to_string(c.q)},
              {"zeta_order", c.ord},
              {"zeta_exp", c.exp}};
}

inline TorusCoord torus_coord_from_json(const json& j) {
  Rat q = j.at("rational").is_string()
              ? parse_rat(j.at("rational").get<std::string>())
              : Rat(j.at("rational").get<long>());
  long ord = j.value("zeta_order", 1L);
  long ex = j.value("zeta_exp", 0L);
  return TorusCoord(q, ord, ex);
}

// monomial coset: {"constants": [coord...], "directions": lattice}
inline MonomialSubvariety monomial_from_json(const json& j) {
  TorusPoint constants;
  for (const auto& c : j.at("constants"))
    constants.push_back(torus_coord_from_json(c));
  IntegerLattice dirs = lattice_from_json(j.at("directions"));
  return MonomialSubvariety(constants, dirs,
                            static_cast<int>(constants.size()));
}

// Laurent polynomial in two variables: {"terms": [[coeff, ex, ey], ...]}
inline Laurent2 laurent2_from_json(const json& j) {
  Laurent2 f;
  for (const auto& t : j.at("terms")) {
    LaurentTerm term;
    term.c = t.at(0).is_string() ? Int(t.at(0).get<std::string>())
                                 : Int(t.at(0).get<long>());
    term.ex = t.at(1).get<long>();
    term.ey = t.at(2).get<long>();
    f.push_back(term);
  }
  return f;
}

// parametric curve coordinate: {"shift": s, "coeffs": ["p/q", ...]} meaning
// t^shift * (c0 + c1 t + ...)
inline LaurentRat laurent_rat_from_json(const json& j) {
  LaurentRat out;
  out.shift = j.value("shift", 0L);
  std::vector<Rat> cs;
  for (const auto& c : j.at("coeffs"))
    cs.push_back(c.is_string() ? parse_rat(c.get<std::string>())
                               : Rat(c.get<long>()));
  out.p = RatPoly(std::move(cs));
  return out;
}

// ---- modular polynomials: {level, terms: [[i, j, "coeff"], ...]} ----

inline json modular_polynomial_to_json(const ModularPolynomial& p) {
  json terms = json::array();
  for (const auto& [k, v] : p.terms)
    terms.push_back(json::array({k.first, k.second, v.str()}));
  return json{{"level", p.level}, {"terms", terms}};
}

inline ModularPolynomial modular_polynomial_from_json(const json& j) {
  ModularPolynomial p;
  p.level = j.at("level").get<long>();
  for (const auto& t : j.at("terms"))
    p.terms[{t.at(0).get<int>(), t.at(1).get<int>()}] =
        Int(t.at(2).get<std::string>());
  return p;
}

// modular special subvariety:
// {"n": n, "partition": [[...],...], "fixed_points": [[a,b,c],...],
//  "matrices": [[["p/q" x4]],...]}
inline SpecialSubvarietyModular modular_special_from_json(const json& j) {
  SpecialSubvarietyModular s;
  s.n = j.at("n").get<int>();
  for (const auto& part : j.at("partition"))
    s.partition.push_back(part.get<std::vector<int>>());
  if (j.contains("fixed_points"))
    for (const auto& q : j.at("fixed_points"))
      s.fixed_points.emplace_back(Int(q.at(0).get<long>()),
                                  Int(q.at(1).get<long>()),
                                  Int(q.at(2).get<long>()));
  if (j.contains("matrices"))
    for (const auto& m : j.at("matrices")) {
      std::vector<std::vector<Rat>> g(2, std::vector<Rat>(2));
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          const auto& e = m.at(r).at(c);
          g[r][c] = e.is_string() ? parse_rat(e.get<std::string>())
                                  : Rat(e.get<long>());
        }
      s.matrices.push_back(RationalScalingMatrix::from_rational(g));
    }
  return s;
}

// ---- polarized tori ----
// {"g": g, "periods": [[re, im, re, im, ...], ...], "hermitian": [[...], ...]}
// periods: 2g rows of 2g numbers (re, im per coordinate); hermitian: g rows
// of 2g numbers.

inline Real json_real(const json& v) {
  if (v.is_string()) return Real(v.get<std::string>());
  if (v.is_number_integer()) return Real(v.get<long>());
  return Real(v.get<double>());
}

inline PolarizedTorus torus_from_json(const json& j, Real tol = Real("1e-9")) {
  int g = j.at("g").get<int>();
  CplxMat periods, hermitian;
  for (const auto& row : j.at("periods")) {
    CplxVec p;
    for (std::size_t i = 0; i + 1 < row.size(); i += 2)
      p.emplace_back(json_real(row.at(i)), json_real(row.at(i + 1)));
    periods.push_back(p);
  }
  for (const auto& row : j.at("hermitian")) {
    CplxVec h;
    for (std::size_t i = 0; i + 1 < row.size(); i += 2)
      h.emplace_back(json_real(row.at(i)), json_real(row.at(i + 1)));
    hermitian.push_back(h);
  }
  return PolarizedTorus(g, periods, hermitian, tol);
}

// ---- elliptic curves: {"a": "p/q", "b": "p/q"} ----

inline EllipticCurveQ curve_from_json(const json& j) {
  auto get = [](const json& v) {
    return v.is_string() ? parse_rat(v.get<std::string>())
                         : Rat(v.get<long>());
  };
  return EllipticCurveQ(get(j.at("a")), get(j.at("b")));
}

}  // namespace zpkit
