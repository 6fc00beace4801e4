// zpkit: command-line front end for the lattice / torus / modular / abelian /
// counting library. One binary, module-named subcommands, seeded determinism.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zpkit/json_io.hpp"

using namespace zpkit;

namespace {

struct GlobalOpts {
  int precision_bits = 128;
  unsigned long seed = 0;
  std::string out;
  std::string format = "json";
};

json run_config(const GlobalOpts& g) {
  return json{{"precision_bits", g.precision_bits},
              {"seed", g.seed},
              {"format", g.format},
              {"tolerances",
               json{{"integrality", "1e-9"},
                    {"subspace", "1e-9"},
                    {"membership", "1e-9"}}}};
}

void emit(const GlobalOpts& g, json result) {
  result["config"] = run_config(g);
  std::string text = result.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out);
    if (!f) throw std::runtime_error("cannot open output file: " + g.out);
    f << text;
  }
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  json j;
  f >> j;
  return j;
}

// parse "a+bi" (also "a", "bi", "a-bi"; decimal components)
Cplx parse_cplx(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::runtime_error("empty complex literal");
  if (t.back() == 'i') {
    t.pop_back();
    // split into real and imaginary at the last +/- not at position 0 and
    // not part of an exponent
    for (std::size_t p = t.size(); p-- > 1;) {
      if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
        std::string re = t.substr(0, p);
        std::string im = t.substr(p);
        if (im == "+" || im == "-") im += "1";
        return Cplx(Real(re), Real(im));
      }
    }
    if (t.empty() || t == "+") return Cplx(Real(0), Real(1));
    if (t == "-") return Cplx(Real(0), Real(-1));
    return Cplx(Real(0), Real(t));
  }
  return Cplx(Real(t), Real(0));
}

json hit_to_json(const UnlikelyHit& h) {
  json t;
  if (h.t_is_rational) {
    t = json{{"rational", rat_to_string(h.t_rational)}};
  } else {
    t = json{{"zeta_order", h.t_zeta_order}, {"zeta_exp", h.t_zeta_exp}};
  }
  json heights = json::array();
  for (const auto& x : h.coordinate_heights)
    heights.push_back(real_to_string(x));
  return json{{"t", t},
              {"relations", lattice_to_json(h.relations)},
              {"coordinate_heights", heights}};
}

// ---- definable-set construction from the set-spec JSON ----

Real eval_expr(const json& e, const Real& x) {
  if (e.contains("var")) return x;
  if (e.contains("const")) {
    const auto& c = e.at("const");
    return c.is_string() ? to_real(parse_rat(c.get<std::string>()))
                         : Real(c.get<double>());
  }
  std::string op = e.at("op").get<std::string>();
  const json& args = e.contains("args") ? e.at("args") : json::array();
  if (op == "neg") return Real(-eval_expr(args.at(0), x));
  if (op == "exp") return Real(exp(eval_expr(args.at(0), x)));
  if (op == "pow2")
    return Real(exp(eval_expr(args.at(0), x) * log(Real(2))));
  Real a = eval_expr(args.at(0), x);
  Real b = eval_expr(args.at(1), x);
  if (op == "add") return Real(a + b);
  if (op == "sub") return Real(a - b);
  if (op == "mul") return Real(a * b);
  if (op == "div") return Real(a / b);
  throw std::runtime_error("unknown expression op: " + op);
}

// exact evaluation over the rationals where possible (no exp)
std::optional<Rat> eval_expr_rat(const json& e, const Rat& x) {
  if (e.contains("var")) return x;
  if (e.contains("const")) {
    const auto& c = e.at("const");
    if (c.is_string()) return parse_rat(c.get<std::string>());
    if (c.is_number_integer()) return Rat(c.get<long>());
    return std::nullopt;
  }
  std::string op = e.at("op").get<std::string>();
  const json& args = e.contains("args") ? e.at("args") : json::array();
  if (op == "neg") {
    auto a = eval_expr_rat(args.at(0), x);
    return a ? std::optional<Rat>(-*a) : std::nullopt;
  }
  if (op == "exp") return std::nullopt;
  if (op == "pow2") {
    auto a = eval_expr_rat(args.at(0), x);
    if (!a || denominator(*a) != 1) return std::nullopt;  // 2^{p/q} irrational for q > 1
    Int p = numerator(*a);
    if (abs(p) > 64) return std::nullopt;
    long e2 = p.convert_to<long>();
    if (e2 >= 0) return Rat(Int(1) << static_cast<unsigned>(e2));
    return Rat(Int(1), Int(1) << static_cast<unsigned>(-e2));
  }
  auto a = eval_expr_rat(args.at(0), x);
  auto b = eval_expr_rat(args.at(1), x);
  if (!a || !b) return std::nullopt;
  if (op == "add") return *a + *b;
  if (op == "sub") return *a - *b;
  if (op == "mul") return *a * *b;
  if (op == "div") {
    if (*b == 0) return std::nullopt;
    return *a / *b;
  }
  throw std::runtime_error("unknown expression op: " + op);
}

DefinableSample sample_from_spec(const json& spec) {
  DefinableSample s;
  if (spec.contains("box")) {
    s.box_lo = parse_rat(spec.at("box").at(0).get<std::string>());
    s.box_hi = parse_rat(spec.at("box").at(1).get<std::string>());
  }
  std::string type = spec.at("type").get<std::string>();
  if (type == "diagonal") {
    s.membership = [](const RealVec& v) { return Real(abs(v[1] - v[0])); };
    s.fiber = [](const Rat& y) {
      FiberResult f;
      f.points = {y};
      return f;
    };
  } else if (type == "polynomial-graph") {
    std::vector<Rat> cs;
    for (const auto& c : spec.at("coeffs"))
      cs.push_back(c.is_string() ? parse_rat(c.get<std::string>())
                                 : Rat(c.get<long>()));
    auto poly_rat = [cs](const Rat& x) {
      Rat v = 0;
      for (std::size_t i = cs.size(); i-- > 0;) v = v * x + cs[i];
      return v;
    };
    s.membership = [cs](const RealVec& v) {
      Real y = 0;
      for (std::size_t i = cs.size(); i-- > 0;) y = y * v[0] + to_real(cs[i]);
      return Real(abs(v[1] - y));
    };
    s.fiber = [poly_rat](const Rat& y) {
      FiberResult f;
      f.points = {poly_rat(y)};
      return f;
    };
  } else if (type == "graph-expr") {
    json expr = spec.at("expr");
    s.membership = [expr](const RealVec& v) {
      return Real(abs(v[1] - eval_expr(expr, v[0])));
    };
    s.fiber = [expr](const Rat& y) {
      FiberResult f;
      auto z = eval_expr_rat(expr, y);
      if (z) f.points = {*z};
      return f;
    };
  } else if (type == "points") {
    std::vector<std::pair<Rat, Rat>> pts;
    for (const auto& p : spec.at("points"))
      pts.emplace_back(parse_rat(p.at(0).get<std::string>()),
                       parse_rat(p.at(1).get<std::string>()));
    s.membership = [pts](const RealVec& v) {
      Real best = -1;
      for (const auto& [a, b] : pts) {
        Real d = abs(v[0] - to_real(a)) + abs(v[1] - to_real(b));
        if (best < 0 || d < best) best = d;
      }
      return best < 0 ? Real(1) : best;
    };
    s.fiber = [pts](const Rat& y) {
      FiberResult f;
      for (const auto& [a, b] : pts)
        if (a == y) f.points.push_back(b);
      return f;
    };
  } else if (type == "empty") {
    s.membership = [](const RealVec&) { return Real(1); };
    s.fiber = [](const Rat&) { return FiberResult{}; };
  } else {
    throw std::runtime_error("unknown set type: " + type);
  }
  return s;
}

// ---- demos (the bundled acceptance scenarios) ----

json demo_manin_mumford() {
  Laurent2 f{{Int(1), 1, 0}, {Int(1), 0, 1}, {Int(-1), 0, 0}};  // x + y - 1
  TorsionSearchResult r = torsion_points_on_curve(f, 30);
  json pts = json::array();
  bool orders_ok = true;
  for (const auto& p : r.points) {
    pts.push_back(json{{"order", p.order}, {"exponents", p.exponents}});
    if (p.order != 6) orders_ok = false;
  }
  bool pass = r.points.size() == 2 && orders_ok && r.cosets.empty();
  return json{{"demo", "manin-mumford"},
              {"curve", "x + y - 1 in Gm^2"},
              {"max_order", 30},
              {"points", pts},
              {"pass", pass}};
}

json demo_unlikely() {
  // curve t -> (t, 1 - t, 2)
  std::vector<LaurentRat> curve(3);
  curve[0].p = RatPoly{Rat(0), Rat(1)};
  curve[1].p = RatPoly{Rat(1), Rat(-1)};
  curve[2].p = RatPoly{Rat(2)};
  auto hits = unlikely_search(curve, 6, 16);
  json out = json::array();
  bool zeta6 = false;
  for (const auto& h : hits) {
    out.push_back(hit_to_json(h));
    if (!h.t_is_rational && h.t_zeta_order == 6) zeta6 = true;
  }
  return json{{"demo", "unlikely"},
              {"curve", "(t, 1 - t, 2)"},
              {"exponent_bound", 6},
              {"hits", out},
              {"found_zeta6", zeta6},
              {"pass", zeta6}};
}

json demo_counting_growth(const GlobalOpts& g) {
  std::ostringstream csv;
  csv << "T,count,mode,min_margin\n";
  std::vector<std::pair<long, long>> farey;
  for (long t = 10; t <= 100; t += 10) {
    long c = static_cast<long>(enumerate_bounded(1, t, Rat(0), Rat(1)).size());
    farey.push_back({t, c});
    csv << t << "," << c << ",full,0\n";
  }
  GrowthFit fit = growth_fit(farey);
  double eps = real_to_double(fit.epsilon_hat);
  bool pass = eps > 1.8 && eps < 2.2;
  json out{{"demo", "counting-growth"},
           {"set", "Farey fractions in [0,1]"},
           {"epsilon_hat", real_to_string(fit.epsilon_hat)},
           {"log_c_hat", real_to_string(fit.log_c_hat)},
           {"csv", csv.str()},
           {"pass", pass}};
  if (!g.out.empty() && g.format == "csv") {
    std::ofstream f(g.out);
    f << csv.str();
  }
  return out;
}

json demo_minkowski_sweep(const GlobalOpts& g) {
  std::mt19937_64 rng(g.seed);
  int trials = 1000, ok = 0;
  Real worst_ratio = 0;
  for (int t = 0; t < trials; ++t) {
    int n = 2 + static_cast<int>(rng() % 7);  // dims 2..8
    IntMat basis;
    while (true) {
      basis.assign(n, IntVec(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          basis[i][j] = static_cast<long>(rng() % 19) - 9;
      if (rank_int(basis) == n) break;
    }
    IntegerLattice lat(basis, n);
    GramForm form = GramForm::identity(n);
    MinimaReport rep = successive_minima(lat, form);
    Real prod = 1;
    for (const auto& m : rep.minima) prod *= m;
    Real bound = pow(Real(2), n) * rep.volume / unit_ball_volume(n);
    if (prod <= bound) ++ok;
    Real ratio = prod / bound;
    if (ratio > worst_ratio) worst_ratio = ratio;
  }
  return json{{"demo", "minkowski-sweep"},
              {"trials", trials},
              {"satisfied", ok},
              {"worst_ratio", real_to_string(worst_ratio)},
              {"pass", ok == trials}};
}

json demo_defect_sweep(const GlobalOpts& g) {
  std::mt19937_64 rng(g.seed);
  int trials = 200, cond_ok = 0, rank_ok = 0;
  for (int t = 0; t < trials; ++t) {
    int n = 2 + static_cast<int>(rng() % 5);  // ambient 2..6
    int rb = 1 + static_cast<int>(rng() % n);
    IntMat db(rb, IntVec(n, 0));
    for (auto& row : db)
      for (auto& x : row) x = static_cast<long>(rng() % 7) - 3;
    IntegerLattice dirs_b(db, n);
    rb = dirs_b.rank();
    // constants: rational times root of unity per coordinate
    TorusPoint cb;
    for (int i = 0; i < n; ++i) {
      long num = 1 + static_cast<long>(rng() % 5);
      long den = 1 + static_cast<long>(rng() % 5);
      long ord = 1 + static_cast<long>(rng() % 6);
      long ex = static_cast<long>(rng() % ord);
      cb.emplace_back(Rat(num, den), ord, ex);
    }
    MonomialSubvariety B(cb, dirs_b, n);
    // A: subgroup directions = integer combinations of B's, translate by a
    // point of B's subtorus so that A is contained in B
    int ra = rb == 0 ? 0 : static_cast<int>(rng() % (rb + 1));
    IntMat da;
    for (int i = 0; i < ra; ++i) {
      IntVec row(n, 0);
      for (int jb = 0; jb < rb; ++jb) {
        long c = static_cast<long>(rng() % 5) - 2;
        for (int jj = 0; jj < n; ++jj)
          row[jj] += c * B.directions.basis[jb][jj];
      }
      da.push_back(row);
    }
    IntegerLattice dirs_a(da, n);
    // translate: lambda^(w . D_B) with lambda rational * root of unity
    TorusCoord lambda(Rat(1 + static_cast<long>(rng() % 3)),
                      1 + static_cast<long>(rng() % 6),
                      static_cast<long>(rng() % 6));
    IntVec e(n, 0);
    for (int jb = 0; jb < rb; ++jb) {
      long w = static_cast<long>(rng() % 3) - 1;
      for (int jj = 0; jj < n; ++jj)
        e[jj] += w * B.directions.basis[jb][jj];
    }
    TorusPoint ca = cb;
    for (int i = 0; i < n; ++i) ca[i] = ca[i] * lambda.pow(e[i]);
    MonomialSubvariety A(ca, dirs_a, n);
    if (!monomial_containment(A, B)) continue;  // construction guarantees this
    DefectReport ra_rep = defect_report(A);
    DefectReport rb_rep = defect_report(B);
    if (defect_condition_check(A, B)) ++cond_ok;
    if (ra_rep.delta - ra_rep.delta_geo == ra_rep.rank_L - ra_rep.rank_M &&
        rb_rep.delta - rb_rep.delta_geo == rb_rep.rank_L - rb_rep.rank_M)
      ++rank_ok;
  }
  return json{{"demo", "defect-sweep"},
              {"trials", trials},
              {"defect_condition_holds", cond_ok},
              {"rank_identity_holds", rank_ok},
              {"pass", cond_ok == trials && rank_ok == trials}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zpkit: lattice, torus, modular, abelian and counting toolkit"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // allow global flags after the subcommand
  GlobalOpts g;
  app.add_option("--precision-bits", g.precision_bits, "working precision")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized sweeps");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- torus ----
  auto* torus = app.add_subcommand("torus", "multiplicative-group operations");
  torus->require_subcommand(1);
  std::string coset_file, curve_file;
  long max_order = 30;
  int exp_bound = 4, t_height = 10;

  auto* t_defect = torus->add_subcommand("defect", "defect report for a coset");
  t_defect->add_option("--coset", coset_file, "monomial coset JSON")
      ->required();
  auto* t_torsion =
      torus->add_subcommand("torsion", "torsion points on a plane curve");
  t_torsion->add_option("--curve", curve_file, "Laurent curve JSON")
      ->required();
  t_torsion->add_option("--max-order", max_order, "maximal torsion order");
  auto* t_unlikely = torus->add_subcommand(
      "unlikely", "codimension-2 intersections along a parametric curve");
  std::string ucurve_file;
  t_unlikely->add_option("--curve", ucurve_file, "parametric curve JSON")
      ->required();
  t_unlikely->add_option("--exp-bound", exp_bound, "exponent sup-norm bound");
  t_unlikely->add_option("--t-height", t_height, "height bound for rational t");

  // ---- modular ----
  auto* modular = app.add_subcommand("modular", "j-function and Phi_N");
  modular->require_subcommand(1);
  std::string zs, z1s, z2s, spec_file, phi_out;
  long level = 1, nmax = 5;
  std::string rel_tol = "1e-6";
  auto* m_j = modular->add_subcommand("j", "evaluate j(z)");
  m_j->add_option("--z", zs, "point a+bi in the upper half plane")->required();
  auto* m_reduce =
      modular->add_subcommand("reduce", "reduce z to the fundamental domain");
  m_reduce->add_option("--z", zs, "point a+bi")->required();
  auto* m_phi = modular->add_subcommand("phi", "modular polynomial Phi_N");
  m_phi->add_option("--level", level, "level N")->required();
  auto* m_cx =
      modular->add_subcommand("complexity", "complexity of a special subvariety");
  m_cx->add_option("spec", spec_file, "special subvariety JSON")->required();
  auto* m_rel = modular->add_subcommand("relate", "detect a modular relation");
  m_rel->add_option("--z1", z1s)->required();
  m_rel->add_option("--z2", z2s)->required();
  m_rel->add_option("--nmax", nmax, "largest level tried");
  m_rel->add_option("--tol", rel_tol, "residual tolerance");

  // ---- abelian ----
  auto* abelian = app.add_subcommand("abelian", "polarized tori and heights");
  abelian->require_subcommand(1);
  std::string torus_file, sub_file, zvec, ann_file, ec_file, xs, ys;
  auto* a_deg = abelian->add_subcommand("degree", "degree of a subtorus");
  a_deg->add_option("--torus", torus_file)->required();
  a_deg->add_option("--sublattice", sub_file, "period sublattice JSON");
  auto* a_min = abelian->add_subcommand("minima", "small period basis");
  a_min->add_option("--torus", torus_file)->required();
  a_min->add_option("--sublattice", sub_file);
  auto* a_near = abelian->add_subcommand("nearby", "nearby-period rounding");
  a_near->add_option("--torus", torus_file)->required();
  a_near->add_option("--sublattice", sub_file);
  a_near->add_option("--z", zvec, "semicolon-separated complex coordinates")
      ->required();
  auto* a_ann =
      abelian->add_subcommand("annihilate", "small annihilating homomorphism");
  a_ann->add_option("--spec", ann_file, "generators/p_log/target JSON")
      ->required();
  auto* a_h = abelian->add_subcommand("height", "canonical height");
  a_h->add_option("--curve", ec_file, "elliptic curve JSON")->required();
  a_h->add_option("--x", xs, "x coordinate p/q")->required();
  a_h->add_option("--y", ys, "y coordinate p/q")->required();

  // ---- count ----
  auto* count = app.add_subcommand("count", "height-bounded point counting");
  count->require_subcommand(1);
  std::string set_file, csv_out, fit_file;
  long ck = 1, tmin = 10, tmax = 100, tstep = 10;
  std::string count_mode = "full";
  auto* c_run = count->add_subcommand("run", "count over a T sweep");
  c_run->add_option("--set", set_file, "set specification JSON")->required();
  c_run->add_option("--k", ck, "degree bound k");
  c_run->add_option("--tmin", tmin);
  c_run->add_option("--tmax", tmax);
  c_run->add_option("--step", tstep);
  c_run->add_option("--csv", csv_out, "CSV output path");
  c_run->add_option("--mode", count_mode, "full or pi2")
      ->check(CLI::IsMember({"full", "pi2"}));
  auto* c_fit = count->add_subcommand("fit", "growth fit from CSV");
  c_fit->add_option("csv", fit_file, "CSV produced by count run")->required();

  // ---- demo ----
  auto* demo = app.add_subcommand("demo", "bundled acceptance scenarios");
  std::string demo_name;
  demo->add_option("name", demo_name, "scenario")
      ->required()
      ->check(CLI::IsMember({"manin-mumford", "unlikely", "counting-growth",
                             "minkowski-sweep", "defect-sweep"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit with 2
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 0;
  }

  try {
    set_precision_bits(g.precision_bits);

    if (t_defect->parsed()) {
      MonomialSubvariety v = monomial_from_json(load_json(coset_file));
      DefectReport r = defect_report(v);
      emit(g, json{{"dim", r.dim_A},
                   {"dim_special_closure", r.dim_special_closure},
                   {"dim_geodesic_closure", r.dim_geodesic_closure},
                   {"delta", r.delta},
                   {"delta_geo", r.delta_geo},
                   {"rank_L", r.rank_L},
                   {"rank_M", r.rank_M}});
    } else if (t_torsion->parsed()) {
      Laurent2 f = laurent2_from_json(load_json(curve_file));
      TorsionSearchResult r = torsion_points_on_curve(f, max_order);
      json pts = json::array(), cosets = json::array();
      for (const auto& p : r.points)
        pts.push_back(json{{"order", p.order}, {"exponents", p.exponents}});
      for (const auto& c : r.cosets)
        cosets.push_back(json{{"fixed_coordinate", c.fixed_coordinate},
                              {"order", c.order},
                              {"exponent", c.exponent}});
      emit(g, json{{"max_order", max_order},
                   {"points", pts},
                   {"cosets", cosets},
                   {"count", r.points.size()}});
    } else if (t_unlikely->parsed()) {
      json cj = load_json(ucurve_file);
      std::vector<LaurentRat> curve;
      for (const auto& c : cj.at("coordinates"))
        curve.push_back(laurent_rat_from_json(c));
      auto hits = unlikely_search(curve, exp_bound, t_height);
      json out = json::array();
      for (const auto& h : hits) out.push_back(hit_to_json(h));
      emit(g, json{{"exponent_bound", exp_bound},
                   {"t_height_bound", t_height},
                   {"hits", out},
                   {"count", hits.size()}});
    } else if (m_j->parsed()) {
      UpperHalfPoint z(parse_cplx(zs));
      JEvalResult r = j_eval(z);
      emit(g, json{{"z", cplx_to_json(z.value)},
                   {"j", cplx_to_json(r.value)},
                   {"terms", r.terms},
                   {"tail_bound", real_to_string(r.tail_bound)}});
    } else if (m_reduce->parsed()) {
      UpperHalfPoint z(parse_cplx(zs));
      FundamentalDomainResult r = reduce_to_fundamental_domain(z);
      json gamma = json::array();
      for (const auto& row : r.gamma) {
        json rr = json::array();
        for (const auto& x : row) rr.push_back(x.str());
        gamma.push_back(rr);
      }
      emit(g, json{{"z", cplx_to_json(z.value)},
                   {"reduced", cplx_to_json(r.z)},
                   {"gamma", gamma}});
    } else if (m_phi->parsed()) {
      emit(g, modular_polynomial_to_json(modular_polynomial(level)));
    } else if (m_cx->parsed()) {
      SpecialSubvarietyModular s = modular_special_from_json(load_json(spec_file));
      emit(g, json{{"complexity", complexity(s).str()},
                   {"parameter_height", special_point_parameter_height(s).str()},
                   {"dim", s.dim()}});
    } else if (m_rel->parsed()) {
      UpperHalfPoint z1(parse_cplx(z1s)), z2(parse_cplx(z2s));
      auto rel = detect_modular_relation(z1, z2, nmax, Real(rel_tol));
      if (rel) {
        emit(g, json{{"related", true},
                     {"level", rel->level},
                     {"residual", real_to_string(rel->residual)}});
      } else {
        emit(g, json{{"related", false}, {"nmax", nmax}});
      }
    } else if (a_deg->parsed() || a_min->parsed() || a_near->parsed()) {
      PolarizedTorus t = torus_from_json(load_json(torus_file));
      IntegerLattice sub = sub_file.empty()
                               ? IntegerLattice::full(2 * t.g)
                               : lattice_from_json(load_json(sub_file));
      Subtorus st(t, sub);
      if (a_deg->parsed()) {
        emit(g, json{{"dim", st.dim_c()},
                     {"degree", real_to_string(degree(st))}});
      } else if (a_min->parsed()) {
        PeriodBasisReport rep = small_period_basis(st);
        json norms = json::array(), vecs = json::array();
        for (const auto& x : rep.norms) norms.push_back(real_to_string(x));
        for (const auto& v : rep.minima.achieving_vectors) {
          json rr = json::array();
          for (const auto& x : v) rr.push_back(x.str());
          vecs.push_back(rr);
        }
        emit(g, json{{"norms", norms},
                     {"vectors", vecs},
                     {"product", real_to_string(rep.product_of_norms)},
                     {"degree", real_to_string(rep.degree_value)},
                     {"achieved_constant",
                      real_to_string(rep.achieved_constant)}});
      } else {
        CplxVec z;
        std::stringstream ss(zvec);
        std::string part;
        while (std::getline(ss, part, ';')) z.push_back(parse_cplx(part));
        NearbyPeriodResult r = nearby_period(z, st);
        json oc = json::array(), om = json::array(), rem = json::array();
        for (const auto& x : r.omega_coords) oc.push_back(x.str());
        for (const auto& x : r.omega) om.push_back(cplx_to_json(x));
        for (const auto& x : r.remainder) rem.push_back(cplx_to_json(x));
        emit(g, json{{"omega_coords", oc},
                     {"omega", om},
                     {"remainder", rem},
                     {"omega_norm", real_to_string(r.omega_norm)},
                     {"tangent_residual", real_to_string(r.tangent_residual)}});
      }
    } else if (a_ann->parsed()) {
      json spec = load_json(ann_file);
      std::vector<CplxMat> gens;
      for (const auto& gj : spec.at("generators")) {
        CplxMat m;
        for (const auto& row : gj) {
          CplxVec r;
          for (std::size_t i = 0; i + 1 < row.size(); i += 2)
            r.emplace_back(json_real(row.at(i)), json_real(row.at(i + 1)));
          m.push_back(r);
        }
        gens.push_back(m);
      }
      CplxVec p_log;
      {
        const auto& row = spec.at("p_log");
        for (std::size_t i = 0; i + 1 < row.size(); i += 2)
          p_log.emplace_back(json_real(row.at(i)), json_real(row.at(i + 1)));
      }
      PolarizedTorus target = torus_from_json(spec.at("target"));
      AnnihilatingHomResult r = small_annihilating_hom(gens, p_log, target);
      json coef = json::array();
      for (const auto& x : r.coefficients) coef.push_back(x.str());
      emit(g, json{{"coefficients", coef},
                   {"norm", real_to_string(r.phi_norm)},
                   {"residual", real_to_string(r.residual)},
                   {"tangent_rank", r.tangent_rank},
                   {"surjective", r.surjective}});
    } else if (a_h->parsed()) {
      EllipticCurveQ e = curve_from_json(load_json(ec_file));
      ECPoint p(parse_rat(xs), parse_rat(ys));
      CanonicalHeightResult r = canonical_height(e, p);
      emit(g, json{{"height", real_to_string(r.value)},
                   {"iterations", r.iterations},
                   {"tail_bound", real_to_string(r.tail_bound)},
                   {"torsion", e.is_torsion(p)}});
    } else if (c_run->parsed()) {
      DefinableSample s = sample_from_spec(load_json(set_file));
      std::ostringstream csv;
      csv << "T,count,mode,min_margin\n";
      json rows = json::array();
      std::vector<std::pair<long, long>> series;
      for (long T = tmin; T <= tmax; T += tstep) {
        CountResult r = count_mode == "pi2" ? semi_rational_count(s, ck, T)
                                            : count_points(s, ck, T);
        csv << T << "," << r.count << "," << r.mode << ","
            << (r.min_margin < 0 ? "n/a" : real_to_string(r.min_margin, 6))
            << "\n";
        rows.push_back(json{{"T", T},
                            {"count", r.count},
                            {"mode", r.mode},
                            {"non_isolated", r.non_isolated}});
        series.push_back({T, r.count});
      }
      if (!csv_out.empty()) {
        std::ofstream f(csv_out);
        if (!f) throw std::runtime_error("cannot open " + csv_out);
        f << csv.str();
      }
      json out{{"k", ck}, {"rows", rows}, {"csv", csv.str()}};
      emit(g, out);
    } else if (c_fit->parsed()) {
      std::ifstream f(fit_file);
      if (!f) throw std::runtime_error("cannot open " + fit_file);
      std::string line;
      std::getline(f, line);  // header
      std::vector<std::pair<long, long>> series;
      while (std::getline(f, line)) {
        std::stringstream ls(line);
        std::string tcol, ccol;
        if (!std::getline(ls, tcol, ',')) continue;
        if (!std::getline(ls, ccol, ',')) continue;
        series.push_back({std::stol(tcol), std::stol(ccol)});
      }
      GrowthFit fit = growth_fit(series);
      json res = json::array();
      for (const auto& r : fit.residuals) res.push_back(real_to_string(r, 10));
      emit(g, json{{"epsilon_hat", real_to_string(fit.epsilon_hat)},
                   {"log_c_hat", real_to_string(fit.log_c_hat)},
                   {"residuals", res}});
    } else if (demo->parsed()) {
      if (demo_name == "manin-mumford") emit(g, demo_manin_mumford());
      else if (demo_name == "unlikely") emit(g, demo_unlikely());
      else if (demo_name == "counting-growth") emit(g, demo_counting_growth(g));
      else if (demo_name == "minkowski-sweep") emit(g, demo_minkowski_sweep(g));
      else emit(g, demo_defect_sweep(g));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
