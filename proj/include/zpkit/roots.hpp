#pragma once

#include <vector>

#include "zpkit/numeric.hpp"
#include "zpkit/polynomial.hpp"

namespace zpkit {

// All complex roots of an integer polynomial by Aberth-Ehrlich iteration
// at the current working precision. Multiple roots are acceptable for our
// uses (heights are computed from square-free inputs).
inline std::vector<Cplx> complex_roots(const IntPoly& p) {
  int d = p.degree();
  if (d <= 0) return {};
  std::vector<Cplx> pc(d + 1);
  for (int i = 0; i <= d; ++i) pc[i] = Cplx(to_real(p.coeff(i)));
  auto eval = [&](const Cplx& x, Cplx& val, Cplx& der) {
    val = pc[d];
    der = Cplx(Real(0));
    for (int i = d - 1; i >= 0; --i) {
      der = der * x + val;
      val = val * x + pc[i];
    }
  };
  // Cauchy-style radius
  Real lead = abs(pc[d]);
  Real radius = 0;
  for (int i = 0; i < d; ++i) radius = max(radius, abs(pc[i]) / lead);
  radius += 1;
  std::vector<Cplx> z(d);
  Real pi = pi_value();
  for (int i = 0; i < d; ++i) {
    Real theta = 2 * pi * Real(i) / d + Real(1) / (d + 3);  // avoid symmetry lock
    Real r = radius * (Real(1) / 2 + Real(i + 1) / (2 * d));
    z[i] = Cplx(r * cos(theta), r * sin(theta));
  }
  Real tol = eps_at(precision_bits() - 8) * max(radius, Real(1));
  for (int iter = 0; iter < 500; ++iter) {
    Real worst = 0;
    for (int i = 0; i < d; ++i) {
      Cplx val, der;
      eval(z[i], val, der);
      Cplx newton = (der.norm2() == 0) ? Cplx(Real(0)) : val / der;
      Cplx sum(Real(0));
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        Cplx diff = z[i] - z[j];
        if (diff.norm2() == 0) diff = Cplx(tol, tol);
        sum += Cplx(Real(1)) / diff;
      }
      Cplx denom = Cplx(Real(1)) - newton * sum;
      Cplx step = denom.norm2() == 0 ? newton : newton / denom;
      z[i] = z[i] - step;
      worst = max(worst, abs(step));
    }
    if (worst < tol) break;
  }
  return z;
}

// Real roots of an integer polynomial (imaginary part below a scale-aware
// threshold), returned sorted.
inline std::vector<Real> real_roots(const IntPoly& p) {
  std::vector<Real> out;
  Real thresh = eps_at(precision_bits() / 2);
  for (const auto& z : complex_roots(p)) {
    if (abs(z.im) < thresh * (abs(z.re) + 1)) out.push_back(z.re);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace zpkit
