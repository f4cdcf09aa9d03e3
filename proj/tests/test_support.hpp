#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "ghostpin/setup.hpp"

namespace ghostpin::test {

// The degenerate 700 nm arrangement used by most published numbers:
// 350 nm pump, 3 mm crystal, bucket at 1.2 m, resolving detector at 1.5 m.
inline OpticalSetup reference_setup() {
  OpticalSetup s;
  s.lambda_p = 350e-9;
  s.lambda_s = 700e-9;
  s.lambda_i = 700e-9;
  s.l_z = 3e-3;
  s.sigma_p = 167e-6;
  s.d = 0.3;
  s.z_s = 1.2;
  s.z_i = 1.5;
  return s;
}

inline bool close_rel(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

inline bool close_abs(double a, double b, double abs) {
  return std::fabs(a - b) <= abs;
}

// Independent closed-form oracle for the Gaussian-model ghost pattern,
// evaluated by a different algebraic route than the production code: the
// 2x2 complex quadratic form of the joint amplitude exponent, inverted
// directly. Long-double arithmetic throughout.
struct QuadraticFormOracle {
  long double sigma_g;
  long double magnification;
};

inline QuadraticFormOracle quadratic_form_oracle(const OpticalSetup& s) {
  using C = std::complex<long double>;
  const long double pi = 3.14159265358979323846L;
  const long double g = 0.455L / 4.0L;
  const long double sp = s.sigma_p, lz = s.l_z, lp = s.lambda_p;
  const long double ls = s.lambda_s, li = s.lambda_i, d = s.d, zi = s.z_i;
  const long double sp2 = sp * sp;
  const C I{0.0L, 1.0L};
  const C Lss = sp2 + g * lz * (ls - lp) / pi + I * (d * ls / (2.0L * pi));
  const C Lii = sp2 + g * lz * (li - lp) / pi + I * (zi * li / (2.0L * pi));
  const C Lsi = sp2 - g * lz * lp / pi;
  const C det = Lss * Lii - Lsi * Lsi;
  const long double inv_ii = std::real(Lss / det);   // (Lambda^-1)_II
  const long double inv_si = -std::real(Lsi / det);  // (Lambda^-1)_SI
  QuadraticFormOracle o;
  o.sigma_g = 1.0L / std::sqrt(2.0L * inv_ii);
  o.magnification = -inv_si / inv_ii;
  return o;
}

}  // namespace ghostpin::test
