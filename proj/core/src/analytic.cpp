#include "ghostpin/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ghostpin/errors.hpp"
#include "ghostpin/units.hpp"

namespace ghostpin {

namespace {

constexpr double kPi = std::numbers::pi;

double re_inv_alpha1(const Alphas& a) {
  return std::real(1.0 / a.alpha1);
}

double checked_re_inv_alpha1(const Alphas& a) {
  const double re = re_inv_alpha1(a);
  if (!(re > 0.0))
    fail(ErrorCode::NonPositiveRealPart,
         "Re(alpha1^-1) = " + format_double(re) + " <= 0; width undefined");
  return re;
}

OpticalSetup with_sigma_p(const ValidatedSetup& setup, double sigma_p) {
  OpticalSetup raw = setup.raw();
  raw.sigma_p = sigma_p;
  return raw;
}

}  // namespace

Alphas alphas(const ValidatedSetup& setup) {
  const double sp2 = setup.sigma_p() * setup.sigma_p();
  const double lz = setup.l_z();
  const double lp = setup.lambda_p();
  const double ls = setup.lambda_s();
  const double li = setup.lambda_i();
  const std::complex<double> I{0.0, 1.0};

  const std::complex<double> denom =
      sp2 + (kGamma * lz / kPi) * (ls - lp) + I * setup.d() * ls / (2.0 * kPi);
  if (std::abs(denom) < 1e-30)
    fail(ErrorCode::DegenerateAlpha, "alpha2 denominator vanished");

  Alphas a;
  a.alpha2 = (sp2 - kGamma * lz * lp / kPi) / denom;
  a.alpha1 = sp2 + (kGamma * lz / kPi) * (li - lp) +
             I * li * setup.z_i() / (2.0 * kPi) -
             (sp2 - kGamma * lz * lp / kPi) * a.alpha2;
  return a;
}

double sigma_g(const Alphas& a) {
  return 1.0 / std::sqrt(2.0 * checked_re_inv_alpha1(a));
}

double sigma_g(const ValidatedSetup& setup) { return sigma_g(alphas(setup)); }

double magnification(const Alphas& a) {
  return std::real(a.alpha2 / a.alpha1) / checked_re_inv_alpha1(a);
}

double image_position(double a, const ValidatedSetup& setup) {
  return a * magnification(alphas(setup));
}

double magnification_farfield(const ValidatedSetup& setup) {
  return -(setup.z_i() / setup.d()) * (setup.lambda_i() / setup.lambda_s());
}

FarFieldConditions farfield_conditions(const ValidatedSetup& setup) {
  const double sp2 = setup.sigma_p() * setup.sigma_p();
  const double crystal_term = (kGamma * setup.l_z() / kPi) *
                              (std::max(setup.lambda_s(), setup.lambda_i()) -
                               setup.lambda_p());
  FarFieldConditions c;
  c.crystal_ratio = crystal_term > 0.0
                        ? sp2 / crystal_term
                        : std::numeric_limits<double>::infinity();
  const double nearest =
      std::min(setup.d() * setup.lambda_s(), setup.z_i() * setup.lambda_i()) /
      (2.0 * kPi);
  c.farfield_ratio = nearest / sp2;
  return c;
}

double pinhole_sigma0(const ValidatedSetup& setup) {
  const double sp2 = setup.sigma_p() * setup.sigma_p();
  return std::sqrt(sp2 / 2.0 + kGamma * (setup.lambda_i() / setup.lambda_s()) *
                                   setup.lambda_p() * setup.l_z() / (2.0 * kPi));
}

double sigma_g_farfield(const ValidatedSetup& setup) {
  const double s0 = pinhole_sigma0(setup);
  const double diff = setup.z_i() * setup.lambda_i() / (4.0 * kPi);
  return std::sqrt(s0 * s0 + (diff / s0) * (diff / s0));
}

OptimalSource optimal_source(double z_i, double lambda_i) {
  if (!(z_i > 0.0) || !(lambda_i > 0.0))
    fail(ErrorCode::NonPositiveLength, "optimal_source needs positive z_i and lambda_i");
  OptimalSource o;
  o.sigma_0_star = std::sqrt(z_i * lambda_i / (4.0 * kPi));
  o.sigma_g_min = std::sqrt(2.0) * o.sigma_0_star;
  return o;
}

double resolution(const ValidatedSetup& setup, double threshold) {
  if (!(threshold > 0.0) || !(threshold < 1.0))
    fail(ErrorCode::BoundsInvalid,
         "visibility threshold must lie in (0, 1), got " + format_double(threshold));
  const Alphas a = alphas(setup);
  const double re1 = checked_re_inv_alpha1(a);
  const double re12 = std::real(a.alpha2 / a.alpha1);
  if (std::fabs(re12) < 1e-30)
    fail(ErrorCode::ZeroMagnification, "|Re(alpha1^-1 alpha2)| vanished");
  return 2.0 * std::sqrt(-std::log(threshold / 2.0) * re1) / std::fabs(re12);
}

double n_modes(const ValidatedSetup& setup, double sigma_s, double threshold) {
  if (!(sigma_s > 0.0))
    fail(ErrorCode::NonPositiveLength, "n_modes needs a positive sigma_s");
  return sigma_s / resolution(setup, threshold);
}

AnalyticReport analytic_report(const ValidatedSetup& setup, double threshold,
                               double sigma_s, bool sigma_s_is_measured) {
  const Alphas a = alphas(setup);
  AnalyticReport r;
  r.alpha1 = a.alpha1;
  r.alpha2 = a.alpha2;
  r.sigma_g = sigma_g(a);
  r.magnification = magnification(a);
  r.sigma_0 = pinhole_sigma0(setup);
  r.resolution_r = resolution(setup, threshold);
  r.threshold = threshold;
  if (sigma_s > 0.0) {
    r.sigma_s_used = sigma_s;
    r.sigma_s_is_measured = sigma_s_is_measured;
    r.n_modes = sigma_s / r.resolution_r;
  }
  return r;
}

PumpOptimum optimize_pump_width(const ValidatedSetup& setup,
                                PumpObjective objective, double lo, double hi,
                                double threshold) {
  if (!(lo > 0.0) || !(hi > lo))
    fail(ErrorCode::BoundsInvalid,
         "pump-width bounds must satisfy 0 < lo < hi, got [" +
             format_length(lo) + ", " + format_length(hi) + "]");

  auto evaluate = [&](double sigma_p) {
    const ValidatedSetup s = validate_setup(with_sigma_p(setup, sigma_p));
    return objective == PumpObjective::sigma_g ? sigma_g(s)
                                               : resolution(s, threshold);
  };

  // Coarse bracket: 32 equally spaced samples.
  constexpr int kScan = 32;
  std::vector<double> xs(kScan), fs(kScan);
  for (int i = 0; i < kScan; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (kScan - 1);
    fs[i] = evaluate(xs[i]);
  }
  int best = 0;
  int interior_minima = 0;
  for (int i = 0; i < kScan; ++i) {
    if (fs[i] < fs[best]) best = i;
    if (i > 0 && i + 1 < kScan && fs[i] < fs[i - 1] && fs[i] < fs[i + 1])
      ++interior_minima;
  }

  PumpOptimum result;
  result.multimodal = interior_minima > 1;

  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, kScan - 1)];
  // Golden-section refinement to 1e-4 relative in sigma_p.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = evaluate(c), fd = evaluate(d);
  while ((b - a) > 1e-4 * std::max(std::fabs(a), std::fabs(b))) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - phi * (b - a);
      fc = evaluate(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + phi * (b - a);
      fd = evaluate(d);
    }
  }
  result.sigma_p_star = (a + b) / 2.0;
  result.value = evaluate(result.sigma_p_star);
  return result;
}

}  // namespace ghostpin
