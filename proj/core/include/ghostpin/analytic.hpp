#pragma once

#include <complex>

#include "ghostpin/setup.hpp"

namespace ghostpin {

/// Sinc-to-Gaussian surrogate constant: sinc(u) -> exp(-0.455 u). The /4
/// folds the u = dkz*l_z/2 halving into exponents written against
/// (dkz*l_z); keeping it here prevents applying the quarter twice.
inline constexpr double kGamma = 0.455 / 4.0;

struct Alphas {
  std::complex<double> alpha1;  // [m^2]
  std::complex<double> alpha2;  // dimensionless
};

/// Complex coefficients of the closed-form ghost-pattern model:
///   alpha2 = (sp^2 - g lz lp/pi) / [sp^2 + (g lz/pi)(ls - lp) + i d ls/(2 pi)]
///   alpha1 = sp^2 + (g lz/pi)(li - lp) + i li zi/(2 pi)
///            - (sp^2 - g lz lp/pi) alpha2
/// with g = kGamma. Throws DegenerateAlpha on a vanishing denominator.
Alphas alphas(const ValidatedSetup& setup);

/// Ghost-pattern width sigma_G = [2 Re(alpha1^-1)]^(-1/2).
/// Throws NonPositiveRealPart when Re(alpha1^-1) <= 0.
double sigma_g(const ValidatedSetup& setup);
double sigma_g(const Alphas& a);

/// Peak position x0 = a Re(alpha1^-1 alpha2) / Re(alpha1^-1) for an
/// infinitesimal slit at x_s = a; x0/a is the magnification.
double image_position(double a, const ValidatedSetup& setup);
double magnification(const Alphas& a);

/// Far-field limit of the magnification, -(z_i/d)(lambda_i/lambda_s).
double magnification_farfield(const ValidatedSetup& setup);

/// Validity of the far-field reduction; both must hold (with margin) for
/// magnification_farfield to approximate the full model.
struct FarFieldConditions {
  double crystal_ratio;   // sp^2 / [(g lz/pi)(max(ls,li) - lp)]
  double farfield_ratio;  // min(d ls, zi li)/(2 pi) / sp^2
  bool satisfied(double margin = 1.0) const {
    return crystal_ratio >= margin && farfield_ratio >= margin;
  }
};
FarFieldConditions farfield_conditions(const ValidatedSetup& setup);

/// Equivalent pinhole size of the biphoton source (detector at the
/// crystal): sigma_0 = [sp^2/2 + g (li/ls)(lp lz/(2 pi))]^(1/2).
double pinhole_sigma0(const ValidatedSetup& setup);

/// Ghost-pattern width in the distant-object limit d -> infinity:
/// sigma_G^2 = sigma_0^2 + sigma_0^-2 [z_i lambda_i/(4 pi)]^2.
double sigma_g_farfield(const ValidatedSetup& setup);

/// Source size minimizing the distant-object width at fixed z_i lambda_i:
/// sigma_0* = sqrt(z_i lambda_i/(4 pi)), where the width is sqrt(2) sigma_0*.
struct OptimalSource {
  double sigma_0_star;
  double sigma_g_min;
};
OptimalSource optimal_source(double z_i, double lambda_i);

/// Two-slit resolution at the given midpoint-visibility threshold:
///   R = 2 {-ln(threshold/2) Re(alpha1^-1)}^(1/2) |Re(alpha1^-1 alpha2)|^-1.
double resolution(const ValidatedSetup& setup, double threshold = 0.4);

/// Number of independent spatial modes N = sigma_s / R.
double n_modes(const ValidatedSetup& setup, double sigma_s,
               double threshold = 0.4);

/// Bundle of all closed-form quantities for one setup. sigma_s (and hence
/// n_modes) is filled only when a measured width is supplied: the closed
/// form for the illumination width is not part of this model, so the
/// numerical engine's fit is used instead (sigma_s_is_measured flags it).
struct AnalyticReport {
  std::complex<double> alpha1;
  std::complex<double> alpha2;
  double sigma_g = 0.0;
  double magnification = 0.0;   // x0/a
  double sigma_0 = 0.0;
  double resolution_r = 0.0;
  double n_modes = 0.0;         // 0 when sigma_s is absent
  double sigma_s_used = 0.0;    // 0 when absent
  bool sigma_s_is_measured = false;
  double threshold = 0.4;
};
AnalyticReport analytic_report(const ValidatedSetup& setup,
                               double threshold = 0.4, double sigma_s = 0.0,
                               bool sigma_s_is_measured = false);

enum class PumpObjective { sigma_g, resolution };

struct PumpOptimum {
  double sigma_p_star;
  double value;
  bool multimodal = false;  // coarse scan saw more than one interior minimum
};

/// Minimizes sigma_G or R over the pump width on [lo, hi]: a 32-point
/// scan brackets the minimum (flagging multimodality), then golden-section
/// refines to 1e-4 relative in sigma_p.
PumpOptimum optimize_pump_width(const ValidatedSetup& setup,
                                PumpObjective objective, double lo, double hi,
                                double threshold = 0.4);

}  // namespace ghostpin
