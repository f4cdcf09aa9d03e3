#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghostpin/analytic.hpp"
#include "ghostpin/engine.hpp"
#include "ghostpin/errors.hpp"
#include "ghostpin/spdc.hpp"
#include "test_support.hpp"

using namespace ghostpin;
using test::close_rel;
using test::reference_setup;

namespace {

ValidatedSetup engine_setup(double sigma_p, double d, PmModel pm,
                            PropagationMode mode, double z_s, double z_i = 1.5,
                            double l_z = 3e-3) {
  OpticalSetup s = reference_setup();
  s.sigma_p = sigma_p;
  s.d = d;
  s.pm_model = pm;
  s.propagation_mode = mode;
  s.z_s = z_s;
  s.z_i = z_i;
  s.l_z = l_z;
  return validate_setup(s);
}

GhostPattern synthetic_two_gaussians(double separation, double sigma) {
  GhostPattern g;
  const int n = 4001;
  const double span = separation / 2.0 + 10.0 * sigma;
  for (int i = 0; i < n; ++i) {
    const double x = -span + 2.0 * span * i / (n - 1);
    g.profile.x.push_back(x);
    const double a = x - separation / 2.0;
    const double b = x + separation / 2.0;
    g.profile.value.push_back(std::exp(-a * a / (2 * sigma * sigma)) +
                              std::exp(-b * b / (2 * sigma * sigma)));
  }
  return g;
}

}  // namespace

TEST_CASE("unit transmission: raw JSP mass equals the biphoton mass") {
  const ValidatedSetup s =
      engine_setup(167e-6, 0.05, PmModel::gaussian, PropagationMode::paraxial, 0.6, 0.2);
  const SpectralGrid grid = make_grid(1024, 1024, 40e-3, 40e-3);
  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 2);
  const JspResult jsp = compute_jsp(psi, unit_transmission(grid), s, 2);
  CHECK(close_rel(jsp.raw_mass, 1.0, 1e-10));
}

TEST_CASE("unit transmission: mass invariant across d and z_i") {
  const SpectralGrid grid = make_grid(1024, 1024, 40e-3, 40e-3);
  double reference_mass = 0.0;
  for (double d : {0.05, 0.4}) {
    for (double z_i : {0.2, 0.8}) {
      const ValidatedSetup s =
          engine_setup(167e-6, d, PmModel::gaussian, PropagationMode::paraxial, 0.6, z_i);
      const BiphotonAmplitude psi = spdc_amplitude(grid, s, 2);
      const JspResult jsp = compute_jsp(psi, unit_transmission(grid), s, 2);
      if (reference_mass == 0.0) reference_mass = jsp.raw_mass;
      CHECK(close_rel(jsp.raw_mass, reference_mass, 1e-10));
    }
  }
}

TEST_CASE("ghost pattern is independent of the bucket distance") {
  const SpectralGrid grid = make_grid(4096, 1024, 52e-3, 24e-3);
  GhostPattern reference;
  for (double z_s : {0.6, 1.2}) {
    const ValidatedSetup s =
        engine_setup(167e-6, 0.3, PmModel::sinc, PropagationMode::exact, z_s);
    const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
    const GhostPattern g = ghost_pattern(compute_jsp(psi, double_slit(940e-6, 50e-6, grid), s, 4), 4);
    if (reference.profile.value.empty()) {
      reference = g;
      continue;
    }
    double peak = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < g.profile.value.size(); ++i) {
      peak = std::max(peak, reference.profile.value[i]);
      diff = std::max(diff, std::fabs(g.profile.value[i] - reference.profile.value[i]));
    }
    CHECK(diff < 1e-10 * peak);
  }
}

TEST_CASE("double slit at the optimal pump width: two clean maxima") {
  const ValidatedSetup s =
      engine_setup(167e-6, 0.3, PmModel::sinc, PropagationMode::exact, 1.2);
  const SpectralGrid grid = make_grid(4096, 1024, 52e-3, 24e-3);
  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
  const JspResult jsp = compute_jsp(psi, double_slit(940e-6, 50e-6, grid), s, 4);
  CHECK(jsp.boundary_fraction < 1e-3);
  const GhostPattern g = ghost_pattern(jsp, 4);

  const double vis = visibility(g);
  CHECK(vis < 0.4);

  // magnification -5 of the +-470 um slit centers
  double best = 0.0, x_peak = 0.0;
  for (std::size_t i = 0; i < g.profile.value.size(); ++i) {
    if (g.profile.x[i] > 0.5e-3 && g.profile.value[i] > best) {
      best = g.profile.value[i];
      x_peak = g.profile.x[i];
    }
  }
  CHECK(close_rel(x_peak, 2.35e-3, 0.05));
}

TEST_CASE("symmetric object and pump give a symmetric ghost pattern") {
  const ValidatedSetup s =
      engine_setup(102e-6, 0.3, PmModel::sinc, PropagationMode::paraxial, 0.3);
  const SpectralGrid grid = make_grid(2048, 1024, 30e-3, 24e-3);
  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
  const GhostPattern g =
      ghost_pattern(compute_jsp(psi, double_slit(940e-6, 50e-6, grid), s, 4), 4);
  const std::size_t n = g.profile.value.size();
  double peak = 0.0, asym = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    peak = std::max(peak, g.profile.value[j]);
    asym = std::max(asym, std::fabs(g.profile.value[j] - g.profile.value[n - j]));
  }
  CHECK(asym < 1e-10 * peak);
}

TEST_CASE("delta slit matches the closed-form center and width") {
  // gaussian surrogate + paraxial: the model is exact, so the fitted
  // pattern parameters land on the closed forms to discretization.
  const double a_req = 0.4e-3;
  const ValidatedSetup s =
      engine_setup(167e-6, 0.3, PmModel::gaussian, PropagationMode::paraxial, 0.3);
  const SpectralGrid grid = make_grid(2048, 2048, 28.672e-3, 28.672e-3);
  const ObjectTransmission obj = delta_slit(a_req, grid);
  const double a_snap = grid.signal.x[grid.signal.index_of(a_req)];

  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
  const GhostPattern g = ghost_pattern(compute_jsp(psi, obj, s, 4), 4);
  const GaussianFit fit = fit_gaussian(g.profile);

  const Alphas a = alphas(s);
  CHECK(close_rel(fit.center, magnification(a) * a_snap, 0.01));
  CHECK(close_rel(fit.width, sigma_g(a), 0.01));
  // the image is inverted
  CHECK(fit.center * a_snap < 0.0);
}

TEST_CASE("illumination width grows with object distance") {
  double previous = 0.0;
  for (double d : {0.1, 0.3, 1.0}) {
    const ValidatedSetup s =
        engine_setup(258e-6, d, PmModel::gaussian, PropagationMode::paraxial, 1.2);
    const SpectralGrid grid = illumination_grid(s);
    const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
    const IlluminationWidth w = illumination_width(psi, s, 4);
    CHECK(w.sigma_s > previous);
    previous = w.sigma_s;
  }
}

TEST_CASE("illumination width shrinks with crystal thickness") {
  double previous = 1e9;
  for (double lz : {1e-3, 5e-3}) {
    const ValidatedSetup s = engine_setup(258e-6, 0.5, PmModel::gaussian,
                                          PropagationMode::paraxial, 1.2, 1.5, lz);
    const SpectralGrid grid = illumination_grid(s);
    const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
    const IlluminationWidth w = illumination_width(psi, s, 4);
    CHECK(w.sigma_s < previous);
    previous = w.sigma_s;
  }
}

TEST_CASE("illumination at the crystal is source-sized") {
  const ValidatedSetup s = engine_setup(167e-6, 1e-9, PmModel::gaussian,
                                        PropagationMode::paraxial, 1.2);
  const SpectralGrid grid = illumination_grid(s);
  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
  const IlluminationWidth w = illumination_width(psi, s, 4);
  // Oracle: the moment width of the same numerically built marginal.
  const double oracle = moment_width(w.marginal);
  CHECK(close_rel(w.sigma_s, oracle, 0.15));
  // source-size scale: within a factor of a few of sigma_0
  const double s0 = pinhole_sigma0(s);
  CHECK(w.sigma_s > 0.2 * s0);
  CHECK(w.sigma_s < 5.0 * s0);
}

TEST_CASE("visibility of synthetic patterns") {
  // far apart: essentially zero
  CHECK(visibility(synthetic_two_gaussians(10.0, 1.0)) < 1e-4);

  // coincident: a single maximum
  GhostPattern single = synthetic_two_gaussians(0.0, 1.0);
  CHECK_THROWS_AS(visibility(single), Error);

  // separated by the closed-form resolution: midpoint ratio 0.4 +- 2%
  const ValidatedSetup s =
      engine_setup(258e-6, 1.0, PmModel::gaussian, PropagationMode::paraxial, 1.2);
  const Alphas a = alphas(s);
  const double r = resolution(s);
  const double image_sep = std::fabs(magnification(a)) * r;  // |x0(B) - x0(A)|
  const double vis = visibility(synthetic_two_gaussians(image_sep, sigma_g(a)));
  CHECK(close_rel(vis, 0.4, 0.02));
}

TEST_CASE("two delta slits a resolution apart sit at the threshold") {
  const ValidatedSetup s =
      engine_setup(258e-6, 1.0, PmModel::gaussian, PropagationMode::paraxial, 1.0);
  const double r = resolution(s);
  const SpectralGrid grid = make_grid(2048, 2048, 28.672e-3, 28.672e-3);
  // two discrete deltas at +-R/2
  ObjectTransmission obj = delta_slit(r / 2.0, grid);
  const ObjectTransmission other = delta_slit(-r / 2.0, grid);
  for (std::size_t i = 0; i < obj.samples.size(); ++i)
    obj.samples[i] += other.samples[i];
  obj.descriptor = "two deltas at +-R/2";

  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 4);
  const GhostPattern g = ghost_pattern(compute_jsp(psi, obj, s, 4), 4);
  const double vis = visibility(g);
  CHECK(vis > 0.4 - 0.05);
  CHECK(vis < 0.4 + 0.05);
}

TEST_CASE("wrap-around is caught by the boundary sentinel") {
  // A detector-plane window far too small for the slit diffraction.
  const ValidatedSetup s =
      engine_setup(167e-6, 0.3, PmModel::sinc, PropagationMode::paraxial, 1.2);
  const SpectralGrid grid = make_grid(256, 256, 4e-3, 4e-3);
  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 2);
  try {
    compute_jsp(psi, double_slit(940e-6, 50e-6, grid), s, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridUndersampled);
  }
}

TEST_CASE("representation and size mismatches are rejected") {
  const ValidatedSetup s =
      engine_setup(167e-6, 0.3, PmModel::sinc, PropagationMode::paraxial, 1.2);
  const SpectralGrid grid = make_grid(256, 256, 20e-3, 20e-3);
  const SpectralGrid other = make_grid(512, 256, 20e-3, 20e-3);
  const BiphotonAmplitude psi = spdc_amplitude(grid, s, 1);
  CHECK_THROWS_AS(compute_jsp(psi, unit_transmission(other), s, 1), Error);
}

TEST_CASE("jsp determinism across thread counts") {
  const ValidatedSetup s =
      engine_setup(167e-6, 0.3, PmModel::sinc, PropagationMode::exact, 1.2);
  const SpectralGrid grid = make_grid(512, 512, 24e-3, 24e-3);
  const BiphotonAmplitude psi1 = spdc_amplitude(grid, s, 1);
  const BiphotonAmplitude psi3 = spdc_amplitude(grid, s, 3);
  CHECK(psi1.field.data == psi3.field.data);
  const JspResult a = compute_jsp(psi1, unit_transmission(grid), s, 1);
  const JspResult b = compute_jsp(psi3, unit_transmission(grid), s, 3);
  CHECK(a.values == b.values);
}
