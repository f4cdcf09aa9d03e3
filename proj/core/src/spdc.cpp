#include "ghostpin/spdc.hpp"

#include <cmath>

#include "ghostpin/errors.hpp"
#include "ghostpin/parallel.hpp"
#include "ghostpin/units.hpp"

namespace ghostpin {

namespace {

// sinc(u) -> exp(-kSincGaussian * u) is the surrogate behind the
// closed-form model; gamma = kSincGaussian / 4 appears there because
// u = dkz * l_z / 2 enters the exponents as (dkz * l_z)^2-free linear form.
constexpr double kSincGaussian = 0.455;

double paraxial_mismatch(double k_s, double k_i, const DerivedWaves& w) {
  return k_s * k_s / (2.0 * w.k_s) + k_i * k_i / (2.0 * w.k_i) -
         (k_s + k_i) * (k_s + k_i) / (2.0 * w.k_p);
}

}  // namespace

double pump_spectrum(double q, const ValidatedSetup& setup) {
  const double sp = setup.sigma_p();
  return std::exp(-0.5 * sp * sp * q * q);
}

std::optional<double> phase_mismatch_or_evanescent(
    double k_s, double k_i, const ValidatedSetup& setup) noexcept {
  const DerivedWaves& w = setup.waves();
  if (setup.mode() == PropagationMode::paraxial)
    return paraxial_mismatch(k_s, k_i, w);
  const double q = k_s + k_i;
  const double rp = w.k_p * w.k_p - q * q;
  const double rs = w.k_s * w.k_s - k_s * k_s;
  const double ri = w.k_i * w.k_i - k_i * k_i;
  if (rp < 0.0 || rs < 0.0 || ri < 0.0) return std::nullopt;
  return std::sqrt(rp) - std::sqrt(rs) - std::sqrt(ri);
}

double phase_mismatch(double k_s, double k_i, const ValidatedSetup& setup) {
  const auto dkz = phase_mismatch_or_evanescent(k_s, k_i, setup);
  if (!dkz)
    fail(ErrorCode::Evanescent,
         "evanescent transverse momentum (k_s = " + format_double(k_s) +
             ", k_i = " + format_double(k_i) + ")");
  return *dkz;
}

double phase_matching_amplitude(double dkz, const ValidatedSetup& setup) {
  const double u = dkz * setup.l_z() / 2.0;
  if (setup.pm() == PmModel::sinc) {
    if (u == 0.0) return 1.0;
    return std::sin(u) / u;
  }
  return std::exp(-kSincGaussian * u);
}

BiphotonAmplitude spdc_amplitude(const SpectralGrid& grid,
                                 const ValidatedSetup& setup, int threads) {
  const double pump_sigma_k = 1.0 / setup.sigma_p();
  if (grid.signal.k_max() < 6.0 * pump_sigma_k ||
      grid.idler.k_max() < 6.0 * pump_sigma_k)
    fail(ErrorCode::GridUndersampled,
         "momentum window covers less than 6 sigma of the pump spectrum (need " +
             format_double(6.0 * pump_sigma_k) + " 1/m)");

  BiphotonAmplitude amp;
  amp.grid = grid;
  amp.field = Field2D(grid.signal.n, grid.idler.n);
  amp.signal_domain = Domain::momentum;
  amp.idler_domain = Domain::momentum;

  const bool gaussian = setup.pm() == PmModel::gaussian;
  const double sp2 = setup.sigma_p() * setup.sigma_p();
  const double lz = setup.l_z();
  const std::size_t n_i = grid.idler.n;

  std::vector<double> row_mass(grid.signal.n, 0.0);
  parallel_for(grid.signal.n, threads, [&](std::size_t i) {
    const double ks = grid.signal.k[i];
    auto* row = amp.field.data.data() + i * n_i;
    double mass = 0.0;
    for (std::size_t j = 0; j < n_i; ++j) {
      const double ki = grid.idler.k[j];
      const auto dkz = phase_mismatch_or_evanescent(ks, ki, setup);
      double value = 0.0;
      if (dkz) {
        const double q = ks + ki;
        if (gaussian) {
          // Fused exponent: the pm surrogate alone can overflow where the
          // pump term has long since crushed the product.
          value = std::exp(-0.5 * sp2 * q * q - kSincGaussian * (*dkz) * lz / 2.0);
        } else {
          value = pump_spectrum(q, setup) * phase_matching_amplitude(*dkz, setup);
        }
      }
      row[j] = value;
      mass += value * value;
    }
    row_mass[i] = mass;
  });

  // Row partials summed in index order: deterministic for any thread count.
  double mass = 0.0;
  for (double rm : row_mass) mass += rm;
  mass *= grid.signal.dk * grid.idler.dk;
  if (!(mass > 0.0)) fail(ErrorCode::ZeroMass, "biphoton amplitude is identically zero");

  const double scale = 1.0 / std::sqrt(mass);
  parallel_for(grid.signal.n, threads, [&](std::size_t i) {
    auto* row = amp.field.data.data() + i * n_i;
    for (std::size_t j = 0; j < n_i; ++j) row[j] *= scale;
  });
  return amp;
}

}  // namespace ghostpin
