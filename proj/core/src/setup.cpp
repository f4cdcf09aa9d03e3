#include "ghostpin/setup.hpp"

#include <cmath>
#include <numbers>

#include "ghostpin/errors.hpp"
#include "ghostpin/units.hpp"

namespace ghostpin {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

const char* to_string(PropagationMode mode) noexcept {
  return mode == PropagationMode::paraxial ? "paraxial" : "exact";
}

const char* to_string(PmModel model) noexcept {
  return model == PmModel::sinc ? "sinc" : "gaussian";
}

PropagationMode propagation_mode_from_string(const std::string& s) {
  if (s == "paraxial") return PropagationMode::paraxial;
  if (s == "exact") return PropagationMode::exact;
  fail(ErrorCode::ConfigError, "unknown propagation mode '" + s + "'");
}

PmModel pm_model_from_string(const std::string& s) {
  if (s == "sinc") return PmModel::sinc;
  if (s == "gaussian") return PmModel::gaussian;
  fail(ErrorCode::ConfigError, "unknown phase-matching model '" + s + "'");
}

ValidatedSetup validate_setup(const OpticalSetup& setup) {
  const struct { const char* name; double value; } lengths[] = {
      {"lambda_p", setup.lambda_p}, {"lambda_s", setup.lambda_s},
      {"lambda_i", setup.lambda_i}, {"l_z", setup.l_z},
      {"sigma_p", setup.sigma_p},   {"d", setup.d},
      {"z_s", setup.z_s},           {"z_i", setup.z_i},
  };
  for (const auto& l : lengths) {
    if (!(l.value > 0.0) || !std::isfinite(l.value))
      fail(ErrorCode::NonPositiveLength, std::string(l.name) + " must be > 0");
  }
  if (setup.z_s < setup.d)
    fail(ErrorCode::GeometryOrder,
         "object at d = " + format_length(setup.d) + " lies past the bucket detector at z_s = " +
             format_length(setup.z_s));

  // omega_p = omega_s + omega_i, i.e. 1/lambda_p = 1/lambda_s + 1/lambda_i.
  const double inv_p = 1.0 / setup.lambda_p;
  const double inv_si = 1.0 / setup.lambda_s + 1.0 / setup.lambda_i;
  if (std::fabs(inv_p - inv_si) > 1e-9 * inv_p)
    fail(ErrorCode::EnergyMismatch,
         "1/lambda_p deviates from 1/lambda_s + 1/lambda_i by " +
             format_double(std::fabs(inv_p - inv_si) / inv_p) + " relative");

  ValidatedSetup v;
  v.setup_ = setup;
  v.waves_.k_p = kTwoPi / setup.lambda_p;
  v.waves_.k_s = kTwoPi / setup.lambda_s;
  v.waves_.k_i = kTwoPi / setup.lambda_i;
  v.waves_.omega_p = v.waves_.k_p * kSpeedOfLight;
  v.waves_.omega_s = v.waves_.k_s * kSpeedOfLight;
  v.waves_.omega_i = v.waves_.k_i * kSpeedOfLight;
  v.waves_.pump_rayleigh = kTwoPi * setup.sigma_p * setup.sigma_p / setup.lambda_p;

  if (v.waves_.pump_rayleigh < 10.0 * setup.l_z)
    v.warnings_.push_back(
        "pump Rayleigh length " + format_length(v.waves_.pump_rayleigh) +
        " is below 10x the crystal thickness " + format_length(setup.l_z) +
        "; the collimated-pump premise is marginal");
  return v;
}

}  // namespace ghostpin
