#pragma once

#include <string>
#include <vector>

namespace ghostpin {

inline constexpr double kSpeedOfLight = 299792458.0;  // [m/s], n = 1 throughout

enum class PropagationMode { paraxial, exact };
enum class PmModel { sinc, gaussian };

const char* to_string(PropagationMode mode) noexcept;
const char* to_string(PmModel model) noexcept;
PropagationMode propagation_mode_from_string(const std::string& s);
PmModel pm_model_from_string(const std::string& s);

/// Physical parameters of the imaging arrangement. All lengths in meters.
/// The crystal's refractive index is fixed to 1 (free-space dispersion).
struct OpticalSetup {
  double lambda_p = 350e-9;  // pump wavelength
  double lambda_s = 700e-9;  // signal wavelength
  double lambda_i = 700e-9;  // idler wavelength
  double l_z = 3e-3;         // crystal thickness
  double sigma_p = 167e-6;   // pump width in position space
  double d = 0.3;            // crystal -> object
  double z_s = 1.2;          // crystal -> bucket detector
  double z_i = 1.5;          // crystal -> resolving detector
  PropagationMode propagation_mode = PropagationMode::paraxial;
  PmModel pm_model = PmModel::sinc;

  bool operator==(const OpticalSetup&) const = default;
};

/// Quantities derived once at validation time.
struct DerivedWaves {
  double omega_p, omega_s, omega_i;  // angular frequencies [rad/s]
  double k_p, k_s, k_i;              // wave numbers 2*pi/lambda [1/m]
  double pump_rayleigh;              // 2*pi*sigma_p^2/lambda_p [m]
};

/// An OpticalSetup that passed validation, plus its derived record.
/// Immutable after construction; safe to share across threads.
class ValidatedSetup {
 public:
  const OpticalSetup& raw() const noexcept { return setup_; }
  const DerivedWaves& waves() const noexcept { return waves_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  double lambda_p() const noexcept { return setup_.lambda_p; }
  double lambda_s() const noexcept { return setup_.lambda_s; }
  double lambda_i() const noexcept { return setup_.lambda_i; }
  double l_z() const noexcept { return setup_.l_z; }
  double sigma_p() const noexcept { return setup_.sigma_p; }
  double d() const noexcept { return setup_.d; }
  double z_s() const noexcept { return setup_.z_s; }
  double z_i() const noexcept { return setup_.z_i; }
  PropagationMode mode() const noexcept { return setup_.propagation_mode; }
  PmModel pm() const noexcept { return setup_.pm_model; }

 private:
  friend ValidatedSetup validate_setup(const OpticalSetup&);
  OpticalSetup setup_;
  DerivedWaves waves_{};
  std::vector<std::string> warnings_;
};

/// Checks the setup invariants and returns the validated record.
///
/// Throws Error with code:
///   EnergyMismatch     if 1/lambda_p != 1/lambda_s + 1/lambda_i (rel. 1e-9)
///   NonPositiveLength  if any length is <= 0
///   GeometryOrder      if z_s < d (object must lie before the bucket)
///
/// A pump Rayleigh length below 10*l_z produces a warning, not an error.
ValidatedSetup validate_setup(const OpticalSetup& setup);

}  // namespace ghostpin
