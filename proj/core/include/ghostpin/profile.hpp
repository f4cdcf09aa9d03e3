#pragma once

#include <string>
#include <vector>

namespace ghostpin {

/// Real nonnegative 1D profile sampled on monotone coordinates.
struct Profile1D {
  std::vector<double> x;      // coordinates [m]
  std::vector<double> value;  // samples, >= 0
  std::string label;
};

struct GaussianFit {
  double amplitude = 0.0;
  double center = 0.0;         // [m]
  double width = 0.0;          // sigma of A*exp(-(x-c)^2/(2 sigma^2)) [m]
  double residual_rms = 0.0;   // RMS residual relative to the profile peak
  int iterations = 0;
};

/// Least-squares Gaussian fit, initialized from moments and refined by
/// damped (Levenberg) iterations: at most 200 steps, converged when the
/// relative parameter change drops below 1e-10.
///
/// Requires >= 8 samples and a positive peak. Throws FitDiverged when the
/// relative RMS residual exceeds 20% of the peak.
GaussianFit fit_gaussian(const Profile1D& profile);

/// sqrt(<x^2> - <x>^2) treating the normalized profile as a density.
/// Throws ZeroMass when the profile integrates to zero.
double moment_width(const Profile1D& profile);

/// Mean of the normalized profile (first moment).
double moment_center(const Profile1D& profile);

}  // namespace ghostpin
