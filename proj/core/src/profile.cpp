#include "ghostpin/profile.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "ghostpin/errors.hpp"

namespace ghostpin {

namespace {

void check_profile(const Profile1D& p) {
  if (p.x.size() != p.value.size())
    fail(ErrorCode::InvalidSize, "profile coordinates and values differ in length");
  for (double v : p.value) {
    if (!std::isfinite(v)) fail(ErrorCode::ValueOutOfRange, "non-finite profile value");
  }
}

struct Moments {
  double mass, mean, sigma;
};

Moments profile_moments(const Profile1D& p) {
  double mass = 0.0, first = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    mass += p.value[i];
    first += p.value[i] * p.x[i];
  }
  if (!(mass > 0.0)) fail(ErrorCode::ZeroMass, "profile has no mass");
  const double mean = first / mass;
  double second = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i)
    second += p.value[i] * (p.x[i] - mean) * (p.x[i] - mean);
  return {mass, mean, std::sqrt(std::max(second / mass, 0.0))};
}

}  // namespace

double moment_width(const Profile1D& profile) {
  check_profile(profile);
  return profile_moments(profile).sigma;
}

double moment_center(const Profile1D& profile) {
  check_profile(profile);
  return profile_moments(profile).mean;
}

GaussianFit fit_gaussian(const Profile1D& profile) {
  check_profile(profile);
  const std::size_t n = profile.x.size();
  if (n < 8) fail(ErrorCode::InvalidSize, "gaussian fit needs >= 8 samples");
  const double peak = *std::max_element(profile.value.begin(), profile.value.end());
  if (!(peak > 0.0)) fail(ErrorCode::ZeroMass, "gaussian fit needs a positive peak");

  const Moments m = profile_moments(profile);
  // Work in units of the peak and the moment scale so the damped steps are
  // well conditioned regardless of physical magnitudes.
  double amp = peak;
  double center = m.mean;
  double sigma = m.sigma > 0.0 ? m.sigma : (profile.x.back() - profile.x.front()) / 8.0;

  auto sse = [&](double a, double c, double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = (profile.x[i] - c) / s;
      const double r = profile.value[i] - a * std::exp(-0.5 * t * t);
      acc += r * r;
    }
    return acc;
  };

  double lambda = 1e-3;
  double current = sse(amp, center, sigma);
  int iterations = 0;
  bool converged = false;
  for (; iterations < 200 && !converged; ++iterations) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = profile.x[i] - center;
      const double g = std::exp(-0.5 * dx * dx / (sigma * sigma));
      const double f = amp * g;
      const double r = profile.value[i] - f;
      Eigen::Vector3d j(g, f * dx / (sigma * sigma),
                        f * dx * dx / (sigma * sigma * sigma));
      jtj += j * j.transpose();
      jtr += j * r;
    }
    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::Matrix3d damped = jtj;
      for (int k = 0; k < 3; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-30);
      const Eigen::Vector3d step = damped.ldlt().solve(jtr);
      const double a2 = amp + step(0);
      const double c2 = center + step(1);
      const double s2 = sigma + step(2);
      if (s2 != 0.0 && std::isfinite(a2) && std::isfinite(c2) && std::isfinite(s2)) {
        const double trial = sse(a2, c2, s2);
        if (trial <= current) {
          const double rel = std::max({std::fabs(step(0)) / std::max(std::fabs(a2), 1e-300),
                                       std::fabs(step(1)) / std::max(std::fabs(c2), sigma),
                                       std::fabs(step(2)) / std::max(std::fabs(s2), 1e-300)});
          amp = a2; center = c2; sigma = s2; current = trial;
          lambda = std::max(lambda / 3.0, 1e-14);
          stepped = true;
          converged = rel < 1e-10;
          break;
        }
      }
      lambda *= 7.0;
    }
    if (!stepped) break;  // no downhill step found; accept current parameters
  }

  GaussianFit fit;
  fit.amplitude = amp;
  fit.center = center;
  fit.width = std::fabs(sigma);
  fit.iterations = iterations;
  fit.residual_rms = std::sqrt(current / static_cast<double>(n)) / peak;
  if (fit.residual_rms > 0.20)
    fail(ErrorCode::FitDiverged,
         "gaussian fit residual " + std::to_string(fit.residual_rms) +
             " of peak exceeds 20%");
  return fit;
}

}  // namespace ghostpin
