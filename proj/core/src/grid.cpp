#include "ghostpin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghostpin/analytic.hpp"
#include "ghostpin/errors.hpp"
#include "ghostpin/objects.hpp"
#include "ghostpin/units.hpp"

namespace ghostpin {

namespace {

constexpr std::size_t kMinN = 64;
constexpr std::size_t kMaxN = 65536;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

AxisGrid make_axis(std::size_t n, double window) {
  if (!is_power_of_two(n) || n < kMinN || n > kMaxN)
    fail(ErrorCode::InvalidSize,
         "axis size " + std::to_string(n) + " must be a power of two in [64, 65536]");
  if (!(window > 0.0) || !std::isfinite(window))
    fail(ErrorCode::InvalidSize, "window must be positive");
  AxisGrid axis;
  axis.n = n;
  axis.dx = window / static_cast<double>(n);
  axis.dk = kTwoPi / window;
  axis.x.resize(n);
  axis.k.resize(n);
  const auto half = static_cast<double>(n / 2);
  for (std::size_t j = 0; j < n; ++j) {
    axis.x[j] = (static_cast<double>(j) - half) * axis.dx;
    axis.k[j] = (static_cast<double>(j) - half) * axis.dk;
  }
  return axis;
}

std::size_t next_power_of_two(double value) {
  std::size_t n = kMinN;
  while (n < kMaxN && static_cast<double>(n) < value) n *= 2;
  return n;
}

}  // namespace

std::size_t AxisGrid::index_of(double position) const noexcept {
  const double j = std::round(position / dx + static_cast<double>(n / 2));
  const auto clamped = std::clamp(j, 0.0, static_cast<double>(n - 1));
  return static_cast<std::size_t>(clamped);
}

SpectralGrid make_grid(std::size_t n_s, std::size_t n_i, double window_s,
                       double window_i) {
  SpectralGrid grid;
  grid.signal = make_axis(n_s, window_s);
  grid.idler = make_axis(n_i, window_i);
  return grid;
}

SpectralGrid auto_grid(const ValidatedSetup& setup,
                       const ObjectTransmission& object, double fov_i) {
  if (!(fov_i > 0.0)) fail(ErrorCode::InvalidSize, "fov_i must be positive");

  const double feature = object.finest_feature();
  if (feature < 1e-8)
    fail(ErrorCode::ObjectUnresolvable,
         "object feature " + format_length(feature) + " below 10 nm");
  const double a_max = object.half_extent();

  const AnalyticReport report = analytic_report(setup);
  const double sigma_g = report.sigma_g;
  const double x0_max = std::fabs(report.magnification) * a_max;

  // Momentum coverage: pump spectral width, object diffraction, and the
  // phase-matching emission cone all have to fit inside +-pi/dx.
  const double k_pump = 6.0 / setup.sigma_p();
  const double k_object = 4.0 * std::numbers::pi / feature;
  const double k_cone =
      std::sqrt(2.0 * std::numbers::pi * setup.waves().k_s / setup.l_z());
  const double dx_k_bound = std::numbers::pi / (k_pump + k_object + k_cone);

  const double dx_s = std::min({feature / 4.0, sigma_g / 4.0, dx_k_bound});

  // Signal window: object plus the illumination cone at the object plane,
  // with slack for diffraction spreading toward the bucket plane.
  const double cone = setup.d() * std::sqrt(setup.lambda_s() / setup.l_z());
  const double window_s_needed = 4.0 * (a_max + cone) + 16.0 * sigma_g;
  std::size_t n_s = next_power_of_two(window_s_needed / dx_s);
  const double window_s = static_cast<double>(n_s) * dx_s;

  const double window_i_needed =
      std::max(fov_i, 2.0 * (x0_max + 6.0 * sigma_g));
  const double dx_i = std::min(sigma_g / 4.0, std::numbers::pi / (k_pump + k_cone));
  std::size_t n_i = next_power_of_two(window_i_needed / dx_i);
  const double window_i = static_cast<double>(n_i) * dx_i;

  return make_grid(n_s, n_i, window_s, window_i);
}

}  // namespace ghostpin
