#pragma once

#include <cstddef>
#include <vector>

#include "ghostpin/setup.hpp"

namespace ghostpin {

struct ObjectTransmission;

/// One sampling axis: n points, position step dx, momentum step
/// dk = 2*pi/(n*dx). Coordinates are zero-centered with the origin at
/// index n/2, i.e. x[j] = (j - n/2)*dx, and likewise for k.
struct AxisGrid {
  std::size_t n = 0;
  double dx = 0.0;
  double dk = 0.0;
  std::vector<double> x;  // position coordinates [m]
  std::vector<double> k;  // momentum coordinates [1/m]

  double window() const noexcept { return static_cast<double>(n) * dx; }
  double k_max() const noexcept { return static_cast<double>(n / 2) * dk; }
  /// Index of the sample closest to position value (clamped to range).
  std::size_t index_of(double position) const noexcept;
};

/// Paired signal/idler sampling. The DFT convention over these axes is
/// fixed: forward maps x->k with kernel exp(-i k x), inverse maps k->x
/// with kernel exp(+i k x), both scaled 1/sqrt(n) per axis.
struct SpectralGrid {
  AxisGrid signal;
  AxisGrid idler;
};

/// Builds a grid with dx = window/n per axis.
/// n must be a power of two in [64, 65536]; windows must be positive.
SpectralGrid make_grid(std::size_t n_s, std::size_t n_i, double window_s,
                       double window_i);

/// Heuristic grid for a sampled object and a requested idler field of view:
///   dx_s <= min(finest object feature / 4, analytic sigma_G / 4)
///   idler window >= max(fov_i, 2*(|x0(a_max)| + 6*sigma_G))
/// and the momentum windows cover the pump spectral width (>= 6/sigma_p)
/// plus the object's spectral support and the phase-matching emission cone.
SpectralGrid auto_grid(const ValidatedSetup& setup,
                       const ObjectTransmission& object, double fov_i);

}  // namespace ghostpin
