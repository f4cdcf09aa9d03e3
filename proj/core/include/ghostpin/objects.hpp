#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ghostpin/grid.hpp"

namespace ghostpin {

/// Complex transmission sampled on the signal axis of a grid.
/// Builders emit real amplitudes in [0, 1]; a discrete delta carries the
/// 1/dx normalization instead (is_delta set) so that sum T*f*dx ~ f(a).
struct ObjectTransmission {
  std::vector<std::complex<double>> samples;
  std::string descriptor;
  double dx = 0.0;            // signal-axis step the samples live on
  bool is_delta = false;
  double snap_distance = 0.0; // delta builder: |requested - snapped| [m]
  double feature = 0.0;       // finest feature size [m]; 0 for deltas

  /// Finest feature used by auto_grid's sampling rule.
  double finest_feature() const noexcept { return feature; }
  /// Largest |x| carrying transmission.
  double half_extent() const noexcept;
};

/// Unit-transmission slit of width w centered at a; zero elsewhere.
/// Requires w >= 2*dx (narrower objects should use delta_slit) and the
/// slit support inside the window (else OutOfWindow).
ObjectTransmission slit(double center, double width, const SpectralGrid& grid);

/// Discrete delta at the grid point nearest to a, value 1/dx.
ObjectTransmission delta_slit(double center, const SpectralGrid& grid);

/// Two unit slits of the given width centered at +-separation/2.
ObjectTransmission double_slit(double separation, double width,
                               const SpectralGrid& grid);

/// Piecewise-linear ingestion of a two-column CSV (x [m], transmission in
/// [0,1]) with strictly increasing x; outside the tabulated range the
/// transmission is zero. Values above 1 + 1e-6 are rejected
/// (ValueOutOfRange); smaller excursions are clamped.
ObjectTransmission object_from_file(const std::string& path,
                                    const SpectralGrid& grid);

/// Uniform unit transmission (the "no object" case).
ObjectTransmission unit_transmission(const SpectralGrid& grid);

}  // namespace ghostpin
