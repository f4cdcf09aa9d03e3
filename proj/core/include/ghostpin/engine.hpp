#pragma once

#include <string>
#include <vector>

#include "ghostpin/field.hpp"
#include "ghostpin/objects.hpp"
#include "ghostpin/profile.hpp"
#include "ghostpin/setup.hpp"

namespace ghostpin {

/// Joint spatial probability at the detector planes, normalized to unit
/// mass over dx_s * dx_i.
struct JspResult {
  std::vector<double> values;  // row-major: rows = x_S, cols = x_I
  SpectralGrid grid;
  OpticalSetup setup;
  std::string object_descriptor;
  double raw_mass = 0.0;       // physical mass before normalization
  double boundary_fraction = 0.0;  // mass within 3 samples of any x edge

  double at(std::size_t i, std::size_t j) const {
    return values[i * grid.idler.n + j];
  }
  /// Horizontal cut JSP(x_S = const, x_I) (point-detector convenience).
  Profile1D cut_at_signal(double x_s) const;
};

/// Bucket-detector coincidence profile G(x_I), unit mass over dx_i.
struct GhostPattern {
  Profile1D profile;
  std::string provenance;
};

struct IlluminationWidth {
  double sigma_s = 0.0;
  bool moment_fallback = false;  // gaussian fit diverged; moment width used
  Profile1D marginal;            // signal-axis marginal at the object plane
};

/// Detector-plane joint probability of a biphoton interacting with the
/// object: propagate the signal to the object (d), imprint the
/// transmission in position space, propagate on to the detectors
/// (z_s - d and z_i), transform to positions, take the squared modulus
/// and normalize.
///
/// Throws WrongRepresentation unless psi is momentum/momentum on a grid
/// matching the object, and GridUndersampled when >= 0.1% of the mass
/// lands within 3 samples of an x boundary (wrap-around sentinel).
JspResult compute_jsp(const BiphotonAmplitude& psi,
                      const ObjectTransmission& object,
                      const ValidatedSetup& setup, int threads = 1);

/// G(x_I) = sum_xS JSP * dx_s.
GhostPattern ghost_pattern(const JspResult& jsp, int threads = 1);

/// Width of the signal illumination at the object plane: propagate the
/// signal axis by d, none on the idler, marginalize |.|^2 over x_I and
/// fit a Gaussian (moment width on fit divergence, flagged).
IlluminationWidth illumination_width(const BiphotonAmplitude& psi,
                                     const ValidatedSetup& setup,
                                     int threads = 1);

/// Midpoint-to-peak ratio of a two-peaked pattern. Dominant maxima are
/// local maxima reaching at least 20% of the global one; exactly two are
/// required (NotBimodal otherwise). The two-slit distinguishability
/// criterion is a returned value <= threshold (0.4 by default elsewhere).
double visibility(const GhostPattern& pattern);

/// Grid sized for illumination-width runs: momentum windows hold the
/// phase-matching emission cone plus the pump spectrum, position windows
/// hold the cone's footprint at the object plane.
SpectralGrid illumination_grid(const ValidatedSetup& setup);

}  // namespace ghostpin
