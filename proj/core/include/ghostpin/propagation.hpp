#pragma once

#include <complex>

#include "ghostpin/field.hpp"
#include "ghostpin/setup.hpp"

namespace ghostpin {

/// Free-space angular-spectrum transfer factor for distance z at
/// wavelength lambda, with k = 2*pi/lambda:
///
/// exact:    exp(i sqrt(k^2 - k_x^2) z) for |k_x| <= k, else 0
/// paraxial: exp(i k z) exp(-i k_x^2 z / (2 k))
///
/// The dominant phase k*z is reduced modulo 2*pi consistently (exact
/// product splitting), so successive applications compose to the combined
/// distance at the 1e-12 level whenever z1 + z2 is representable.
std::complex<double> transfer(double k_x, double z, double lambda,
                              PropagationMode mode);

/// Entrywise multiplication of the transfer factor along one momentum
/// axis; the other axis is untouched. z = 0 is the identity.
/// Throws WrongRepresentation if the axis is in position space.
void apply_transfer(BiphotonAmplitude& amp, Axis axis, double z, double lambda,
                    PropagationMode mode, int threads = 1);

}  // namespace ghostpin
