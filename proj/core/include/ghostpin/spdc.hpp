#pragma once

#include <optional>

#include "ghostpin/field.hpp"
#include "ghostpin/setup.hpp"

namespace ghostpin {

/// Pump spatial spectrum exp(-sigma_p^2 q^2 / 2), unit peak, evaluated at
/// the pump transverse momentum q = k_s + k_i.
double pump_spectrum(double q, const ValidatedSetup& setup);

/// Longitudinal mismatch dk_z = k_zP - k_zS - k_zI under transverse
/// phase matching k_xP = k_s + k_i.
///
/// exact:    sqrt(k_p^2-(k_s+k_i)^2) - sqrt(k_s^2-k_xs^2) - sqrt(k_i^2-k_xi^2)
/// paraxial: k_xs^2/(2 k_s) + k_xi^2/(2 k_i) - (k_xs+k_xi)^2/(2 k_p)
///
/// In exact mode an evanescent argument (negative radicand) throws
/// Error(Evanescent); use phase_mismatch_or_evanescent to get nullopt
/// instead (the amplitude builder maps those samples to zero).
double phase_mismatch(double k_s, double k_i, const ValidatedSetup& setup);
std::optional<double> phase_mismatch_or_evanescent(
    double k_s, double k_i, const ValidatedSetup& setup) noexcept;

/// Longitudinal phase-matching amplitude at u = dkz * l_z / 2.
///
/// sinc model:     sin(u)/u                   (1 at u = 0)
/// gaussian model: exp(-0.455 u)              (the closed-form surrogate;
///                  linear in u, i.e. Gaussian in the transverse momenta)
double phase_matching_amplitude(double dkz, const ValidatedSetup& setup);

/// Builds the biphoton amplitude over the grid in the (k_s, k_i)
/// representation: pump_spectrum x phase_matching_amplitude, normalized so
/// that sum |psi|^2 dk_s dk_i = 1.
///
/// Throws GridUndersampled when either momentum window covers less than
/// 6 standard deviations of the pump spectral width 1/sigma_p.
BiphotonAmplitude spdc_amplitude(const SpectralGrid& grid,
                                 const ValidatedSetup& setup, int threads = 1);

}  // namespace ghostpin
