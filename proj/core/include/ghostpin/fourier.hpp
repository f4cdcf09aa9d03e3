#pragma once

#include "ghostpin/field.hpp"

namespace ghostpin {

enum class FftDirection {
  forward,  // x -> k, kernel exp(-i k x)
  inverse,  // k -> x, kernel exp(+i k x)
};

/// In-place unitary centered DFT along one axis of the field.
///
/// With zero-centered coordinates (origin at index n/2, n a power of two)
/// the transform is exactly
///   F[m] = n^{-1/2} sum_j f[j] exp(-i k[m] x[j])     (forward)
/// and its unitary inverse with kernel exp(+i k x). Rows/columns are
/// independent, so results are bitwise identical for any thread count.
void transform_axis(Field2D& field, Axis axis, FftDirection dir, int threads);

/// Convenience: transform an amplitude's axis and update its domain tag.
/// Throws WrongRepresentation if the axis is already in the target domain.
void to_position(BiphotonAmplitude& amp, Axis axis, int threads);
void to_momentum(BiphotonAmplitude& amp, Axis axis, int threads);

}  // namespace ghostpin
