#include "ghostpin/propagation.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "ghostpin/errors.hpp"
#include "ghostpin/parallel.hpp"

namespace ghostpin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit-modulus phasor for a large phase given as an exact product split
// (hi + lo == a*b exactly) plus a small correction term. Reducing hi
// against the representable 2*pi keeps the composition of phases
// consistent: two reduced phases and their reduced sum differ only by an
// integer multiple of the same modulus.
std::complex<double> phasor_big_small(double big_hi, double big_lo, double small) {
  const double reduced = std::remainder(big_hi, kTwoPi) + big_lo + small;
  return {std::cos(reduced), std::sin(reduced)};
}

std::complex<double> phasor_product(double a, double b, double small) {
  const double hi = a * b;
  const double lo = std::fma(a, b, -hi);
  return phasor_big_small(hi, lo, small);
}

}  // namespace

std::complex<double> transfer(double k_x, double z, double lambda,
                              PropagationMode mode) {
  const double k = kTwoPi / lambda;
  if (z == 0.0) return {1.0, 0.0};
  if (mode == PropagationMode::paraxial) {
    return phasor_product(k, z, -k_x * k_x * z / (2.0 * k));
  }
  const double radicand = k * k - k_x * k_x;
  if (radicand < 0.0) return {0.0, 0.0};
  return phasor_product(std::sqrt(radicand), z, 0.0);
}

void apply_transfer(BiphotonAmplitude& amp, Axis axis, double z, double lambda,
                    PropagationMode mode, int threads) {
  if (amp.domain(axis) != Domain::momentum)
    fail(ErrorCode::WrongRepresentation,
         "transfer functions act on a momentum-space axis");
  if (z == 0.0) return;

  const AxisGrid& k_axis = axis == Axis::signal ? amp.grid.signal : amp.grid.idler;
  std::vector<std::complex<double>> factor(k_axis.n);
  for (std::size_t i = 0; i < k_axis.n; ++i)
    factor[i] = transfer(k_axis.k[i], z, lambda, mode);

  const std::size_t n_cols = amp.field.n_cols;
  parallel_for(amp.field.n_rows, threads, [&](std::size_t i) {
    auto* row = amp.field.data.data() + i * n_cols;
    if (axis == Axis::signal) {
      const auto f = factor[i];
      for (std::size_t j = 0; j < n_cols; ++j) row[j] *= f;
    } else {
      for (std::size_t j = 0; j < n_cols; ++j) row[j] *= factor[j];
    }
  });
}

}  // namespace ghostpin
