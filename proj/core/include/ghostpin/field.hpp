#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ghostpin/grid.hpp"

namespace ghostpin {

enum class Axis { signal, idler };
enum class Domain { momentum, position };

/// Dense row-major complex field; rows index the signal axis, columns the
/// idler axis.
struct Field2D {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::complex<double>> data;

  Field2D() = default;
  Field2D(std::size_t rows, std::size_t cols)
      : n_rows(rows), n_cols(cols), data(rows * cols) {}

  std::complex<double>& at(std::size_t i, std::size_t j) {
    return data[i * n_cols + j];
  }
  const std::complex<double>& at(std::size_t i, std::size_t j) const {
    return data[i * n_cols + j];
  }
};

/// Two-photon amplitude over the grid, with a per-axis record of whether
/// that axis currently lives in momentum or position space.
struct BiphotonAmplitude {
  Field2D field;
  SpectralGrid grid;
  Domain signal_domain = Domain::momentum;
  Domain idler_domain = Domain::momentum;

  Domain domain(Axis axis) const noexcept {
    return axis == Axis::signal ? signal_domain : idler_domain;
  }
  Domain& domain(Axis axis) noexcept {
    return axis == Axis::signal ? signal_domain : idler_domain;
  }
};

}  // namespace ghostpin
