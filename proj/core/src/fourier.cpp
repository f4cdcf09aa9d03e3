#include "ghostpin/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "ghostpin/errors.hpp"
#include "ghostpin/parallel.hpp"

namespace ghostpin {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// Contiguous 1D plans are cached per (length, sign) for the lifetime of the
// process. FFTW_UNALIGNED keeps them valid for any vector storage.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::scoped_lock lock(mutex_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan =
        fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Centered DFT for even n via (-1)^j pre/post modulation:
//   F[m] = (-1)^m n^{-1/2} DFT_j[ (-1)^j f[j] ][m]
// which equals sum_j f[j] exp(-i 2*pi (m-n/2)(j-n/2)/n)/sqrt(n) whenever
// n is divisible by 4 (guaranteed: n is a power of two >= 64).
void transform_lane(std::complex<double>* lane, int n, int stride, int sign,
                    double scale) {
  thread_local std::vector<std::complex<double>> scratch;
  std::complex<double>* work = lane;
  if (stride != 1) {
    scratch.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) scratch[j] = lane[j * stride];
    work = scratch.data();
  }
  for (int j = 1; j < n; j += 2) work[j] = -work[j];
  fftw_plan plan = plan_cache().get(n, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(work);
  fftw_execute_dft(plan, ptr, ptr);
  for (int m = 0; m < n; ++m) work[m] *= (m & 1) ? -scale : scale;
  if (stride != 1) {
    for (int j = 0; j < n; ++j) lane[j * stride] = work[j];
  }
}

}  // namespace

void transform_axis(Field2D& field, Axis axis, FftDirection dir, int threads) {
  const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  const std::size_t n_rows = field.n_rows;
  const std::size_t n_cols = field.n_cols;
  if (axis == Axis::idler) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_cols));
    parallel_for(n_rows, threads, [&](std::size_t i) {
      transform_lane(field.data.data() + i * n_cols, static_cast<int>(n_cols),
                     1, sign, scale);
    });
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_rows));
    parallel_for(n_cols, threads, [&](std::size_t j) {
      transform_lane(field.data.data() + j, static_cast<int>(n_rows),
                     static_cast<int>(n_cols), sign, scale);
    });
  }
}

void to_position(BiphotonAmplitude& amp, Axis axis, int threads) {
  if (amp.domain(axis) == Domain::position)
    fail(ErrorCode::WrongRepresentation, "axis is already in position space");
  transform_axis(amp.field, axis, FftDirection::inverse, threads);
  amp.domain(axis) = Domain::position;
}

void to_momentum(BiphotonAmplitude& amp, Axis axis, int threads) {
  if (amp.domain(axis) == Domain::momentum)
    fail(ErrorCode::WrongRepresentation, "axis is already in momentum space");
  transform_axis(amp.field, axis, FftDirection::forward, threads);
  amp.domain(axis) = Domain::momentum;
}

}  // namespace ghostpin
