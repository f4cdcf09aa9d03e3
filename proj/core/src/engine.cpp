#include "ghostpin/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghostpin/errors.hpp"
#include "ghostpin/fourier.hpp"
#include "ghostpin/parallel.hpp"
#include "ghostpin/propagation.hpp"
#include "ghostpin/units.hpp"

namespace ghostpin {

namespace {

// The axis DFTs are unitary; physical densities carry sqrt(dk/dx) per
// k->x transform so that sum |f|^2 dx equals sum |F|^2 dk exactly.
void to_position_scaled(BiphotonAmplitude& amp, Axis axis, int threads) {
  to_position(amp, axis, threads);
  const AxisGrid& g = axis == Axis::signal ? amp.grid.signal : amp.grid.idler;
  const double scale = std::sqrt(g.dk / g.dx);
  parallel_for(amp.field.n_rows, threads, [&](std::size_t i) {
    auto* row = amp.field.data.data() + i * amp.field.n_cols;
    for (std::size_t j = 0; j < amp.field.n_cols; ++j) row[j] *= scale;
  });
}

void to_momentum_scaled(BiphotonAmplitude& amp, Axis axis, int threads) {
  to_momentum(amp, axis, threads);
  const AxisGrid& g = axis == Axis::signal ? amp.grid.signal : amp.grid.idler;
  const double scale = std::sqrt(g.dx / g.dk);
  parallel_for(amp.field.n_rows, threads, [&](std::size_t i) {
    auto* row = amp.field.data.data() + i * amp.field.n_cols;
    for (std::size_t j = 0; j < amp.field.n_cols; ++j) row[j] *= scale;
  });
}

double ordered_mass(const std::vector<double>& values, std::size_t n_rows,
                    std::size_t n_cols, int threads) {
  std::vector<double> row_sum(n_rows, 0.0);
  parallel_for(n_rows, threads, [&](std::size_t i) {
    double acc = 0.0;
    const double* row = values.data() + i * n_cols;
    for (std::size_t j = 0; j < n_cols; ++j) acc += row[j];
    row_sum[i] = acc;
  });
  double total = 0.0;
  for (double r : row_sum) total += r;
  return total;
}

struct Peak {
  double x;
  double value;
  std::size_t index;
};

std::vector<Peak> dominant_maxima(const Profile1D& p, double floor_fraction) {
  std::vector<Peak> peaks;
  const std::size_t n = p.value.size();
  double global = 0.0;
  for (double v : p.value) global = std::max(global, v);
  if (!(global > 0.0)) return peaks;

  std::size_t i = 1;
  while (i + 1 < n) {
    if (p.value[i] > p.value[i - 1]) {
      // Walk plateaus of equal values; a peak needs a strict drop after.
      std::size_t j = i;
      while (j + 1 < n && p.value[j + 1] == p.value[i]) ++j;
      if (j + 1 < n && p.value[j + 1] < p.value[i]) {
        const std::size_t mid = (i + j) / 2;
        if (p.value[mid] >= floor_fraction * global)
          peaks.push_back({p.x[mid], p.value[mid], mid});
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  return peaks;
}

}  // namespace

Profile1D JspResult::cut_at_signal(double x_s) const {
  Profile1D cut;
  const std::size_t i = grid.signal.index_of(x_s);
  cut.x = grid.idler.x;
  cut.value.assign(values.begin() + i * grid.idler.n,
                   values.begin() + (i + 1) * grid.idler.n);
  cut.label = "JSP(x_s=" + format_length(grid.signal.x[i]) + ", x_i)";
  return cut;
}

JspResult compute_jsp(const BiphotonAmplitude& psi,
                      const ObjectTransmission& object,
                      const ValidatedSetup& setup, int threads) {
  if (psi.signal_domain != Domain::momentum || psi.idler_domain != Domain::momentum)
    fail(ErrorCode::WrongRepresentation, "compute_jsp expects a momentum/momentum amplitude");
  if (object.samples.size() != psi.grid.signal.n)
    fail(ErrorCode::WrongRepresentation,
         "object sampled on " + std::to_string(object.samples.size()) +
             " points but the signal axis has " + std::to_string(psi.grid.signal.n));

  BiphotonAmplitude amp = psi;  // value copy; the input stays untouched
  const PropagationMode mode = setup.mode();
  const std::size_t n_cols = amp.field.n_cols;

  apply_transfer(amp, Axis::signal, setup.d(), setup.lambda_s(), mode, threads);
  to_position_scaled(amp, Axis::signal, threads);
  parallel_for(amp.field.n_rows, threads, [&](std::size_t i) {
    const std::complex<double> t = object.samples[i];
    auto* row = amp.field.data.data() + i * n_cols;
    for (std::size_t j = 0; j < n_cols; ++j) row[j] *= t;
  });
  to_momentum_scaled(amp, Axis::signal, threads);
  apply_transfer(amp, Axis::signal, setup.z_s() - setup.d(), setup.lambda_s(), mode, threads);
  apply_transfer(amp, Axis::idler, setup.z_i(), setup.lambda_i(), mode, threads);
  to_position_scaled(amp, Axis::signal, threads);
  to_position_scaled(amp, Axis::idler, threads);

  JspResult jsp;
  jsp.grid = psi.grid;
  jsp.setup = setup.raw();
  jsp.object_descriptor = object.descriptor;
  jsp.values.resize(amp.field.data.size());
  parallel_for(amp.field.n_rows, threads, [&](std::size_t i) {
    const auto* row = amp.field.data.data() + i * n_cols;
    double* out = jsp.values.data() + i * n_cols;
    for (std::size_t j = 0; j < n_cols; ++j) out[j] = std::norm(row[j]);
  });

  const double cell = psi.grid.signal.dx * psi.grid.idler.dx;
  jsp.raw_mass = ordered_mass(jsp.values, amp.field.n_rows, n_cols, threads) * cell;
  if (!(jsp.raw_mass > 0.0))
    fail(ErrorCode::ZeroMass, "JSP carries no mass (object blocks everything?)");
  const double inv = 1.0 / jsp.raw_mass;
  parallel_for(amp.field.n_rows, threads, [&](std::size_t i) {
    double* out = jsp.values.data() + i * n_cols;
    for (std::size_t j = 0; j < n_cols; ++j) out[j] *= inv;
  });

  // Aliasing sentinel: mass hugging an x boundary means the window wrapped.
  const std::size_t n_rows = amp.field.n_rows;
  double edge = 0.0;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const bool row_edge = i < 3 || i >= n_rows - 3;
    const double* row = jsp.values.data() + i * n_cols;
    if (row_edge) {
      for (std::size_t j = 0; j < n_cols; ++j) edge += row[j];
    } else {
      for (std::size_t j = 0; j < 3; ++j) edge += row[j];
      for (std::size_t j = n_cols - 3; j < n_cols; ++j) edge += row[j];
    }
  }
  jsp.boundary_fraction = edge * cell;
  if (jsp.boundary_fraction >= 1e-3)
    fail(ErrorCode::GridUndersampled,
         "boundary mass fraction " + format_double(jsp.boundary_fraction) +
             " >= 0.1%: position window too small (wrap-around)");
  return jsp;
}

GhostPattern ghost_pattern(const JspResult& jsp, int threads) {
  const std::size_t n_rows = jsp.grid.signal.n;
  const std::size_t n_cols = jsp.grid.idler.n;
  GhostPattern g;
  g.profile.x = jsp.grid.idler.x;
  g.profile.value.assign(n_cols, 0.0);
  g.profile.label = "G(x_i)";
  // Column sums accumulate over rows in index order (deterministic).
  parallel_for(n_cols, threads, [&](std::size_t j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) acc += jsp.values[i * n_cols + j];
    g.profile.value[j] = acc * jsp.grid.signal.dx;
  });
  g.provenance = jsp.object_descriptor;
  return g;
}

IlluminationWidth illumination_width(const BiphotonAmplitude& psi,
                                     const ValidatedSetup& setup, int threads) {
  if (psi.signal_domain != Domain::momentum || psi.idler_domain != Domain::momentum)
    fail(ErrorCode::WrongRepresentation, "illumination_width expects a momentum/momentum amplitude");

  BiphotonAmplitude amp = psi;
  apply_transfer(amp, Axis::signal, setup.d(), setup.lambda_s(), setup.mode(), threads);
  to_position_scaled(amp, Axis::signal, threads);
  to_position_scaled(amp, Axis::idler, threads);

  IlluminationWidth result;
  result.marginal.x = amp.grid.signal.x;
  result.marginal.value.assign(amp.grid.signal.n, 0.0);
  result.marginal.label = "signal illumination at d";
  const std::size_t n_cols = amp.field.n_cols;
  parallel_for(amp.field.n_rows, threads, [&](std::size_t i) {
    const auto* row = amp.field.data.data() + i * n_cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < n_cols; ++j) acc += std::norm(row[j]);
    result.marginal.value[i] = acc * amp.grid.idler.dx;
  });

  try {
    result.sigma_s = fit_gaussian(result.marginal).width;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FitDiverged) throw;
    result.sigma_s = moment_width(result.marginal);
    result.moment_fallback = true;
  }
  return result;
}

SpectralGrid illumination_grid(const ValidatedSetup& setup) {
  const double pi = 3.14159265358979323846;
  // First zero of the longitudinal phase-matching cone in k_s; the 1.3
  // margin keeps the first side lobe and the gaussian-surrogate tail.
  const double cone_k = std::sqrt(2.0 * pi * setup.waves().k_s / setup.l_z());
  const double k_lim = 1.3 * cone_k + 6.0 / setup.sigma_p();
  const double dx = pi / k_lim;
  const double footprint =
      1.3 * setup.d() * std::sqrt(setup.lambda_s() / setup.l_z()) +
      20.0 * setup.sigma_p();
  std::size_t n_s = 512;
  while (n_s < 16384 && static_cast<double>(n_s) * dx < 2.0 * footprint) n_s *= 2;
  const std::size_t n_i = 512;
  return make_grid(n_s, n_i, static_cast<double>(n_s) * dx,
                   static_cast<double>(n_i) * dx);
}

double visibility(const GhostPattern& pattern) {
  const auto peaks = dominant_maxima(pattern.profile, 0.20);
  if (peaks.size() != 2)
    fail(ErrorCode::NotBimodal,
         "expected two dominant maxima, found " + std::to_string(peaks.size()));
  double global = 0.0;
  for (double v : pattern.profile.value) global = std::max(global, v);
  const double x_mid = (peaks[0].x + peaks[1].x) / 2.0;
  std::size_t mid = 0;
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < pattern.profile.x.size(); ++i) {
    const double dist = std::fabs(pattern.profile.x[i] - x_mid);
    if (dist < best) { best = dist; mid = i; }
  }
  return pattern.profile.value[mid] / global;
}

}  // namespace ghostpin
