#include "ghostpin/objects.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ghostpin/errors.hpp"
#include "ghostpin/units.hpp"

namespace ghostpin {

namespace {

void require_inside(double lo, double hi, const AxisGrid& axis, const char* what) {
  if (lo < axis.x.front() || hi > axis.x.back())
    fail(ErrorCode::OutOfWindow,
         std::string(what) + " [" + format_length(lo) + ", " + format_length(hi) +
             "] outside the signal window [" + format_length(axis.x.front()) +
             ", " + format_length(axis.x.back()) + "]");
}

ObjectTransmission blank(const SpectralGrid& grid) {
  ObjectTransmission t;
  t.samples.assign(grid.signal.n, {0.0, 0.0});
  t.dx = grid.signal.dx;
  return t;
}

void paint_slit(ObjectTransmission& t, double center, double width,
                const AxisGrid& axis) {
  for (std::size_t j = 0; j < axis.n; ++j) {
    if (std::fabs(axis.x[j] - center) <= width / 2.0) t.samples[j] = 1.0;
  }
}

}  // namespace

double ObjectTransmission::half_extent() const noexcept {
  double extent = 0.0;
  const double n_half = static_cast<double>(samples.size() / 2);
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (std::abs(samples[j]) > 1e-12)
      extent = std::max(extent, std::fabs((static_cast<double>(j) - n_half) * dx));
  }
  return extent;
}

ObjectTransmission slit(double center, double width, const SpectralGrid& grid) {
  if (width < 2.0 * grid.signal.dx)
    fail(ErrorCode::InvalidSize,
         "slit width " + format_length(width) + " below 2*dx = " +
             format_length(2.0 * grid.signal.dx) + "; use a delta slit");
  require_inside(center - width / 2.0, center + width / 2.0, grid.signal, "slit");
  ObjectTransmission t = blank(grid);
  paint_slit(t, center, width, grid.signal);
  t.descriptor = "slit(center=" + format_length(center) + ", width=" + format_length(width) + ")";
  t.feature = width;
  return t;
}

ObjectTransmission delta_slit(double center, const SpectralGrid& grid) {
  require_inside(center, center, grid.signal, "delta slit");
  ObjectTransmission t = blank(grid);
  const std::size_t j = grid.signal.index_of(center);
  t.samples[j] = 1.0 / grid.signal.dx;
  t.is_delta = true;
  t.snap_distance = std::fabs(grid.signal.x[j] - center);
  t.descriptor = "delta_slit(center=" + format_length(grid.signal.x[j]) +
                 (t.snap_distance > 0.0
                      ? ", snapped by " + format_length(t.snap_distance)
                      : "") +
                 ")";
  t.feature = 0.0;
  return t;
}

ObjectTransmission double_slit(double separation, double width,
                               const SpectralGrid& grid) {
  if (!(separation > width))
    fail(ErrorCode::InvalidSize, "slit separation must exceed the slit width");
  if (width < 2.0 * grid.signal.dx)
    fail(ErrorCode::InvalidSize,
         "slit width " + format_length(width) + " below 2*dx = " +
             format_length(2.0 * grid.signal.dx));
  const double outer = separation / 2.0 + width / 2.0;
  require_inside(-outer, outer, grid.signal, "double slit");
  ObjectTransmission t = blank(grid);
  paint_slit(t, -separation / 2.0, width, grid.signal);
  paint_slit(t, separation / 2.0, width, grid.signal);
  t.descriptor = "double_slit(separation=" + format_length(separation) +
                 ", width=" + format_length(width) + ")";
  if (separation - width <= 2.0 * grid.signal.dx)
    t.descriptor += " [contiguous at grid resolution]";
  t.feature = width;
  return t;
}

ObjectTransmission unit_transmission(const SpectralGrid& grid) {
  ObjectTransmission t = blank(grid);
  std::fill(t.samples.begin(), t.samples.end(), std::complex<double>{1.0, 0.0});
  t.descriptor = "unit";
  t.feature = grid.signal.window();
  return t;
}

ObjectTransmission object_from_file(const std::string& path,
                                    const SpectralGrid& grid) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open object file '" + path + "'");

  std::vector<double> xs, ts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::string xa, ta, extra;
    if (!(ls >> xa >> ta) || (ls >> extra))
      fail(ErrorCode::ParseError,
           path + ":" + std::to_string(line_no) + ": expected two columns");
    const double x = parse_length(xa);
    const double t = parse_double(ta);
    if (t < 0.0 || t > 1.0 + 1e-6)
      fail(ErrorCode::ValueOutOfRange,
           path + ":" + std::to_string(line_no) + ": transmission " +
               format_double(t) + " outside [0, 1]");
    if (!xs.empty() && x <= xs.back())
      fail(ErrorCode::NonMonotonicX,
           path + ":" + std::to_string(line_no) + ": x must increase");
    xs.push_back(x);
    ts.push_back(std::clamp(t, 0.0, 1.0));
  }
  if (xs.size() < 2) fail(ErrorCode::ParseError, path + ": need at least two points");

  ObjectTransmission obj = blank(grid);
  double peak = 0.0;
  for (std::size_t j = 0; j < grid.signal.n; ++j) {
    const double x = grid.signal.x[j];
    if (x < xs.front() || x > xs.back()) continue;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = std::min<std::size_t>(it - xs.begin(), xs.size() - 1);
    const std::size_t lo = hi == 0 ? 0 : hi - 1;
    double v = ts[lo];
    if (hi != lo) {
      const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
      v = ts[lo] * (1.0 - w) + ts[hi] * w;
    }
    obj.samples[j] = std::clamp(v, 0.0, 1.0);
    peak = std::max(peak, v);
  }
  obj.descriptor = "file(" + path + ")";

  // Feature estimate: the shortest contiguous run above half of the peak.
  if (peak > 0.0) {
    std::size_t run = 0, shortest = grid.signal.n;
    for (std::size_t j = 0; j <= grid.signal.n; ++j) {
      const bool high = j < grid.signal.n && std::abs(obj.samples[j]) > peak / 2.0;
      if (high) {
        ++run;
      } else if (run > 0) {
        shortest = std::min(shortest, run);
        run = 0;
      }
    }
    obj.feature = static_cast<double>(shortest) * grid.signal.dx;
  }
  return obj;
}

}  // namespace ghostpin
