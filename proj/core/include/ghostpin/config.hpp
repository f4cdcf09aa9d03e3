#pragma once

#include <string>

#include "ghostpin/setup.hpp"

namespace ghostpin {

struct GridConfig {
  bool automatic = true;       // window_s = "auto"
  std::size_t n_s = 1024;
  std::size_t n_i = 1024;
  double window_s = 0.0;       // [m]; ignored when automatic
  double window_i = 0.0;       // [m]; ignored when automatic
  double fov_i = 10e-3;        // requested idler field of view for auto grids

  bool operator==(const GridConfig&) const = default;
};

enum class ObjectKind { none, slit, delta_slit, double_slit, file };

struct ObjectConfig {
  ObjectKind kind = ObjectKind::none;
  double center = 0.0;      // slit / delta_slit
  double width = 0.0;       // slit / double_slit
  double separation = 0.0;  // double_slit
  std::string path;         // file

  bool operator==(const ObjectConfig&) const = default;
};

struct RunOptions {
  int threads = 1;
  std::string axis;          // sweep: sigma_p | d | l_z
  double from = 0.0;         // sweep range [m]
  double to = 0.0;
  int points = 0;
  std::string objective = "resolution";  // optimize: sigma_g | resolution
  double threshold = 0.4;
  bool engine_sigma_s = false;  // sweep: add engine-backed sigma_s and N
  double cut_xs = 0.0;          // jsp: optional horizontal cut position
  bool cut = false;

  bool operator==(const RunOptions&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool csv = true;
  bool pgm = true;

  bool operator==(const OutputConfig&) const = default;
};

/// One experiment description: a sectioned key-value file with
/// unit-suffixed lengths (e.g. "sigma_p = 167um"). Unknown sections or
/// keys are rejected. serialize() emits canonical meters; the
/// struct -> text -> struct round trip is lossless.
struct RunConfig {
  OpticalSetup setup;
  GridConfig grid;
  ObjectConfig object;
  RunOptions run;
  OutputConfig output;

  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::string& path);
  std::string serialize() const;

  bool operator==(const RunConfig&) const = default;
};

}  // namespace ghostpin
