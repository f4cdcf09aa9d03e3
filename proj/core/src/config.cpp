#include "ghostpin/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ghostpin/errors.hpp"
#include "ghostpin/units.hpp"

namespace ghostpin {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

ObjectKind object_kind_from_string(const std::string& s) {
  if (s == "none") return ObjectKind::none;
  if (s == "slit") return ObjectKind::slit;
  if (s == "delta_slit") return ObjectKind::delta_slit;
  if (s == "double_slit") return ObjectKind::double_slit;
  if (s == "file") return ObjectKind::file;
  fail(ErrorCode::ConfigError, "unknown object type '" + s + "'");
}

const char* to_string(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::none: return "none";
    case ObjectKind::slit: return "slit";
    case ObjectKind::delta_slit: return "delta_slit";
    case ObjectKind::double_slit: return "double_slit";
    case ObjectKind::file: return "file";
  }
  return "none";
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  fail(ErrorCode::ConfigError, key + ": expected a boolean, got '" + value + "'");
}

std::size_t parse_size(const std::string& value, const std::string& key) {
  const double v = parse_double(value);
  if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    fail(ErrorCode::ConfigError, key + ": expected a positive integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "setup" && section != "grid" && section != "object" &&
          section != "run" && section != "output")
        fail(ErrorCode::ConfigError, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": empty key or value");

    try {
      if (section == "setup") {
        if (key == "lambda_p") cfg.setup.lambda_p = parse_length(value);
        else if (key == "lambda_s") cfg.setup.lambda_s = parse_length(value);
        else if (key == "lambda_i") cfg.setup.lambda_i = parse_length(value);
        else if (key == "l_z") cfg.setup.l_z = parse_length(value);
        else if (key == "sigma_p") cfg.setup.sigma_p = parse_length(value);
        else if (key == "d") cfg.setup.d = parse_length(value);
        else if (key == "z_s") cfg.setup.z_s = parse_length(value);
        else if (key == "z_i") cfg.setup.z_i = parse_length(value);
        else if (key == "mode") cfg.setup.propagation_mode = propagation_mode_from_string(value);
        else if (key == "pm") cfg.setup.pm_model = pm_model_from_string(value);
        else fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [setup]");
      } else if (section == "grid") {
        if (key == "n_s") cfg.grid.n_s = parse_size(value, key);
        else if (key == "n_i") cfg.grid.n_i = parse_size(value, key);
        else if (key == "window_s") {
          if (value == "auto") cfg.grid.automatic = true;
          else { cfg.grid.automatic = false; cfg.grid.window_s = parse_length(value); }
        }
        else if (key == "window_i") cfg.grid.window_i = parse_length(value);
        else if (key == "fov_i") cfg.grid.fov_i = parse_length(value);
        else fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [grid]");
      } else if (section == "object") {
        if (key == "type") cfg.object.kind = object_kind_from_string(value);
        else if (key == "center") cfg.object.center = parse_length(value);
        else if (key == "width") cfg.object.width = parse_length(value);
        else if (key == "separation") cfg.object.separation = parse_length(value);
        else if (key == "path") cfg.object.path = value;
        else fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [object]");
      } else if (section == "run") {
        if (key == "threads") cfg.run.threads = static_cast<int>(parse_size(value, key));
        else if (key == "axis") cfg.run.axis = value;
        else if (key == "from") cfg.run.from = parse_length(value);
        else if (key == "to") cfg.run.to = parse_length(value);
        else if (key == "points") cfg.run.points = static_cast<int>(parse_size(value, key));
        else if (key == "objective") cfg.run.objective = value;
        else if (key == "threshold") cfg.run.threshold = parse_double(value);
        else if (key == "engine_sigma_s") cfg.run.engine_sigma_s = parse_bool(value, key);
        else if (key == "cut_xs") { cfg.run.cut = true; cfg.run.cut_xs = parse_length(value); }
        else fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [run]");
      } else if (section == "output") {
        if (key == "dir") cfg.output.dir = value;
        else if (key == "csv") cfg.output.csv = parse_bool(value, key);
        else if (key == "pgm") cfg.output.pgm = parse_bool(value, key);
        else fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [output]");
      } else {
        fail(ErrorCode::ConfigError, "key '" + key + "' outside any section");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError)
        fail(ErrorCode::ConfigError,
             "line " + std::to_string(line_no) + ": " + e.what());
      throw;
    }
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream out;
  auto m = [](double v) { return format_double(v) + "m"; };
  out << "[setup]\n";
  out << "lambda_p = " << m(setup.lambda_p) << "\n";
  out << "lambda_s = " << m(setup.lambda_s) << "\n";
  out << "lambda_i = " << m(setup.lambda_i) << "\n";
  out << "l_z = " << m(setup.l_z) << "\n";
  out << "sigma_p = " << m(setup.sigma_p) << "\n";
  out << "d = " << m(setup.d) << "\n";
  out << "z_s = " << m(setup.z_s) << "\n";
  out << "z_i = " << m(setup.z_i) << "\n";
  out << "mode = " << to_string(setup.propagation_mode) << "\n";
  out << "pm = " << to_string(setup.pm_model) << "\n";
  out << "\n[grid]\n";
  out << "n_s = " << grid.n_s << "\n";
  out << "n_i = " << grid.n_i << "\n";
  if (grid.automatic) out << "window_s = auto\n";
  else out << "window_s = " << m(grid.window_s) << "\n";
  out << "window_i = " << m(grid.window_i) << "\n";
  out << "fov_i = " << m(grid.fov_i) << "\n";
  out << "\n[object]\n";
  out << "type = " << to_string(object.kind) << "\n";
  out << "center = " << m(object.center) << "\n";
  out << "width = " << m(object.width) << "\n";
  out << "separation = " << m(object.separation) << "\n";
  if (!object.path.empty()) out << "path = " << object.path << "\n";
  out << "\n[run]\n";
  out << "threads = " << run.threads << "\n";
  if (!run.axis.empty()) out << "axis = " << run.axis << "\n";
  out << "from = " << m(run.from) << "\n";
  out << "to = " << m(run.to) << "\n";
  if (run.points > 0) out << "points = " << run.points << "\n";
  out << "objective = " << run.objective << "\n";
  out << "threshold = " << format_double(run.threshold) << "\n";
  out << "engine_sigma_s = " << (run.engine_sigma_s ? "true" : "false") << "\n";
  if (run.cut) out << "cut_xs = " << m(run.cut_xs) << "\n";
  out << "\n[output]\n";
  out << "dir = " << output.dir << "\n";
  out << "csv = " << (output.csv ? "true" : "false") << "\n";
  out << "pgm = " << (output.pgm ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace ghostpin
