#include "ghostpin/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "ghostpin/errors.hpp"
#include "ghostpin/units.hpp"
#include "ghostpin/version.hpp"

namespace ghostpin {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, mode);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  auto out = open_out(path);
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      out << (c ? "," : "") << header[c];
    out << "\n";
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& col : columns) {
    if (col.size() != rows)
      fail(ErrorCode::InvalidSize, "CSV columns differ in length");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format_double(columns[c][r]);
    out << "\n";
  }
}

void write_matrix_csv(const std::string& path, const std::vector<double>& values,
                      std::size_t n_rows, std::size_t n_cols) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < n_rows; ++i) {
    const double* row = values.data() + i * n_cols;
    for (std::size_t j = 0; j < n_cols; ++j)
      out << (j ? "," : "") << format_double(row[j]);
    out << "\n";
  }
}

void write_pgm(const std::string& path, const std::vector<double>& values,
               std::size_t n_rows, std::size_t n_cols) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, v);
  if (!(peak > 0.0)) peak = 1.0;

  auto out = open_out(path, std::ios::binary);
  out << "P5\n" << n_cols << " " << n_rows << "\n255\n";
  // Six decades of log range with a floor at 1e-6 of the peak.
  std::vector<unsigned char> line(n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    const double* row = values.data() + i * n_cols;
    for (std::size_t j = 0; j < n_cols; ++j) {
      const double rel = std::max(row[j] / peak, 1e-6);
      const double level = 1.0 + std::log10(rel) / 6.0;  // [0, 1]
      line[j] = static_cast<unsigned char>(std::lround(255.0 * std::clamp(level, 0.0, 1.0)));
    }
    out.write(reinterpret_cast<const char*>(line.data()),
              static_cast<std::streamsize>(line.size()));
  }
}

void write_meta(const std::string& data_path, const MetaContext& ctx) {
  nlohmann::json meta;
  meta["tool"] = "ghostpin";
  meta["version"] = kVersion;
  meta["command"] = ctx.command;
  if (ctx.config) meta["config"] = ctx.config->serialize();
  if (ctx.grid) {
    meta["grid"] = {
        {"n_s", ctx.grid->signal.n},       {"n_i", ctx.grid->idler.n},
        {"dx_s", ctx.grid->signal.dx},     {"dx_i", ctx.grid->idler.dx},
        {"window_s", ctx.grid->signal.window()},
        {"window_i", ctx.grid->idler.window()},
    };
  }
  if (!ctx.normalization.empty()) meta["normalization"] = ctx.normalization;
  auto out = open_out(data_path + ".meta.json");
  out << meta.dump(2) << "\n";
}

}  // namespace ghostpin
