#pragma once

#include <string>
#include <vector>

#include "ghostpin/config.hpp"
#include "ghostpin/engine.hpp"
#include "ghostpin/profile.hpp"

namespace ghostpin {

/// Column-oriented CSV with shortest round-trip decimals. All columns must
/// share one length; the header row is optional (empty = none).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// Matrix CSV: one row of the field per line, row index = signal sample.
void write_matrix_csv(const std::string& path, const std::vector<double>& values,
                      std::size_t n_rows, std::size_t n_cols);

/// 8-bit binary PGM preview, log-scaled with a floor at 1e-6 of the peak.
void write_pgm(const std::string& path, const std::vector<double>& values,
               std::size_t n_rows, std::size_t n_cols);

/// Sidecar "<data_path>.meta.json" carrying everything needed to re-run:
/// tool version, command, full config text, grid geometry, normalization.
struct MetaContext {
  std::string command;
  const RunConfig* config = nullptr;
  const SpectralGrid* grid = nullptr;  // optional
  std::string normalization;           // optional free-form note
};
void write_meta(const std::string& data_path, const MetaContext& ctx);

}  // namespace ghostpin
