#pragma once

// Run configuration shared by the subcommands. Flags and config-file lines
// go through the same apply_setting, so a file key and the flag of the same
// name accept the same values; flags are applied last.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crownlab/config.hpp"
#include "crownlab/numkernel.hpp"

namespace crownlab::cli {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Format { csv, json };

struct RunConfig {
  int n = 2;
  std::uint64_t seed = 0;
  std::vector<double> t_grid;  // empty until set; defaults to 1 - 2^{-j}, j = 1..12
  bool t_grid_set = false;
  int quad = 64;
  int haar = 0;   // 0: default for n
  int torus = 0;  // 0: default for n
  int threads = 0;  // 0: hardware concurrency
  bool search = true;
  Format format = Format::csv;
  std::string out;
  std::vector<double> x;  // direction: n diagonal entries or n*n row-major
  Tolerances tol;

  // Principal-series tables.
  bool series = false;
  cdouble s = 2.0;
  bool rho_shift = false;
  std::vector<int> modes{0};

  std::vector<double> grid() const;
  void validate() const;
};

// Known keys: n, seed, t-grid, quad, haar, torus, threads, search, format,
// out, x, minor-floor, reconstruction, series, s, rho-shift, modes.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat "key = value" lines; '#' starts a comment. Keys keep file order.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

std::vector<double> parse_double_list(const std::string& field, const std::string& text);
cdouble parse_complex(const std::string& field, const std::string& text);
// Rows separated by ';', entries by ','; entries like 1.5, -2i, 0.3+1e-2i.
ComplexMatrix parse_matrix(const std::string& field, const std::string& text);

}  // namespace crownlab::cli
