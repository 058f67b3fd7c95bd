#include "cli_config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "crownlab/growth.hpp"

namespace crownlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void bad(const std::string& field, const std::string& text, const std::string& why) {
  throw ConfigError(field + ": " + why + " (got '" + text + "')");
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string s = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    bad(field, text, "expected a finite number");
  return v;
}

long long parse_int(const std::string& field, const std::string& text) {
  const std::string s = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) bad(field, text, "expected an integer");
  return v;
}

std::uint64_t parse_u64(const std::string& field, const std::string& text) {
  const std::string s = trim(text);
  char* end = nullptr;
  errno = 0;
  if (s.empty() || s[0] == '-') bad(field, text, "expected a non-negative integer");
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) bad(field, text, "expected a non-negative integer");
  return v;
}

bool parse_bool(const std::string& field, const std::string& text) {
  const std::string s = trim(text);
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  bad(field, text, "expected true or false");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& field, const std::string& text) {
  if (trim(text).empty()) return {};
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_double(field, item));
  return out;
}

cdouble parse_complex(const std::string& field, const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) bad(field, text, "expected a number");
  if (s.back() != 'i') return parse_double(field, s);
  s.pop_back();
  // Split "a+b" / "a-b" at the last sign that is not an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  const auto imag_part = [&](const std::string& b) {
    if (b.empty() || b == "+") return 1.0;
    if (b == "-") return -1.0;
    return parse_double(field, b);
  };
  if (cut == std::string::npos) return {0.0, imag_part(s)};
  return {parse_double(field, s.substr(0, cut)), imag_part(s.substr(cut))};
}

ComplexMatrix parse_matrix(const std::string& field, const std::string& text) {
  const auto rows = split(text, ';');
  const std::size_t n = rows.size();
  std::vector<cdouble> entries;
  for (const auto& row : rows) {
    const auto items = split(row, ',');
    if (items.size() != n) bad(field, text, "matrix must be square, rows separated by ';'");
    for (const auto& it : items) entries.push_back(parse_complex(field, it));
  }
  return ComplexMatrix(n, std::move(entries));
}

std::vector<double> RunConfig::grid() const { return t_grid_set ? t_grid : dyadic_t_grid(1, 12); }

void RunConfig::validate() const {
  if (n < 2 || n > 8) throw ConfigError("n: must be in [2, 8] (got " + std::to_string(n) + ")");
  if (t_grid_set && t_grid.empty()) throw ConfigError("t-grid: must contain at least one value");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0 || t_grid[i] > 1.0) throw ConfigError("t-grid: values must lie in [0, 1]");
    if (i && t_grid[i] <= t_grid[i - 1]) throw ConfigError("t-grid: values must be strictly increasing");
  }
  if (quad < 8) throw ConfigError("quad: must be at least 8 (got " + std::to_string(quad) + ")");
  if (haar < 0) throw ConfigError("haar: must be non-negative");
  if (torus < 0) throw ConfigError("torus: must be non-negative");
  if (threads < 0) throw ConfigError("threads: must be non-negative");
  if (!x.empty() && x.size() != static_cast<std::size_t>(n) && x.size() != static_cast<std::size_t>(n * n))
    throw ConfigError("x: expected " + std::to_string(n) + " diagonal entries or " + std::to_string(n * n) +
                      " matrix entries (got " + std::to_string(x.size()) + ")");
  if (!(tol.minor_floor > 0.0)) throw ConfigError("minor-floor: must be positive");
  if (!(tol.reconstruction > 0.0)) throw ConfigError("reconstruction: must be positive");
  for (int m : modes)
    if (m % 2) throw ConfigError("modes: only even modes exist (got " + std::to_string(m) + ")");
  if (series && modes.empty()) throw ConfigError("modes: at least one mode is required");
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto small_int = [&](int lo) {
    const long long v = parse_int(key, value);
    if (v < lo || v > std::numeric_limits<int>::max()) bad(key, value, "out of range");
    return static_cast<int>(v);
  };
  if (key == "n") {
    cfg.n = small_int(0);
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "t-grid") {
    cfg.t_grid = parse_double_list(key, value);
    cfg.t_grid_set = true;
  } else if (key == "quad") {
    cfg.quad = small_int(0);
  } else if (key == "haar") {
    cfg.haar = small_int(0);
  } else if (key == "torus") {
    cfg.torus = small_int(0);
  } else if (key == "threads") {
    cfg.threads = small_int(0);
  } else if (key == "search") {
    cfg.search = parse_bool(key, value);
  } else if (key == "format") {
    const std::string f = trim(value);
    if (f == "csv") cfg.format = Format::csv;
    else if (f == "json") cfg.format = Format::json;
    else bad(key, value, "expected csv or json");
  } else if (key == "out") {
    cfg.out = trim(value);
  } else if (key == "x") {
    cfg.x = parse_double_list(key, value);
  } else if (key == "minor-floor") {
    cfg.tol.minor_floor = parse_double(key, value);
  } else if (key == "reconstruction") {
    cfg.tol.reconstruction = parse_double(key, value);
  } else if (key == "series") {
    cfg.series = parse_bool(key, value);
  } else if (key == "s") {
    cfg.s = parse_complex(key, value);
  } else if (key == "rho-shift") {
    cfg.rho_shift = parse_bool(key, value);
  } else if (key == "modes") {
    cfg.modes.clear();
    for (const auto& m : split(value, ',')) cfg.modes.push_back(static_cast<int>(parse_int(key, m)));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

}  // namespace crownlab::cli
