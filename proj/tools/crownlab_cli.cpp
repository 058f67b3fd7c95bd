// crownlab: decompose, sweep, check, fit.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 mathematical
// domain failure (domain exit, branch ambiguity, degenerate fit), 3 a check
// suite ran but some gated check failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli_config.hpp"
#include "crownlab/checks.hpp"
#include "crownlab/errors.hpp"
#include "crownlab/growth.hpp"
#include "crownlab/iwasawa.hpp"
#include "crownlab/prinseries.hpp"

using namespace crownlab;
using namespace crownlab::cli;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitCheckFailed = 3;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json cjson(cdouble z) { return json::array({z.real(), z.imag()}); }

json mjson(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(cjson(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ConfigError("out: cannot write '" + cfg.out + "'");
  f << text;
}

// Flag values as given on the command line, keyed like config-file entries.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    options[key] = app->add_option("--" + key, values[key], help);
  }
  void add_flag(CLI::App* app, const std::string& key, const std::string& help) {
    options[key] = app->add_flag("--" + key, help);
  }

  RunConfig resolve() {
    RunConfig cfg;
    if (!config_path.empty())
      for (const auto& [k, v] : read_config_file(config_path)) apply_setting(cfg, k, v);
    for (const auto& [k, opt] : options) {
      if (!opt->count()) continue;
      const auto it = values.find(k);
      apply_setting(cfg, k, it == values.end() ? "true" : it->second);
    }
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* app, FlagSet& f) {
  f.add(app, "n", "Matrix size, SL(n)");
  f.add(app, "seed", "64-bit seed for Haar samples and random directions");
  f.add(app, "format", "csv or json");
  f.add(app, "out", "Write to this file instead of stdout");
  f.add(app, "minor-floor", "Relative floor on |Delta_k(g^T g)|");
  app->add_option("--config", f.config_path, "Flat key = value file; flags override it");
}

PElement direction_from(const RunConfig& cfg, bool to_boundary) {
  if (cfg.x.empty()) {
    std::mt19937_64 rng(cfg.seed);
    return random_boundary_direction(cfg.n, rng);
  }
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  ComplexMatrix m(n);
  if (cfg.x.size() == n) {
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cfg.x[i];
  } else {
    for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = cfg.x[i];
  }
  PElement x(m, cfg.tol);
  return to_boundary ? boundary_direction(x) : x;
}

std::string factors_text(const IwasawaFactors& f, double residual, const RunConfig& cfg) {
  if (cfg.format == Format::json) {
    json j;
    j["kappa"] = mjson(f.kappa);
    json h = json::array();
    for (cdouble v : f.H.entries) h.push_back(cjson(v));
    j["H"] = h;
    j["alpha"] = mjson(f.alpha());
    j["eta"] = mjson(f.eta);
    j["t"] = cjson(f.t);
    j["steps_used"] = f.steps_used;
    j["min_minor_magnitude"] = f.min_minor_magnitude;
    j["residual"] = residual;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "factor,i,j,re,im\n";
  const auto emit = [&](const char* name, const ComplexMatrix& m) {
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j)
        os << name << ',' << i << ',' << j << ',' << num(m(i, j).real()) << ',' << num(m(i, j).imag()) << '\n';
  };
  emit("kappa", f.kappa);
  for (std::size_t i = 0; i < f.H.dim(); ++i)
    os << "H," << i << ',' << i << ',' << num(f.H.entries[i].real()) << ',' << num(f.H.entries[i].imag()) << '\n';
  emit("eta", f.eta);
  os << "residual,,," << num(residual) << ",0\n";
  return os.str();
}

int cmd_decompose(FlagSet& f, const std::string& matrix, bool path, double theta, bool k_haar, double t) {
  RunConfig cfg = f.resolve();
  if (!path) {
    if (matrix.empty()) throw ConfigError("matrix: required unless --path is given");
    const ComplexMatrix g = parse_matrix("matrix", matrix);
    IwasawaFactors fac;
    if (g.is_real(0.0)) {
      fac = decompose_real(g, cfg.tol);
    } else {
      fac = decompose_pointwise(g, cfg.tol);
    }
    const double res = (fac.reconstruct() - g).frobenius_norm() / g.frobenius_norm();
    write_output(cfg, factors_text(fac, res, cfg));
    return kExitOk;
  }
  if (t < 0.0 || t > 1.0) throw ConfigError("t: must lie in [0, 1]");
  const PElement x = direction_from(cfg, false);
  ComplexMatrix k = ComplexMatrix::identity(cfg.n);
  if (k_haar) {
    k = haar_so(cfg.n, cfg.seed);
  } else if (cfg.n == 2) {
    k = givens(2, 0, 1, theta);
  } else if (theta != 0.0) {
    throw ConfigError("theta: only meaningful for n = 2; use --k-haar for n > 2");
  }
  PathConfig pc;
  pc.minor_floor = cfg.tol.minor_floor;
  const auto fac = decompose_path(x, k, t, pc);
  const ComplexMatrix g = group_exp(x.matrix(), cdouble(0.0, -t)) * k;
  const double res = (fac.reconstruct() - g).frobenius_norm() / g.frobenius_norm();
  write_output(cfg, factors_text(fac, res, cfg));
  return kExitOk;
}

std::string sweep_table(const std::vector<GrowthSample>& rows, Format fmt) {
  if (fmt == Format::json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"t", r.t},
                     {"sup_kappa", r.sup_kappa},
                     {"sup_alpha", r.sup_alpha},
                     {"sup_eta", r.sup_eta},
                     {"samples_used", r.samples_used},
                     {"exits", r.exits}});
    return json{{"rows", arr}}.dump(2) + "\n";
  }
  std::string s = "t,sup_kappa,sup_alpha,sup_eta,samples_used,exits\n";
  for (const auto& r : rows)
    s += num(r.t) + ',' + num(r.sup_kappa) + ',' + num(r.sup_alpha) + ',' + num(r.sup_eta) + ',' +
         std::to_string(r.samples_used) + ',' + std::to_string(r.exits) + '\n';
  return s;
}

std::string series_table(const RunConfig& cfg) {
  std::map<int, cdouble> m;
  for (int mode : cfg.modes) m[mode] = 1.0;
  const ModeVector v(m);
  const ModeVector w = smooth_test_vector();
  const SeriesParams p{cfg.s, cfg.rho_shift};
  const auto grid = cfg.grid();
  const double xs = std::numbers::pi / 2;
  json arr = json::array();
  std::string s = "t,norm,pairing_re,pairing_im\n";
  for (double t : grid) {
    const int q = std::max(cfg.quad, required_quad_points(xs, t, std::max(v.bandwidth(), w.bandwidth())));
    const double norm = std::sqrt(extended_norm_sq(v, p, xs, t, q));
    const cdouble pair = boundary_pairing_value(v, w, p, t, q);
    arr.push_back({{"t", t}, {"norm", norm}, {"pairing", cjson(pair)}});
    s += num(t) + ',' + num(norm) + ',' + num(pair.real()) + ',' + num(pair.imag()) + '\n';
  }
  return cfg.format == Format::json ? json{{"rows", arr}}.dump(2) + "\n" : s;
}

int cmd_sweep(FlagSet& f) {
  RunConfig cfg = f.resolve();
  if (cfg.series) {
    write_output(cfg, series_table(cfg));
    return kExitOk;
  }
  const PElement x = direction_from(cfg, true);
  SweepConfig sc;
  sc.n_haar = cfg.haar ? cfg.haar : default_haar_count(cfg.n);
  sc.torus_grid = cfg.torus;
  sc.seed = cfg.seed;
  sc.pattern_search = cfg.search;
  sc.threads = cfg.threads ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  sc.tol = cfg.tol;
  const auto grid = cfg.grid();
  const auto rows = sweep_components(x, grid, sc);
  write_output(cfg, sweep_table(rows, cfg.format));
  return kExitOk;
}

int cmd_check(FlagSet& f, const std::string& suite) {
  RunConfig cfg = f.resolve();
  checks::SuiteOptions opt;
  opt.seed = f.options["seed"]->count() ? cfg.seed : opt.seed;
  opt.quad_points = cfg.quad;
  const auto names = checks::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigError("unknown suite '" + suite + "' (expected identities, bounds or prinseries)");
  const auto rep = checks::run_suite(suite, opt);
  json arr = json::array();
  for (const auto& c : rep.checks)
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"measured", c.measured},
                   {"threshold", c.threshold},
                   {"samples", c.samples},
                   {"diagnostic", c.diagnostic},
                   {"detail", c.detail},
                   {"seconds", c.seconds}});
  const json out{{"suite", rep.suite},
                 {"ok", rep.ok()},
                 {"passed", rep.passed()},
                 {"failed", rep.failed()},
                 {"checks", arr}};
  write_output(cfg, out.dump(2) + "\n");
  return rep.ok() ? kExitOk : kExitCheckFailed;
}

// Reads t and sup_<component> columns from a sweep table (CSV or JSON).
void read_table(std::istream& in, const std::string& column, std::vector<double>& t, std::vector<double>& y) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return;
  if (text[first] == '{' || text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("in: invalid JSON: ") + e.what());
    }
    const json& rows = j.is_object() ? j.at("rows") : j;
    for (const auto& r : rows) {
      if (!r.contains("t") || !r.contains(column)) throw ConfigError("in: row without t or " + column);
      t.push_back(r["t"].get<double>());
      y.push_back(r[column].get<double>());
    }
    return;
  }
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string h;
    while (std::getline(hs, h, ',')) {
      while (!h.empty() && (h.back() == '\r' || h.back() == ' ')) h.pop_back();
      header.push_back(h);
    }
  }
  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("in: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ct = col("t"), cy = col(column);
  int lineno = 1;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    if (cells.size() <= std::max(ct, cy)) throw ConfigError("in: short row at line " + std::to_string(lineno));
    t.push_back(parse_double_list("in", cells[ct]).at(0));
    y.push_back(parse_double_list("in", cells[cy]).at(0));
  }
}

int cmd_fit(FlagSet& f, const std::string& input, const std::string& component, const std::string& window) {
  RunConfig cfg = f.resolve();
  const Component comp = [&] {
    try {
      return parse_component(component);
    } catch (const Error&) {
      throw ConfigError("component: expected kappa, alpha or eta (got '" + component + "')");
    }
  }();
  const auto w = parse_double_list("window", window);
  if (w.size() != 2 || !(w[0] < w[1])) throw ConfigError("window: expected lo,hi with lo < hi");
  std::vector<double> t, y;
  const std::string column = std::string("sup_") + component_name(comp);
  if (input.empty() || input == "-") {
    read_table(std::cin, column, t, y);
  } else {
    std::ifstream in(input);
    if (!in) throw ConfigError("in: cannot open '" + input + "'");
    read_table(in, column, t, y);
  }
  const auto fit = fit_power_law(t, y, {w[0], w[1]});
  const json out{{"component", component_name(comp)},
                 {"N_hat", fit.N_hat},
                 {"logC_hat", fit.logC_hat},
                 {"C_hat", std::exp(fit.logC_hat)},
                 {"r_squared", fit.r_squared},
                 {"t_window", {fit.t_window.first, fit.t_window.second}},
                 {"points", fit.points},
                 {"majorization", majorization_ratio(fit, t, y)}};
  write_output(cfg, out.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iwasawa decompositions on crown paths, growth sweeps and invariant checks"};
  app.require_subcommand(1);

  FlagSet fd, fs, fc, ff;

  auto* dec = app.add_subcommand("decompose", "Iwasawa factors of a matrix or of exp(-i t x) k");
  add_common(dec, fd);
  std::string matrix;
  bool path = false, k_haar = false;
  double theta = 0.0, t_target = 1.0;
  dec->add_option("--matrix", matrix, "Rows separated by ';', entries by ',', complex as a+bi");
  dec->add_flag("--path", path, "Continue along exp(-i t x) k instead");
  fd.add(dec, "x", "Direction: n diagonal entries or n*n row-major entries (used as given)");
  dec->add_option("--theta", theta, "k = rotation by theta (n = 2)");
  dec->add_flag("--k-haar", k_haar, "k = Haar sample selected by --seed");
  dec->add_option("--t", t_target, "Path endpoint in [0, 1]");

  auto* sw = app.add_subcommand("sweep", "Sup over K of the component scales along a t-grid");
  add_common(sw, fs);
  fs.add(sw, "x", "Direction (rescaled to the crown boundary); random from --seed if omitted");
  fs.add(sw, "t-grid", "Comma-separated increasing t values; default 1 - 2^-j, j = 1..12");
  fs.add(sw, "haar", "Haar samples per t (default 512 for n <= 3, 128 above)");
  fs.add(sw, "torus", "Torus grid points per angle (default 64 for n = 2, 10 for n = 3)");
  fs.add(sw, "threads", "Worker threads (default: hardware concurrency); output does not depend on it");
  fs.add(sw, "search", "Pattern search around the best samples (true/false)");
  fs.add(sw, "quad", "Minimum quadrature points for --series");
  fs.add_flag(sw, "series", "Emit t,norm,pairing of the SL(2) principal series instead");
  fs.add(sw, "s", "Principal series parameter, complex as a+bi");
  fs.add_flag(sw, "rho-shift", "Apply the rho-shift normalization");
  fs.add(sw, "modes", "Even Fourier modes of v, each with coefficient 1");

  auto* ch = app.add_subcommand("check", "Run an invariant suite and print a JSON verdict");
  add_common(ch, fc);
  fc.add(ch, "quad", "Minimum quadrature points for the principal-series suite");
  std::string suite;
  ch->add_option("suite", suite, "identities, bounds or prinseries")->required();

  auto* fi = app.add_subcommand("fit", "Power-law fit of a sweep table column");
  add_common(fi, ff);
  std::string input, component = "alpha", window = "0.9,0.999";
  fi->add_option("--in", input, "Sweep table (CSV or JSON); stdin when omitted or '-'");
  fi->add_option("--component", component, "kappa, alpha or eta");
  fi->add_option("--window", window, "t window lo,hi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*dec) return cmd_decompose(fd, matrix, path, theta, k_haar, t_target);
    if (*sw) return cmd_sweep(fs);
    if (*ch) return cmd_check(fc, suite);
    if (*fi) return cmd_fit(ff, input, component, window);
  } catch (const DomainExit& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitDomain;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kExitDomain;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const StructuralError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
