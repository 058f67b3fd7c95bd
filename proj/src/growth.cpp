#include "crownlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "crownlab/errors.hpp"

namespace crownlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_alpha_scale(const DiagonalVector& h) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& v : h.entries) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  return hi - lo;
}

// Evaluates fn(i) for i in [0, count) on up to `threads` workers; results
// land in their own slots, so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct LogScales {
  bool ok = false;
  std::array<double, 3> v{kNegInf, kNegInf, kNegInf};
};

LogScales evaluate(const ComplexMatrix& e, const ComplexMatrix& k, const Tolerances& tol) {
  LogScales out;
  try {
    const auto f = decompose_pointwise(e * k, tol);
    const auto s = component_scales(f, tol);
    out.v = {std::log(s.kappa), std::log(s.alpha), std::log(s.eta)};
    out.ok = std::isfinite(out.v[0]) && std::isfinite(out.v[1]) && std::isfinite(out.v[2]);
  } catch (const DomainError&) {
    out.ok = false;
  }
  return out;
}

struct SearchResult {
  ComplexMatrix k;
  double value = kNegInf;
  int evals = 0;
};

// Compass search over the coordinate rotations of so(n), halving the step
// whenever no move improves.
SearchResult pattern_search(const ComplexMatrix& e, ComplexMatrix k, double value, int comp,
                            const SweepConfig& cfg) {
  const int n = static_cast<int>(k.dim());
  SearchResult r{std::move(k), value, 0};
  double step = cfg.search_initial_step;
  while (step > cfg.search_min_step && r.evals < cfg.search_max_evals) {
    bool improved = false;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        for (double sign : {1.0, -1.0}) {
          ComplexMatrix cand = r.k * givens(n, p, q, sign * step);
          const auto ls = evaluate(e, cand, cfg.tol);
          ++r.evals;
          if (ls.ok && ls.v[comp] > r.value) {
            r.value = ls.v[comp];
            r.k = std::move(cand);
            improved = true;
          }
        }
    if (!improved) step *= 0.5;
  }
  return r;
}

std::string pair_relation(const char* lhs, const char* a, const char* b) {
  std::ostringstream os;
  os << lhs << " <= C * " << a << "^M * " << b << "^N";
  return os.str();
}

}  // namespace

const char* component_name(Component c) {
  switch (c) {
    case Component::kappa: return "kappa";
    case Component::alpha: return "alpha";
    case Component::eta: return "eta";
  }
  return "?";
}

Component parse_component(const std::string& name) {
  if (name == "kappa") return Component::kappa;
  if (name == "alpha") return Component::alpha;
  if (name == "eta") return Component::eta;
  throw StructuralError("unknown component '" + name + "' (expected kappa, alpha or eta)");
}

double ComponentScales::get(Component c) const {
  switch (c) {
    case Component::kappa: return kappa;
    case Component::alpha: return alpha;
    case Component::eta: return eta;
  }
  return 0.0;
}

ComponentScales component_scales(const IwasawaFactors& f, const Tolerances& tol) {
  ComponentScales s;
  s.kappa = s_max(f.kappa, tol);
  s.alpha = std::exp(log_alpha_scale(f.H));
  s.eta = s_max(f.eta, tol);
  return s;
}

double GrowthSample::sup(Component c) const {
  switch (c) {
    case Component::kappa: return sup_kappa;
    case Component::alpha: return sup_alpha;
    case Component::eta: return sup_eta;
  }
  return 0.0;
}

void SweepConfig::validate() const {
  if (n_haar < 0) throw StructuralError("sweep: n_haar must be >= 0");
  if (torus_grid < 0) throw StructuralError("sweep: torus_grid must be >= 0");
  if (search_starts < 0) throw StructuralError("sweep: search_starts must be >= 0");
  if (!(search_initial_step > 0.0) || !(search_min_step > 0.0))
    throw StructuralError("sweep: search steps must be positive");
  if (threads < 1) throw StructuralError("sweep: threads must be >= 1");
}

int default_haar_count(int n) { return n <= 3 ? 512 : 128; }

int default_torus_grid(int n) {
  if (n == 2) return 64;
  if (n == 3) return 10;
  return 0;
}

std::vector<ComplexMatrix> torus_rotations(int n, int per_angle) {
  std::vector<ComplexMatrix> out;
  if (per_angle <= 0) return out;
  const double pi = std::numbers::pi;
  if (n == 2) {
    for (int i = 0; i < per_angle; ++i) out.push_back(givens(2, 0, 1, pi * i / per_angle));
  } else if (n == 3) {
    out.reserve(static_cast<std::size_t>(per_angle) * per_angle * per_angle);
    for (int i = 0; i < per_angle; ++i)
      for (int j = 0; j < per_angle; ++j)
        for (int l = 0; l < per_angle; ++l) {
          const double a = 2.0 * pi * i / per_angle;
          const double b = pi * (j + 0.5) / per_angle;
          const double c = 2.0 * pi * l / per_angle;
          out.push_back(givens(3, 0, 1, a) * givens(3, 1, 2, b) * givens(3, 0, 1, c));
        }
  }
  return out;
}

ComplexMatrix indexed_haar(int n, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  return haar_so(n, rng);
}

std::vector<GrowthSample> sweep_components(const PElement& x, std::span<const double> t_grid,
                                           const SweepConfig& cfg) {
  cfg.validate();
  if (t_grid.empty()) throw StructuralError("sweep_components: empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0 && t_grid[i] < 1.0))
      throw StructuralError("sweep_components: t values must lie in [0, 1)");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw StructuralError("sweep_components: t grid must be strictly increasing");
  }
  if (std::abs(rho(x) - std::numbers::pi / 2.0) > 1e-12)
    throw StructuralError("sweep_components: x must lie on the crown boundary (rho = pi/2)");

  const int n = static_cast<int>(x.dim());
  std::vector<ComplexMatrix> candidates;
  candidates.reserve(cfg.n_haar);
  for (int i = 0; i < cfg.n_haar; ++i) candidates.push_back(indexed_haar(n, cfg.seed, i));
  const int grid = cfg.torus_grid > 0 ? cfg.torus_grid : default_torus_grid(n);
  for (auto& r : torus_rotations(n, grid)) candidates.push_back(std::move(r));
  if (candidates.empty()) throw StructuralError("sweep_components: no rotation samples");

  std::vector<GrowthSample> out;
  out.reserve(t_grid.size());
  std::array<std::optional<ComplexMatrix>, 3> warm;
  std::vector<LogScales> vals(candidates.size());

  for (double t : t_grid) {
    const ComplexMatrix e = group_exp(x.eigen(), cdouble(0.0, -t));
    parallel_for(candidates.size(), cfg.threads,
                 [&](std::size_t i) { vals[i] = evaluate(e, candidates[i], cfg.tol); });

    GrowthSample gs;
    gs.t = t;
    gs.samples_used = static_cast<int>(candidates.size());
    for (const auto& v : vals)
      if (!v.ok) ++gs.exits;

    std::array<double, 3> best{kNegInf, kNegInf, kNegInf};
    for (int c = 0; c < 3; ++c) {
      std::vector<std::size_t> order;
      order.reserve(vals.size());
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i].ok) order.push_back(i);
      if (order.empty()) continue;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return vals[a].v[c] > vals[b].v[c]; });
      best[c] = vals[order[0]].v[c];
      gs.argmax_index[c] = static_cast<long>(order[0]);
      gs.argmax_k[c] = candidates[order[0]];
      if (!cfg.pattern_search) continue;

      std::vector<std::pair<ComplexMatrix, double>> starts;
      const std::size_t top = std::min<std::size_t>(cfg.search_starts, order.size());
      for (std::size_t r = 0; r < top; ++r) starts.emplace_back(candidates[order[r]], vals[order[r]].v[c]);
      if (warm[c]) {
        const auto ls = evaluate(e, *warm[c], cfg.tol);
        ++gs.samples_used;
        if (ls.ok) starts.emplace_back(*warm[c], ls.v[c]);
      }
      for (auto& [k0, v0] : starts) {
        auto res = pattern_search(e, k0, v0, c, cfg);
        gs.samples_used += res.evals;
        if (res.value > best[c]) {
          best[c] = res.value;
          gs.argmax_index[c] = -1;
          gs.argmax_k[c] = std::move(res.k);
        }
      }
    }
    for (int c = 0; c < 3; ++c)
      if (std::isfinite(best[c])) warm[c] = gs.argmax_k[c];

    const auto to_sup = [](double lv) {
      return std::isfinite(lv) ? std::exp(lv) : std::numeric_limits<double>::infinity();
    };
    gs.sup_kappa = to_sup(best[0]);
    gs.sup_alpha = to_sup(best[1]);
    gs.sup_eta = to_sup(best[2]);
    out.push_back(std::move(gs));
  }
  return out;
}

double BlowupFit::predict(double t) const { return std::exp(logC_hat - N_hat * std::log1p(-t)); }

BlowupFit fit_power_law(std::span<const double> t, std::span<const double> y,
                        std::pair<double, double> t_window) {
  if (t.size() != y.size()) throw StructuralError("fit_power_law: t and y differ in length");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= t_window.first && t[i] <= t_window.second)) continue;
    if (!(t[i] < 1.0) || !std::isfinite(y[i]) || !(y[i] > 0.0)) continue;
    xs.push_back(-std::log1p(-t[i]));
    ys.push_back(std::log(y[i]));
  }
  if (xs.size() < 4)
    throw FitError("fit needs at least 4 finite positive samples in the window, got " +
                   std::to_string(xs.size()));
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit needs at least two distinct t values");
  BlowupFit f;
  f.N_hat = sxy / sxx;
  f.logC_hat = my - f.N_hat * mx;
  double ssres = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.logC_hat + f.N_hat * xs[i]);
    ssres += r * r;
  }
  f.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ssres / syy) : 1.0;
  f.t_window = t_window;
  f.points = static_cast<int>(xs.size());
  return f;
}

BlowupFit fit_blowup(std::span<const GrowthSample> samples, Component component,
                     std::pair<double, double> t_window) {
  std::vector<double> t, y;
  for (const auto& s : samples) {
    t.push_back(s.t);
    y.push_back(s.sup(component));
  }
  return fit_power_law(t, y, t_window);
}

double majorization_ratio(const BlowupFit& fit, std::span<const double> t, std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= fit.t_window.first && t[i] <= fit.t_window.second) || !std::isfinite(y[i])) continue;
    worst = std::max(worst, y[i] / fit.predict(t[i]));
  }
  return worst;
}

double majorization_ratio(const BlowupFit& fit, std::span<const GrowthSample> samples, Component c) {
  std::vector<double> t, y;
  for (const auto& s : samples) {
    t.push_back(s.t);
    y.push_back(s.sup(c));
  }
  return majorization_ratio(fit, t, y);
}

std::vector<double> dyadic_t_grid(int j_lo, int j_hi) {
  if (j_lo < 1 || j_hi < j_lo) throw StructuralError("dyadic_t_grid: need 1 <= j_lo <= j_hi");
  std::vector<double> t;
  for (int j = j_lo; j <= j_hi; ++j) t.push_back(1.0 - std::ldexp(1.0, -j));
  return t;
}

ScaleData scale_data(const ComplexMatrix& g, const Tolerances& tol) {
  const auto f = decompose_pointwise(g, tol);
  ScaleData d;
  const auto sg = singular_values(g, tol);
  d.log_s_g = std::log(sg.front() / sg.back());
  d.log_norm_g = std::log(sg.front());
  d.log_s_alpha = log_alpha_scale(f.H);
  d.log_s_kappa = std::log(s_max(f.kappa, tol));
  const auto se = singular_values(f.eta, tol);
  d.log_s_eta = std::log(se.front() / se.back());
  d.log_norm_eta = std::log(se.front());
  const auto minors = principal_minors(g.transpose() * g, tol);
  for (std::size_t k = 0; k + 1 < minors.size(); ++k) d.log_abs_delta += std::log(std::abs(minors[k]));
  return d;
}

double relation_log_constant(std::span<const ScaleData> data, Component lhs, int M, int N) {
  double c = kNegInf;
  for (const auto& d : data) {
    const double l = lhs == Component::eta ? d.log_s_eta : d.log_s_kappa;
    c = std::max(c, l - M * d.log_s_g - N * d.log_s_alpha);
  }
  return c;
}

double coreta_log_constant(std::span<const ScaleData> data, int r, int N) {
  double c = kNegInf;
  for (const auto& d : data) c = std::max(c, d.log_norm_eta - r * d.log_norm_g + N * d.log_abs_delta);
  return c;
}

namespace {

template <class LogConst, class Residual>
ScaleCertificate certify(std::string relation, const ScaleRelationConfig& cfg,
                         std::span<const ScaleData> data, LogConst log_const, Residual residual) {
  ScaleCertificate cert;
  cert.relation = std::move(relation);
  const int cap = cfg.max_exponent;
  for (int total = 0; total <= 2 * cap && !cert.certified; ++total)
    for (int M = std::max(0, total - cap); M <= std::min(total, cap); ++M) {
      const int N = total - M;
      const double lc = log_const(M, N);
      if (lc <= cfg.logC_cap) {
        cert.certified = true;
        cert.M = M;
        cert.N = N;
        cert.logC = lc;
        break;
      }
    }
  if (!cert.certified) {
    cert.M = cap;
    cert.N = cap;
    cert.logC = log_const(cap, cap);
  }
  double worst = kNegInf;
  for (const auto& d : data) worst = std::max(worst, residual(d, cert.M, cert.N, cert.logC));
  cert.max_violation = worst;
  return cert;
}

}  // namespace

ScaleRelationReport scale_relation_check(std::span<const ComplexMatrix> corpus,
                                         const ScaleRelationConfig& cfg) {
  if (corpus.empty()) throw StructuralError("scale_relation_check: empty corpus");
  if (cfg.max_exponent < 0) throw StructuralError("scale_relation_check: max_exponent must be >= 0");
  std::vector<ScaleData> data;
  data.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto rep = domain_test(corpus[i], cfg.tol.minor_floor);
    if (!rep.inside)
      throw DomainError("scale_relation_check: corpus element " + std::to_string(i) +
                        " lies outside the Iwasawa domain");
    data.push_back(scale_data(corpus[i], cfg.tol));
  }
  ScaleRelationReport rep;
  rep.corpus_size = corpus.size();
  for (Component lhs : {Component::eta, Component::kappa}) {
    auto cert = certify(
        pair_relation(lhs == Component::eta ? "s(eta)" : "s(kappa)", "s(g)", "s(alpha)"), cfg, data,
        [&](int M, int N) { return relation_log_constant(data, lhs, M, N); },
        [&](const ScaleData& d, int M, int N, double lc) {
          const double l = lhs == Component::eta ? d.log_s_eta : d.log_s_kappa;
          return l - (lc + M * d.log_s_g + N * d.log_s_alpha);
        });
    (lhs == Component::eta ? rep.eta : rep.kappa) = std::move(cert);
  }
  rep.coreta = certify(
      "||eta|| <= C * ||g||^M / |Delta(g^T g)|^N", cfg, data,
      [&](int r, int N) { return coreta_log_constant(data, r, N); },
      [&](const ScaleData& d, int r, int N, double lc) {
        return d.log_norm_eta - (lc + r * d.log_norm_g - N * d.log_abs_delta);
      });
  return rep;
}

std::vector<ComplexMatrix> crown_corpus(int n, std::size_t count, std::uint64_t seed, double u_max,
                                        double h_spread, double near_fraction) {
  if (n < 2) throw StructuralError("crown_corpus: n must be >= 2");
  if (!(near_fraction >= 0.0 && near_fraction <= 1.0))
    throw StructuralError("crown_corpus: near_fraction must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;
  std::vector<ComplexMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const ComplexMatrix k1 = haar_so(n, rng);
    const PElement x = random_boundary_direction(n, rng);
    const double t = 1.0 - std::pow(10.0, -u_max * unif(rng));
    ComplexMatrix h;
    if (unif(rng) < near_fraction) {
      // Complete c = (e_0 + e_{n-1})/sqrt(2) to a rotation.
      ComplexMatrix k0 = haar_so(n, rng);
      std::vector<std::vector<double>> cols(n, std::vector<double>(n, 0.0));
      cols[0][0] = cols[0][n - 1] = std::sqrt(0.5);
      for (int j = 1; j < n; ++j) {
        for (int a = 0; a < n; ++a) cols[j][a] = k0(a, j).real();
        for (int l = 0; l < j; ++l) {
          double d = 0.0;
          for (int a = 0; a < n; ++a) d += cols[l][a] * cols[j][a];
          for (int a = 0; a < n; ++a) cols[j][a] -= d * cols[l][a];
        }
        double nrm = 0.0;
        for (int a = 0; a < n; ++a) nrm += cols[j][a] * cols[j][a];
        for (int a = 0; a < n; ++a) cols[j][a] /= std::sqrt(nrm);
      }
      for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) k0(a, j) = cols[j][a];
      if (k0.det().real() < 0.0)
        for (int a = 0; a < n; ++a) k0(a, n - 1) = -k0(a, n - 1);
      ComplexMatrix jiggle = ComplexMatrix::identity(n);
      const double delta = std::pow(10.0, -u_max * unif(rng));
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) jiggle = jiggle * givens(n, p, q, delta * gauss(rng));
      h = x.eigen().vectors * k0 * jiggle;
    } else {
      ComplexMatrix y(n);
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          const double v = gauss(rng);
          y(a, b) = v;
          y(b, a) = v;
        }
      const double tr = y.trace().real() / n;
      for (int a = 0; a < n; ++a) y(a, a) -= tr;
      const PElement yp(y);
      const double r = rho(yp);
      const double scale = r > 0.0 ? h_spread * unif(rng) / r : 0.0;
      h = haar_so(n, rng) * group_exp(yp.eigen(), scale);
    }
    out.push_back(k1 * group_exp(x.eigen(), cdouble(0.0, -t)) * h);
  }
  return out;
}

}  // namespace crownlab
