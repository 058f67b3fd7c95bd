#include "crownlab/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "crownlab/errors.hpp"
#include "crownlab/growth.hpp"
#include "crownlab/iwasawa.hpp"
#include "crownlab/liegroup.hpp"
#include "crownlab/prinseries.hpp"
#include "crownlab/weights.hpp"

namespace crownlab::checks {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult make(std::string name, double measured, double threshold, long samples, bool passed,
                 std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.measured = measured;
  r.threshold = threshold;
  r.samples = samples;
  r.passed = passed;
  r.detail = std::move(detail);
  return r;
}

// Worst value must stay at or below threshold.
CheckResult upper(std::string name, double worst, double threshold, long samples, std::string detail = {}) {
  return make(std::move(name), worst, threshold, samples, worst <= threshold, std::move(detail));
}

template <class... Args>
std::string fmt(Args&&... args) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << args);
  return os.str();
}

ComplexMatrix random_real(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  return a;
}

ComplexMatrix random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cdouble(g(rng), g(rng));
  return a;
}

ComplexMatrix random_sl_real(int n, std::mt19937_64& rng) {
  ComplexMatrix a = random_real(n, rng);
  double d = a.det().real();
  if (d < 0.0) {
    for (int j = 0; j < n; ++j) a(0, j) = -a(0, j);
    d = -d;
  }
  a *= std::pow(d, -1.0 / n);
  return a;
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  const ComplexMatrix q = haar_so(n, rng);
  std::vector<cdouble> ph(n);
  for (auto& p : ph) p = std::polar(1.0, u(rng));
  return haar_so(n, rng) * q * ComplexMatrix::diagonal(std::span<const cdouble>(ph)) * q.transpose() *
         haar_so(n, rng);
}

double rel_fro(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm() / std::max(b.frobenius_norm(), 1e-300);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

std::vector<double> diag_of(const PElement& x) { return x.eigenvalues(); }

}  // namespace

int SuiteReport::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckResult& c) { return !c.diagnostic && c.passed; }));
}

int SuiteReport::failed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const CheckResult& c) { return !c.diagnostic && !c.passed; }));
}

// ---------------------------------------------------------------- numkernel

CheckResult ldl_reconstruction(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 7;
    const ComplexMatrix b = random_complex(n, rng);
    const ComplexMatrix sm = b + b.transpose();
    const auto f = sym_ldl(sm);
    const ComplexMatrix rec =
        f.upper.transpose() * ComplexMatrix::diagonal(std::span<const cdouble>(f.d.entries)) * f.upper;
    worst = std::max(worst, rel_fro(rec, sm));
  }
  return upper("numkernel.ldl_reconstruction", worst, 1e-11, samples);
}

CheckResult ldl_minor_ratios(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 7;
    const ComplexMatrix b = random_complex(n, rng);
    const ComplexMatrix sm = b + b.transpose();
    const auto f = sym_ldl(sm);
    const auto minors = principal_minors(sm);
    cdouble prev = 1.0;
    for (int k = 0; k < n; ++k) {
      const cdouble ratio = minors[k] / prev;
      worst = std::max(worst, std::abs(f.d.entries[k] - ratio) / std::abs(ratio));
      prev = minors[k];
    }
  }
  return upper("numkernel.ldl_minor_ratios", worst, 1e-11, samples);
}

CheckResult eig_trace(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 1 + s % 8;
    const ComplexMatrix b = random_complex(n, rng);
    const ComplexMatrix h = b + b.adjoint();
    const auto ev = sym_eig(h);
    double sum = 0.0, mag = 0.0;
    for (double v : ev) {
      sum += v;
      mag += std::abs(v);
    }
    worst = std::max(worst, std::abs(sum - h.trace().real()) / std::max(mag, 1e-300));
  }
  return upper("numkernel.eig_trace", worst, 1e-12, samples);
}

CheckResult exp_additivity(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 5;
    const PElement x = random_boundary_direction(n, rng);
    const cdouble z1(g(rng), g(rng)), z2(g(rng), g(rng));
    const ComplexMatrix lhs = group_exp(x.eigen(), z1) * group_exp(x.eigen(), z2);
    const ComplexMatrix rhs = group_exp(x.eigen(), z1 + z2);
    worst = std::max(worst, rel_fro(lhs, rhs));
  }
  return upper("numkernel.exp_additivity", worst, 1e-11, samples);
}

CheckResult unitary_singular_values(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto sv = singular_values(random_unitary(2 + s % 7, rng));
    for (double v : sv) worst = std::max(worst, std::abs(v - 1.0));
  }
  return upper("numkernel.unitary_singular_values", worst, 1e-12, samples);
}

// ---------------------------------------------------------------- liegroup

CheckResult rho_ad_invariance(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 5;
    const PElement x = random_boundary_direction(n, rng);
    const ComplexMatrix k = haar_so(n, rng);
    ComplexMatrix y = k * x.matrix() * k.transpose();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) y(i, j) = y(j, i);  // symmetrize roundoff
    worst = std::max(worst, std::abs(rho(PElement(y)) - rho(x)));
  }
  return upper("liegroup.rho_ad_invariance", worst, 1e-11, samples);
}

CheckResult boundary_direction_rho(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s)
    worst = std::max(worst, std::abs(rho(random_boundary_direction(2 + s % 5, rng)) - kPi / 2.0));
  return upper("liegroup.boundary_direction_rho", worst, 1e-13, samples);
}

CheckResult haar_second_moment(std::uint64_t seed, int n, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<double> mean(n * n, 0.0);
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix q = haar_so(n, rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mean[i * n + j] += std::norm(q(i, j));
  }
  // Entries of a uniform unit vector in R^n: E x^2 = 1/n, E x^4 = 3/(n(n+2)).
  const double var = 3.0 / (n * (n + 2.0)) - 1.0 / (n * double(n));
  const double sigma = std::sqrt(var / samples);
  double worst = 0.0;
  for (double m : mean) worst = std::max(worst, std::abs(m / samples - 1.0 / n) / sigma);
  return upper("liegroup.haar_second_moment", worst, 3.0, samples, fmt("worst deviation in sigma units, n=", n));
}

std::vector<CheckResult> smax_axioms(std::uint64_t seed, int triples) {
  std::mt19937_64 rng(seed);
  double sub = 0.0, inv = 0.0, biinv = 0.0;
  for (int s = 0; s < triples; ++s) {
    const int n = 2 + s % 3;
    const ComplexMatrix g = random_complex(n, rng);
    const ComplexMatrix h = random_complex(n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    const double sg = s_max(g), sh = s_max(h);
    sub = std::max(sub, s_max(g * h) / (sg * sh) - 1.0);
    inv = std::max(inv, std::abs(s_max(g.inverse()) - sg) / sg);
    biinv = std::max(biinv, std::abs(s_max(u * g * v) - sg) / sg);
  }
  return {upper("liegroup.smax_submultiplicative", sub, 1e-10, triples, "max of s(gh)/(s(g)s(h)) - 1"),
          upper("liegroup.smax_inversion", inv, 1e-10, triples),
          upper("liegroup.smax_unitary_biinvariance", biinv, 1e-10, triples)};
}

// ---------------------------------------------------------------- iwasawa

CheckResult real_reconstruction(std::uint64_t seed, int n_lo, int n_hi, int per_n) {
  std::mt19937_64 rng(seed);
  const auto t0 = Clock::now();
  double worst = 0.0;
  long count = 0;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int s = 0; s < per_n; ++s) {
      const ComplexMatrix g = random_sl_real(n, rng);
      const auto f = decompose_real(g);
      worst = std::max(worst, rel_fro(f.reconstruct(), g));
      ++count;
    }
  auto r = upper("iwasawa.real_reconstruction", worst, 1e-10, count);
  r.seconds = seconds_since(t0);
  r.detail = fmt("n in [", n_lo, ",", n_hi, "], ", per_n, " per n, ", r.seconds, " s");
  return r;
}

CheckResult sl2_dual_oracle(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(0.0, kPi), tt(0.0, 0.999);
  const PElement x = PElement::diagonal(std::vector<double>{kPi / 4.0, -kPi / 4.0});
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double theta = th(rng), t = tt(rng);
    const auto f = decompose_path(x, givens(2, 0, 1, theta), t);
    const auto c = sl2_iwasawa_closed(kPi / 2.0, theta, t);
    const cdouble h1 = 0.5 * std::log(c.q);
    double d = max_abs_diff(f.kappa, c.kappa());
    d = std::max(d, std::abs(f.H.entries[0] - h1));
    d = std::max(d, std::abs(f.H.entries[1] + h1));
    d = std::max(d, std::abs(f.eta(0, 1) - c.nu));
    worst = std::max(worst, d);
  }
  return upper("iwasawa.sl2_dual_oracle", worst, 1e-8, samples, "max entrywise gap over kappa, H, eta");
}

CheckResult path_reconstruction(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tt(0.0, 0.999);
  double worst = 0.0;
  long exits = 0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 3;
    const PElement x = random_boundary_direction(n, rng);
    const ComplexMatrix k = haar_so(n, rng);
    const double t = tt(rng);
    try {
      const auto f = decompose_path(x, k, t);
      const ComplexMatrix g = group_exp(x.eigen(), cdouble(0.0, -t)) * k;
      worst = std::max(worst, rel_fro(f.reconstruct(), g));
      worst = std::max(worst, (f.kappa.transpose() * f.kappa - ComplexMatrix::identity(n)).frobenius_norm());
    } catch (const DomainError&) {
      ++exits;
    }
  }
  return upper("iwasawa.path_reconstruction", worst, 1e-9, samples,
               fmt("reconstruction and kappa^T kappa = 1; domain exits ", exits));
}

CheckResult refinement_consistency(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tt(0.0, 0.99);
  double worst = 0.0;
  PathConfig coarse, fine;
  fine.initial_steps = 2 * coarse.initial_steps;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 3;
    const PElement x = random_boundary_direction(n, rng);
    const ComplexMatrix k = haar_so(n, rng);
    const double t = tt(rng);
    const auto a = decompose_path(x, k, t, coarse);
    const auto b = decompose_path(x, k, t, fine);
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(a.H.entries[j] - b.H.entries[j]));
  }
  return upper("iwasawa.refinement_consistency", worst, 1e-10, samples);
}

CheckResult holomorphy_probe(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tt(0.1, 0.9);
  const double h = 1e-4;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 3;
    const PElement x = random_boundary_direction(n, rng);
    const ComplexMatrix k = haar_so(n, rng);
    const double t = tt(rng);
    const auto at = [&](cdouble z) { return decompose_path_complex(x, k, z).H.entries; };
    const auto re_p = at(t + h), re_m = at(t - h);
    const auto im_p = at(cdouble(t, h)), im_m = at(cdouble(t, -h));
    for (int j = 0; j < n; ++j) {
      const cdouble d_re = (re_p[j] - re_m[j]) / (2.0 * h);
      const cdouble d_im = (im_p[j] - im_m[j]) / (2.0 * h);
      // Cauchy-Riemann: d/dy = i d/dx.
      const double scale = std::max(std::abs(d_re), 1e-3);
      worst = std::max(worst, std::abs(d_im - cdouble(0.0, 1.0) * d_re) / scale);
    }
  }
  return upper("iwasawa.holomorphy_probe", worst, 1e-5, samples, "relative Cauchy-Riemann defect, step 1e-4");
}

CheckResult h_range_containment(std::uint64_t seed, int samples_per_n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tt(0.0, 0.999);
  double worst = -1.0;
  long ok = 0, exits = 0;
  for (int n : {2, 3})
    for (int s = 0; s < samples_per_n; ++s) {
      const PElement x = random_boundary_direction(n, rng);
      const ComplexMatrix k = haar_so(n, rng);
      const double t = tt(rng);
      try {
        const auto f = decompose_path(x, k, t);
        worst = std::max(worst, check_H_range(f, x, t).violation);
        ++ok;
      } catch (const DomainError&) {
        ++exits;
      }
    }
  return upper("iwasawa.h_range_containment", worst, 1e-8, ok,
               fmt("signed facet distance of Im H; successful paths ", ok, ", exits ", exits));
}

// ---------------------------------------------------------------- weights

CheckResult minor_weight_identity(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tt(0.0, 1.0);
  double worst = 0.0;
  long count = 0;
  for (int n : {2, 3, 4})
    for (int s = 0; s < samples; ++s) {
      const PElement x = random_boundary_direction(n, rng);
      const ComplexMatrix k = haar_so(n, rng);
      const double t = tt(rng);
      const ComplexMatrix g = group_exp(x.eigen(), cdouble(0.0, -t)) * k;
      const auto minors = principal_minors(g.transpose() * g);
      const ComplexMatrix rotated = x.eigen().vectors.transpose() * k;
      const auto lam = diag_of(x);
      for (int r = 1; r < n; ++r) {
        const auto prof = fundamental_profile(rotated, r);
        const cdouble ap = alpha_pow(prof, lam, cdouble(0.0, t));
        worst = std::max(worst, std::abs(ap - minors[r - 1]) / std::abs(minors[r - 1]));
        ++count;
      }
    }
  return upper("weights.minor_weight_identity", worst, 1e-9, count, "relative gap to Delta_k(g^T g)");
}

std::vector<CheckResult> cosine_formula(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tt(0.0, 1.0);
  double worst = 0.0, worst_mod = 0.0, min_f = 1.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 3;
    const int r = 1 + static_cast<int>(rng() % (n - 1));
    const auto prof = fundamental_profile(haar_so(n, rng), r);
    const auto h = diag_of(random_boundary_direction(n, rng));
    const double t = tt(rng);
    const double f = cos_formula(prof, h, t);
    const cdouble ap = alpha_pow(prof, h, cdouble(0.0, t));
    worst = std::max(worst, std::abs(f - std::norm(ap)));
    worst_mod = std::max(worst_mod, std::sqrt(std::abs(ap)));
    min_f = std::min(min_f, f);
  }
  auto pos = make("weights.cos_formula_positive", min_f, 0.0, samples, min_f > 0.0, "minimum on t < 1");
  pos.diagnostic = true;
  return {upper("weights.cos_formula_identity", worst, 1e-10, samples, "|f - |alpha_pow|^2|"),
          upper("weights.alpha_lambda_bound", worst_mod, 1.0 + 1e-9, samples, "max |alpha_pow|^{1/2}"),
          pos};
}

CheckResult taylor_bound(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  long violations = 0, count = 0;
  double worst_ratio = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 3;
    const int r = 1 + static_cast<int>(rng() % (n - 1));
    const auto prof = fundamental_profile(haar_so(n, rng), r);
    const auto h = diag_of(random_boundary_direction(n, rng));
    const auto a = taylor_coeffs(prof, h, 20);
    const double c2 = 2.0 * max_weight_gap(prof, h);
    double bound = 1.0;
    for (int m = 0; m <= 20; ++m) {
      if (m > 0) bound *= c2 / m;
      const double lim = bound * (1.0 + 1e-12);
      if (std::abs(a[m]) > lim) ++violations;
      if (bound > 0.0) worst_ratio = std::max(worst_ratio, std::abs(a[m]) / bound);
      ++count;
    }
  }
  return make("weights.taylor_bound", static_cast<double>(violations), 0.0, count, violations == 0,
              fmt("violations of |a_m| <= (2C)^m/m!, m <= 20; max ratio ", worst_ratio));
}

CheckResult taylor_partial_sums(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  long count = 0;
  for (int s = 0; s < samples; ++s) {
    const int n = 2 + s % 3;
    const int r = 1 + static_cast<int>(rng() % (n - 1));
    const auto prof = fundamental_profile(haar_so(n, rng), r);
    const auto h = diag_of(random_boundary_direction(n, rng));
    const auto a = taylor_coeffs(prof, h, 30);
    for (int i = 0; i < 50; ++i) {
      const double t = 0.5 + 0.01 * i;
      const double u = 1.0 - t;
      double sum = 0.0, p = 1.0;
      for (double am : a) {
        sum += am * p;
        p *= u;
      }
      worst = std::max(worst, std::abs(sum - cos_formula(prof, h, t)));
      ++count;
    }
  }
  return upper("weights.taylor_partial_sums", worst, 1e-6, count, "M = 30, t in [0.5, 1)");
}

// ---------------------------------------------------------------- growth

std::vector<CheckResult> sl2_alpha_blowup(std::uint64_t seed) {
  const PElement x = PElement::diagonal(std::vector<double>{kPi / 4.0, -kPi / 4.0});
  const auto grid = dyadic_t_grid(1, 12);
  SweepConfig cfg;
  cfg.seed = seed;
  const auto t0 = Clock::now();
  const auto samples = sweep_components(x, grid, cfg);
  const auto fit = fit_blowup(samples, Component::alpha, {0.9, 0.999});
  const double c = std::exp(fit.logC_hat);
  double closed = 0.0;
  for (const auto& s : samples)
    closed = std::max(closed, std::abs(s.sup_alpha * std::abs(std::cos(s.t * kPi / 2.0)) - 1.0));
  auto n_check = upper("growth.sl2_alpha_exponent", std::abs(fit.N_hat - 1.0), 0.05, fit.points,
                       fmt("N_hat = ", fit.N_hat, ", r^2 = ", fit.r_squared));
  n_check.seconds = seconds_since(t0);
  return {n_check,
          upper("growth.sl2_alpha_prefactor", std::abs(c / (2.0 / kPi) - 1.0), 0.10, fit.points,
                fmt("C_hat = ", c, " vs 2/pi = ", 2.0 / kPi)),
          upper("growth.sl2_alpha_closed_form", closed, 0.01, static_cast<long>(samples.size()),
                "relative gap of sup_alpha to 1/|cos(t pi/2)|")};
}

std::vector<CheckResult> growth_property(std::uint64_t seed, int directions) {
  std::vector<CheckResult> out;
  const auto grid = dyadic_t_grid(1, 12);
  const std::pair<double, double> window{0.9, 0.999};
  const auto t0 = Clock::now();
  for (int n : {2, 3}) {
    std::mt19937_64 rng(seed + n);
    double min_r2 = 1.0, worst_maj = 0.0, worst_consistency = -1e300;
    bool finite = true;
    long fits = 0;
    std::ostringstream exps;
    exps.precision(4);
    // Certificates for the exponent consistency check.
    const auto corpus = crown_corpus(n, 300, seed + 100 + n);
    const auto rep = scale_relation_check(corpus);
    for (int d = 0; d < directions; ++d) {
      const PElement x = random_boundary_direction(n, rng);
      SweepConfig cfg;
      cfg.seed = seed + 1000 * n + d;
      const auto samples = sweep_components(x, grid, cfg);
      std::array<double, 3> nh{};
      for (Component c : {Component::kappa, Component::alpha, Component::eta}) {
        const auto fit = fit_blowup(samples, c, window);
        nh[static_cast<int>(c)] = fit.N_hat;
        finite = finite && std::isfinite(fit.N_hat) && std::isfinite(fit.logC_hat);
        min_r2 = std::min(min_r2, fit.r_squared);
        worst_maj = std::max(worst_maj, majorization_ratio(fit, samples, c));
        ++fits;
      }
      exps << (d ? "; " : "") << nh[0] << "/" << nh[1] << "/" << nh[2];
      worst_consistency = std::max(worst_consistency, nh[0] - (rep.kappa.M + rep.kappa.N * nh[1]));
      worst_consistency = std::max(worst_consistency, nh[2] - (rep.eta.M + rep.eta.N * nh[1]));
    }
    const std::string tag = "n" + std::to_string(n);
    out.push_back(make("growth.fit_r2_" + tag, min_r2, 0.99, fits, finite && min_r2 > 0.99,
                       "min r^2; N_hat kappa/alpha/eta per direction: " + exps.str()));
    out.push_back(upper("growth.majorization_" + tag, worst_maj, 1.05, fits, "max sample / fitted bound"));
    out.push_back(upper("growth.scale_consistency_" + tag, worst_consistency, 0.1, fits,
                        fmt("max N_hat(lhs) - (M + N N_hat(alpha)), certificates eta (", rep.eta.M, ",",
                            rep.eta.N, ") kappa (", rep.kappa.M, ",", rep.kappa.N, ")")));
  }
  const double secs = seconds_since(t0);
  for (auto& r : out) r.seconds = secs;
  return out;
}

std::vector<CheckResult> scale_relations(std::uint64_t seed, int corpus_size) {
  std::vector<CheckResult> out;
  for (int n : {2, 3}) {
    const auto corpus = crown_corpus(n, corpus_size, seed + n);
    const auto rep = scale_relation_check(corpus);
    const std::string tag = "_n" + std::to_string(n);
    for (const auto* c : {&rep.eta, &rep.kappa, &rep.coreta}) {
      const std::string name = c == &rep.eta ? "eta" : (c == &rep.kappa ? "kappa" : "coreta");
      out.push_back(make("growth.scale_" + name + tag, c->max_violation, 1e-12, corpus_size,
                         c->certified && c->max_violation <= 1e-12,
                         fmt(c->relation, ": M=", c->M, " N=", c->N, " logC=", c->logC)));
    }
  }
  // Real SL(2, R): ||eta|| <= C ||g||^2 / Delta_1 must be certified.
  std::mt19937_64 rng(seed);
  std::vector<ScaleData> data;
  for (int i = 0; i < corpus_size; ++i) data.push_back(scale_data(random_sl_real(2, rng)));
  const double lc = coreta_log_constant(data, 2, 1);
  out.push_back(upper("growth.coreta_real_sl2", lc, 20.0, corpus_size, "logC for r = 2, N = 1"));
  return out;
}

// ---------------------------------------------------------------- prinseries

namespace {

SeriesParams bench_params() { return SeriesParams{2.0, false}; }
SeriesParams unitary_params() { return SeriesParams{unitary_axis_re(false), false}; }

}  // namespace

CheckResult series_t0_norm(int quad_points) {
  double worst = 0.0;
  long count = 0;
  for (const auto& v : {ModeVector::single(0), ModeVector::single(2), smooth_test_vector(10, 2.0),
                        smooth_test_vector(40, 8.0)})
    for (cdouble s : {cdouble(1.0), cdouble(2.0), cdouble(1.0, 3.0), cdouble(0.3, -0.7)})
      for (bool sh : {false, true}) {
        const double p = std::max(quad_points, 4 * v.bandwidth() + 64);
        worst = std::max(worst, std::abs(extended_norm_sq(v, {s, sh}, kPi / 2.0, 0.0, int(p)) - v.norm_sq()));
        ++count;
      }
  return upper("prinseries.t0_norm", worst, 1e-12, count);
}

std::vector<CheckResult> series_growth(int quad_points) {
  const auto grid = dyadic_t_grid(1, 12);
  std::vector<CheckResult> out;
  const auto fit_check = [&](const std::string& name, const ModeVector& v, const SeriesParams& p, bool diag) {
    const auto f = growth_exponent(v, p, grid, quad_points);
    auto r = make(name, f.r_squared, 0.99, f.points, std::isfinite(f.N_hat) && f.r_squared > 0.99,
                  fmt("N_hat = ", f.N_hat, ", r^2 = ", f.r_squared, ", s = ", p.s.real()));
    r.diagnostic = diag;
    return r;
  };
  out.push_back(fit_check("prinseries.growth_spherical", ModeVector::single(0), bench_params(), false));
  out.push_back(fit_check("prinseries.growth_mode_plus2", ModeVector::single(2), bench_params(), false));
  out.push_back(fit_check("prinseries.growth_mode_minus2", ModeVector::single(-2), bench_params(), false));
  out.push_back(fit_check("prinseries.growth_mode_plus2_unitary", ModeVector::single(2), unitary_params(), false));
  out.push_back(fit_check("prinseries.growth_mode_minus2_unitary", ModeVector::single(-2), unitary_params(), false));
  // On the unitary axis the spherical norm grows like log(1/(1-t)); a power
  // law is the wrong model there.
  out.push_back(fit_check("prinseries.growth_spherical_unitary", ModeVector::single(0), unitary_params(), true));

  const auto norms = orbit_norms(ModeVector::single(0), unitary_params(), grid, quad_points);
  double worst_drop = 0.0;
  for (std::size_t i = 1; i < norms.size(); ++i) worst_drop = std::max(worst_drop, norms[i - 1] - norms[i]);
  auto mono = upper("prinseries.spherical_monotone", worst_drop, 0.0, static_cast<long>(norms.size()),
                    "largest decrease of the spherical norm along the grid");
  mono.diagnostic = true;
  out.push_back(mono);
  return out;
}

std::vector<CheckResult> series_real_time(int quad_points) {
  const SeriesParams p{cdouble(1.5, 0.4), false};
  const auto v = smooth_test_vector(10, 2.0);
  const auto exp_x = [](double tau) {
    return ComplexMatrix{{std::exp(tau * kPi / 4.0), 0.0}, {0.0, std::exp(-tau * kPi / 4.0)}};
  };
  const CircleFunction fv = [v](double th) { return v.at_angle(th); };
  double real_worst = 0.0, law_worst = 0.0;
  long count = 0;
  for (double tau : {0.3, 0.9, 1.4}) {
    const double z = orbit_norm_sq(v, p, kPi / 2.0, tau, quad_points);
    const double direct = real_action_norm_sq(exp_x(tau), v, p, quad_points);
    real_worst = std::max(real_worst, std::abs(z - direct) / direct);
    for (double tau1 : {0.2, -0.5}) {
      const auto composed = act_real(exp_x(tau1), act_real(exp_x(tau - tau1), fv, p), p);
      law_worst = std::max(law_worst, std::abs(circle_norm_sq(composed, quad_points) - z) / z);
    }
    ++count;
  }
  // Isometry on the unitary axis for random real g, both conventions.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  double iso = 0.0;
  for (bool sh : {false, true})
    for (int i = 0; i < 10; ++i) {
      const SeriesParams pu{cdouble(unitary_axis_re(sh), g(rng)), sh};
      const ComplexMatrix el = random_sl_real(2, rng);
      iso = std::max(iso, std::abs(real_action_norm_sq(el, v, pu, 4 * quad_points) - v.norm_sq()) / v.norm_sq());
    }
  return {upper("prinseries.real_time_oracle", real_worst, 1e-9, count, "closed form at real z vs real Iwasawa"),
          upper("prinseries.group_law", law_worst, 1e-8, 2 * count),
          upper("prinseries.unitary_isometry", iso, 1e-8, 20)};
}

CheckResult series_quadrature_doubling() {
  double worst = 0.0;
  long count = 0;
  for (const auto& v : {ModeVector::single(0), ModeVector::single(2), smooth_test_vector(10, 2.0)})
    for (double t : {0.0, 0.5, 0.9, 0.99}) {
      const SeriesParams p = unitary_params();
      const int q = required_quad_points(kPi / 2.0, t, v.bandwidth());
      const double a = extended_norm_sq(v, p, kPi / 2.0, t, q);
      worst = std::max(worst, std::abs(a - extended_norm_sq(v, p, kPi / 2.0, t, 2 * q)) / a);
      ++count;
    }
  return upper("prinseries.quadrature_doubling", worst, 1e-10, count, "relative change P -> 2P, t <= 0.99");
}

std::vector<CheckResult> series_cauchy(int quad_points) {
  const auto grid = dyadic_t_grid(4, 14);
  const auto w = smooth_test_vector(40, 8.0);
  const auto v = ModeVector::single(0);
  std::vector<CheckResult> out;
  for (bool unitary : {false, true}) {
    const SeriesParams p = unitary ? unitary_params() : bench_params();
    const auto rep = boundary_pairing(v, w, p, grid, quad_points);
    std::ostringstream os;
    os.precision(3);
    for (double d : rep.differences) os << d << " ";
    auto r = make(unitary ? "prinseries.cauchy_pairing_unitary" : "prinseries.cauchy_pairing",
                  rep.final_difference, 1e-6, static_cast<long>(grid.size()), rep.cauchy,
                  fmt("s = ", p.s.real(), ", decreasing = ", rep.decreasing, ", differences: ", os.str()));
    r.diagnostic = unitary;
    out.push_back(r);
  }
  return out;
}

CheckResult series_derivative_bump(int quad_points) {
  const auto grid = dyadic_t_grid(4, 10);
  const auto v = ModeVector::single(0);
  const SeriesParams p = bench_params();
  std::vector<double> dn;
  for (double t : grid) dn.push_back(derivative_norm(v, p, t, quad_points));
  const auto fd = fit_power_law(grid, dn, {grid.front(), grid.back()});
  const auto fb = growth_exponent(v, p, grid, quad_points);
  const double bump = fd.N_hat - fb.N_hat;
  return upper("prinseries.derivative_bump", std::abs(bump - 1.0), 0.1, static_cast<long>(grid.size()),
               fmt("N_hat derivative ", fd.N_hat, " vs orbit ", fb.N_hat, ", bump ", bump));
}

// ---------------------------------------------------------------- suites

std::vector<std::string> suite_names() { return {"identities", "bounds", "prinseries"}; }

SuiteReport run_suite(const std::string& name, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = name;
  auto& c = rep.checks;
  const auto add = [&](std::vector<CheckResult> v) {
    for (auto& r : v) c.push_back(std::move(r));
  };
  const std::uint64_t s = opt.seed;
  if (name == "identities") {
    c.push_back(ldl_reconstruction(s));
    c.push_back(ldl_minor_ratios(s + 1));
    c.push_back(eig_trace(s + 2));
    c.push_back(exp_additivity(s + 3));
    c.push_back(unitary_singular_values(s + 4));
    c.push_back(rho_ad_invariance(s + 5));
    c.push_back(boundary_direction_rho(s + 6));
    c.push_back(haar_second_moment(s + 7));
    add(smax_axioms(s + 8));
    c.push_back(real_reconstruction(s + 9));
    c.push_back(sl2_dual_oracle(s + 10));
    c.push_back(path_reconstruction(s + 11));
    c.push_back(refinement_consistency(s + 12));
    c.push_back(holomorphy_probe(s + 13));
    c.push_back(h_range_containment(s + 14));
    c.push_back(minor_weight_identity(s + 15));
    add(cosine_formula(s + 16));
    c.push_back(taylor_bound(s + 17));
    c.push_back(taylor_partial_sums(s + 18));
  } else if (name == "bounds") {
    add(sl2_alpha_blowup(s));
    add(growth_property(s + 1));
    add(scale_relations(s + 2));
  } else if (name == "prinseries") {
    c.push_back(series_t0_norm(opt.quad_points));
    add(series_growth(opt.quad_points));
    add(series_real_time(std::max(opt.quad_points, 1024)));
    c.push_back(series_quadrature_doubling());
    add(series_cauchy(opt.quad_points));
    c.push_back(series_derivative_bump(opt.quad_points));
  } else {
    throw StructuralError("unknown suite '" + name + "' (expected identities, bounds or prinseries)");
  }
  return rep;
}

}  // namespace crownlab::checks
