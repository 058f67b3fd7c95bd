#include "crownlab/iwasawa.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "crownlab/errors.hpp"

namespace crownlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix unit_upper_inverse(const ComplexMatrix& u) {
  const std::size_t n = u.dim();
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t ii = j; ii-- > 0;) {
      cdouble s{};
      for (std::size_t k = ii + 1; k <= j; ++k) s += u(ii, k) * inv(k, j);
      inv(ii, j) = -s;
    }
  }
  return inv;
}

// kappa = g * eta^{-1} * exp(-H).
IwasawaFactors assemble(const ComplexMatrix& g, ComplexMatrix eta, std::vector<cdouble> h) {
  const std::size_t n = g.dim();
  // Exact unit upper-triangular shape.
  for (std::size_t i = 0; i < n; ++i) {
    eta(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) eta(i, j) = 0.0;
  }
  ComplexMatrix kappa = g * unit_upper_inverse(eta);
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble inv_a = std::exp(-h[j]);
    for (std::size_t i = 0; i < n; ++i) kappa(i, j) *= inv_a;
  }
  IwasawaFactors f;
  f.kappa = std::move(kappa);
  f.H = DiagonalVector{std::move(h)};
  f.eta = std::move(eta);
  return f;
}

ComplexMatrix gram(const ComplexMatrix& g) { return g.transpose() * g; }

double min_abs(const std::vector<cdouble>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& x : v) m = std::min(m, std::abs(x));
  return m;
}

bool above_floor(const std::vector<cdouble>& minors, double scale, double floor) {
  double f = 1.0;
  for (const auto& m : minors) {
    f *= scale;
    if (!(std::abs(m) > floor * f)) return false;
  }
  return true;
}

// Core continuation over u in [0, u_end]; invokes on_checkpoint(index, factors)
// whenever u reaches checkpoints[index] (sorted, within [0, u_end]).
struct Continuation {
  const std::function<ComplexMatrix(double)>& path;
  const PathConfig& cfg;
  double report_scale;  // reported t = report_scale * u

  void run(double u_end, std::span<const double> checkpoints,
           const std::function<void(std::size_t, IwasawaFactors)>& on_checkpoint) const {
    const std::size_t n = path(0.0).dim();
    ComplexMatrix g = path(0.0);
    std::vector<cdouble> minors = principal_minors(gram(g));
    std::vector<double> arg(n);
    for (std::size_t k = 0; k < n; ++k) arg[k] = std::arg(minors[k]);
    double min_minor = min_abs(minors);
    int steps = 0;

    auto emit = [&](std::size_t idx, double u) {
      Tolerances tol;
      tol.minor_floor = cfg.minor_floor;
      const ComplexMatrix s = gram(g);
      LdlFactors ldl = sym_ldl(s, tol);
      std::vector<cdouble> logs(n);
      for (std::size_t k = 0; k < n; ++k) {
        // Snap the tracked argument onto the exact one, keeping the sheet.
        const double principal = std::arg(minors[k]);
        const double sheets = std::round((arg[k] - principal) / kTwoPi);
        logs[k] = cdouble(std::log(std::abs(minors[k])), principal + kTwoPi * sheets);
      }
      std::vector<cdouble> h(n);
      for (std::size_t j = 0; j < n; ++j) h[j] = 0.5 * (logs[j] - (j == 0 ? cdouble{} : logs[j - 1]));
      IwasawaFactors f = assemble(g, std::move(ldl.upper), std::move(h));
      f.steps_used = steps;
      f.min_minor_magnitude = min_minor;
      f.t = report_scale * u;
      on_checkpoint(idx, std::move(f));
    };

    std::size_t next_cp = 0;
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= 0.0) emit(next_cp++, 0.0);
    if (u_end <= 0.0) return;

    const double base = u_end / cfg.initial_steps;
    double u = 0.0;
    int depth = 0;
    while (u < u_end) {
      double target = u_end;
      if (next_cp < checkpoints.size()) target = std::min(target, checkpoints[next_cp]);
      const double h = base * std::ldexp(1.0, -depth);
      const double u_next = (u + h >= target * (1.0 - 1e-15)) ? target : u + h;

      const ComplexMatrix g_next = path(u_next);
      const ComplexMatrix s_next = gram(g_next);
      const std::vector<cdouble> m_next = principal_minors(s_next);
      const bool inside = above_floor(m_next, std::max(s_next.max_abs(), 1e-300), cfg.minor_floor);
      double jump = 0.0, drop = 1.0;
      if (inside) {
        for (std::size_t k = 0; k < n; ++k) {
          const cdouble r = m_next[k] / minors[k];
          jump = std::max(jump, std::abs(std::arg(r)));
          drop = std::max(drop, std::abs(minors[k]) / std::abs(m_next[k]));
        }
      }
      const bool bad_arg = jump > cfg.max_arg_jump;
      const bool bad_mag = drop > cfg.max_magnitude_drop;
      if (!inside || bad_arg || bad_mag) {
        if (depth < cfg.max_refinement_depth) {
          ++depth;
          continue;
        }
        if (!inside)
          throw DomainExit(report_scale * u, report_scale * u_next,
                           std::min(min_minor, min_abs(m_next)));
        if (bad_arg) throw BranchAmbiguity(report_scale * u_next, jump);
        // Only the magnitude guard tripped at full depth: the argument is
        // still resolved, so the step is safe.
      }
      for (std::size_t k = 0; k < n; ++k) arg[k] += std::arg(m_next[k] / minors[k]);
      minors = m_next;
      g = g_next;
      u = u_next;
      ++steps;
      min_minor = std::min(min_minor, min_abs(minors));
      if (depth > 0) --depth;
      while (next_cp < checkpoints.size() && checkpoints[next_cp] <= u) emit(next_cp++, u);
    }
  }
};

}  // namespace

ComplexMatrix IwasawaFactors::alpha() const {
  std::vector<cdouble> a(H.dim());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::exp(H.entries[i]);
  return ComplexMatrix::diagonal(a);
}

ComplexMatrix IwasawaFactors::reconstruct() const { return kappa * alpha() * eta; }

void PathConfig::validate() const {
  if (initial_steps < 1) throw StructuralError("PathConfig: initial_steps must be >= 1");
  if (max_refinement_depth < 0) throw StructuralError("PathConfig: max_refinement_depth must be >= 0");
  if (!(max_arg_jump > 0.0 && max_arg_jump < std::numbers::pi / 2.0))
    throw StructuralError("PathConfig: max_arg_jump must lie in (0, pi/2)");
  if (!(max_magnitude_drop > 1.0)) throw StructuralError("PathConfig: max_magnitude_drop must be > 1");
  if (!(minor_floor > 0.0)) throw StructuralError("PathConfig: minor_floor must be > 0");
}

IwasawaFactors decompose_real(const ComplexMatrix& g, const Tolerances& tol) {
  if (!g.is_finite()) throw StructuralError("decompose_real: non-finite entry");
  if (!g.is_real(tol.symmetry)) throw StructuralError("decompose_real: matrix must be real");
  const cdouble det = g.det();
  if (std::abs(det - 1.0) > tol.determinant) {
    std::ostringstream os;
    os << "decompose_real: |det g - 1| = " << std::abs(det - 1.0) << " exceeds tolerance";
    throw StructuralError(os.str());
  }
  const std::size_t n = g.dim();
  ComplexMatrix gr(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gr(i, j) = g(i, j).real();
  LdlFactors ldl;
  try {
    ldl = sym_ldl(gram(gr), tol);
  } catch (const NearSingularMinor& e) {
    throw Error(std::string("decompose_real: internal error, real Gram matrix lost definiteness: ") +
                e.what());
  }
  std::vector<cdouble> h(n);
  for (std::size_t j = 0; j < n; ++j) h[j] = 0.5 * std::log(ldl.d.entries[j].real());
  ComplexMatrix eta(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) eta(i, j) = ldl.upper(i, j).real();
  IwasawaFactors f = assemble(gr, std::move(eta), std::move(h));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f.kappa(i, j) = f.kappa(i, j).real();
  f.min_minor_magnitude = min_abs(principal_minors(gram(gr)));
  return f;
}

DomainReport domain_test(const ComplexMatrix& g, double minor_floor) {
  const ComplexMatrix s = gram(g);
  const auto minors = principal_minors(s);
  return DomainReport{above_floor(minors, std::max(s.max_abs(), 1e-300), minor_floor), min_abs(minors)};
}

IwasawaFactors decompose_pointwise(const ComplexMatrix& g, const Tolerances& tol) {
  LdlFactors ldl = sym_ldl(gram(g), tol);
  const std::size_t n = g.dim();
  std::vector<cdouble> h(n);
  for (std::size_t j = 0; j < n; ++j) h[j] = 0.5 * std::log(ldl.d.entries[j]);
  IwasawaFactors f = assemble(g, std::move(ldl.upper), std::move(h));
  f.min_minor_magnitude = min_abs(principal_minors(gram(g)));
  return f;
}

IwasawaFactors continue_along(const std::function<ComplexMatrix(double)>& path,
                              const PathConfig& cfg, cdouble t_scale) {
  cfg.validate();
  std::optional<IwasawaFactors> out;
  const double cp[] = {1.0};
  Continuation{path, cfg, 1.0}.run(1.0, cp, [&](std::size_t, IwasawaFactors f) { out = std::move(f); });
  out->t = t_scale;
  return std::move(*out);
}

IwasawaFactors decompose_path(const PElement& x, const ComplexMatrix& k, double t_target,
                              const PathConfig& cfg) {
  cfg.validate();
  if (k.dim() != x.dim()) throw StructuralError("decompose_path: dimension mismatch");
  if (t_target < 0.0) throw StructuralError("decompose_path: t_target must be >= 0");
  const SymmetricEigen& eig = x.eigen();
  const std::function<ComplexMatrix(double)> path = [&](double t) {
    return group_exp(eig, cdouble(0.0, -t)) * k;
  };
  std::optional<IwasawaFactors> out;
  const double cp[] = {t_target};
  Continuation{path, cfg, 1.0}.run(t_target, cp,
                                   [&](std::size_t, IwasawaFactors f) { out = std::move(f); });
  return std::move(*out);
}

IwasawaFactors decompose_path_complex(const PElement& x, const ComplexMatrix& k, cdouble z,
                                      const PathConfig& cfg) {
  cfg.validate();
  if (k.dim() != x.dim()) throw StructuralError("decompose_path_complex: dimension mismatch");
  const SymmetricEigen& eig = x.eigen();
  const std::function<ComplexMatrix(double)> path = [&](double u) {
    return group_exp(eig, cdouble(0.0, -1.0) * z * u) * k;
  };
  std::optional<IwasawaFactors> out;
  const double cp[] = {1.0};
  Continuation{path, cfg, std::abs(z)}.run(1.0, cp,
                                          [&](std::size_t, IwasawaFactors f) { out = std::move(f); });
  out->t = z;
  return std::move(*out);
}

PathGridResult decompose_path_grid(const PElement& x, const ComplexMatrix& k,
                                   std::span<const double> t_grid, const PathConfig& cfg) {
  cfg.validate();
  if (t_grid.empty()) throw StructuralError("decompose_path_grid: empty grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0 || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
      throw StructuralError("decompose_path_grid: grid must be nonnegative and strictly increasing");
  }
  const SymmetricEigen& eig = x.eigen();
  const std::function<ComplexMatrix(double)> path = [&](double t) {
    return group_exp(eig, cdouble(0.0, -t)) * k;
  };
  PathGridResult res;
  res.factors.resize(t_grid.size());
  try {
    Continuation{path, cfg, 1.0}.run(t_grid.back(), t_grid, [&](std::size_t i, IwasawaFactors f) {
      res.factors[i] = std::move(f);
    });
  } catch (const DomainExit& e) {
    res.exit_t = e.last_good_t();
  }
  return res;
}

double permutohedron_violation(std::span<const double> y, std::span<const double> v) {
  const std::size_t n = y.size();
  if (v.size() != n) throw StructuralError("permutohedron_violation: dimension mismatch");
  std::vector<double> ys(y.begin(), y.end()), vs(v.begin(), v.end());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  std::sort(vs.begin(), vs.end(), std::greater<>());
  const double sum_defect =
      std::abs(std::accumulate(ys.begin(), ys.end(), 0.0) - std::accumulate(vs.begin(), vs.end(), 0.0)) /
      std::sqrt(static_cast<double>(n));
  double worst = -std::numeric_limits<double>::infinity();
  double py = 0.0, pv = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    py += ys[k - 1];
    pv += vs[k - 1];
    const double kk = static_cast<double>(k);
    worst = std::max(worst, (py - pv) / std::sqrt(kk * (n - kk) / n));
  }
  if (sum_defect > 1e-12 * (1.0 + std::abs(vs.front()))) worst = std::max(worst, sum_defect);
  return worst;
}

HRangeReport check_H_range(const IwasawaFactors& factors, const PElement& x, double t, double tol) {
  const std::size_t n = x.dim();
  std::vector<double> im(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    im[i] = factors.H.entries[i].imag();
    // exp(-itx)k = exp(i h) k with h = -t x.
    v[i] = -t * x.eigenvalues()[i];
  }
  const double viol = permutohedron_violation(im, v);
  return HRangeReport{viol <= tol, viol};
}

}  // namespace crownlab
