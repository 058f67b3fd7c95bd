#include "crownlab/prinseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crownlab/errors.hpp"
#include "crownlab/iwasawa.hpp"

namespace crownlab {

namespace {

constexpr double kPi = std::numbers::pi;

cdouble int_pow(cdouble w, int m) {
  if (m < 0) return 1.0 / int_pow(w, -m);
  cdouble r = 1.0;
  while (m > 0) {
    if (m & 1) r *= w;
    w *= w;
    m >>= 1;
  }
  return r;
}

void check_quad(int quad_points) {
  if (quad_points < 64) throw StructuralError("quadrature needs at least 64 points");
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw StructuralError("empty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0 && t_grid[i] < 1.0)) throw StructuralError("t values must lie in [0, 1)");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw StructuralError("t grid must be strictly increasing");
  }
}

cdouble amplitude(const Sl2Components& c, const ModeVector& v, const SeriesParams& p) {
  const cdouble h1 = 0.5 * std::log(c.q);
  return std::exp(-p.effective_s() * h1) * v.evaluate(c.exp_i_zeta);
}

}  // namespace

double unitary_axis_re(bool rho_shift) { return rho_shift ? 2.0 : 1.0; }

ModeVector::ModeVector(std::map<int, cdouble> modes) : modes_(std::move(modes)) {
  for (const auto& [m, c] : modes_) {
    if (m % 2 != 0) throw StructuralError("ModeVector: odd mode " + std::to_string(m) + " is not M-invariant");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw StructuralError("ModeVector: non-finite coefficient");
  }
}

ModeVector ModeVector::single(int m, cdouble c) { return ModeVector({{m, c}}); }

double ModeVector::norm_sq() const {
  double s = 0.0;
  for (const auto& [m, c] : modes_) s += std::norm(c);
  return s;
}

int ModeVector::bandwidth() const {
  int b = 0;
  for (const auto& [m, c] : modes_) b = std::max(b, std::abs(m));
  return b;
}

cdouble ModeVector::evaluate(cdouble w) const {
  if (modes_.empty()) return 0.0;
  // Walk the modes in increasing order, multiplying by w^{gap}.
  auto it = modes_.begin();
  int m_prev = it->first;
  cdouble pw = int_pow(w, m_prev);
  const cdouble w2 = w * w;
  cdouble s = it->second * pw;
  for (++it; it != modes_.end(); ++it) {
    const int gap = it->first - m_prev;
    pw *= gap == 2 ? w2 : int_pow(w, gap);
    s += it->second * pw;
    m_prev = it->first;
  }
  return s;
}

ModeVector smooth_test_vector(int max_mode, double decay) {
  std::map<int, cdouble> modes{{0, 1.0}};
  for (int m = 2; m <= max_mode; m += 2) {
    const double c = std::pow(static_cast<double>(m), -decay);
    modes[m] = c;
    modes[-m] = c;
  }
  return ModeVector(std::move(modes));
}

ComplexMatrix Sl2Components::kappa() const {
  const cdouble inv = 1.0 / exp_i_zeta;
  const cdouble c = 0.5 * (exp_i_zeta + inv);
  const cdouble s = cdouble(0.0, -0.5) * (exp_i_zeta - inv);
  return ComplexMatrix{{c, -s}, {s, c}};
}

ComplexMatrix Sl2Components::eta() const { return ComplexMatrix{{1.0, nu}, {0.0, 1.0}}; }

ComplexMatrix Sl2Components::alpha() const { return ComplexMatrix{{alpha1, 0.0}, {0.0, 1.0 / alpha1}}; }

Sl2Components sl2_iwasawa_closed_z(double x_scale, double theta, cdouble z, double minor_floor) {
  const cdouble u = z * x_scale;
  const cdouble q = std::cosh(u) - std::sinh(u) * std::cos(2.0 * theta);
  if (!(std::abs(q) > minor_floor))
    throw DomainExit(z.imag(), z.imag(), std::abs(q));
  Sl2Components c;
  c.q = q;
  c.alpha1 = std::sqrt(q);
  const cdouble a = std::exp(-0.5 * u) * std::cos(theta);
  const cdouble cc = std::exp(0.5 * u) * std::sin(theta);
  c.exp_i_zeta = (a + cdouble(0.0, 1.0) * cc) / c.alpha1;
  c.zeta = theta + cdouble(0.0, -1.0) * std::log(c.exp_i_zeta * std::polar(1.0, -theta));
  c.nu = std::sin(2.0 * theta) * std::sinh(u) / q;
  return c;
}

Sl2Components sl2_iwasawa_closed(double x_scale, double theta, double t, double minor_floor) {
  return sl2_iwasawa_closed_z(x_scale, theta, cdouble(0.0, t), minor_floor);
}

int required_quad_points(double x_scale, double t, int bandwidth) {
  const double eps = std::max(kPi / 2.0 - t * x_scale, 1e-12);
  const double need = 40.0 / eps + 4.0 * bandwidth;
  int p = 64;
  while (p < need && p < (1 << 26)) p <<= 1;
  return p;
}

cdouble orbit_value(const ModeVector& v, const SeriesParams& p, double x_scale, cdouble z, double theta) {
  return amplitude(sl2_iwasawa_closed_z(x_scale, theta, z), v, p);
}

double orbit_norm_sq(const ModeVector& v, const SeriesParams& p, double x_scale, cdouble z,
                     int quad_points) {
  check_quad(quad_points);
  double s = 0.0;
  for (int j = 0; j < quad_points; ++j)
    s += std::norm(orbit_value(v, p, x_scale, z, kPi * j / quad_points));
  return s / quad_points;
}

double extended_norm_sq(const ModeVector& v, const SeriesParams& p, double x_scale, double t,
                        int quad_points) {
  return orbit_norm_sq(v, p, x_scale, cdouble(0.0, t), quad_points);
}

CircleFunction act_real(const ComplexMatrix& g, CircleFunction f, const SeriesParams& p) {
  if (g.dim() != 2 || !g.is_real(1e-14)) throw StructuralError("act_real: g must be a real 2x2 matrix");
  const ComplexMatrix g_inv = g.inverse();
  const cdouble s = p.effective_s();
  return [g_inv, f = std::move(f), s](double theta) {
    const auto fac = decompose_real(g_inv * givens(2, 0, 1, theta));
    const double psi = std::atan2(fac.kappa(1, 0).real(), fac.kappa(0, 0).real());
    return std::exp(-s * fac.H.entries[0].real()) * f(psi);
  };
}

double circle_norm_sq(const CircleFunction& f, int quad_points) {
  check_quad(quad_points);
  double s = 0.0;
  for (int j = 0; j < quad_points; ++j) s += std::norm(f(kPi * j / quad_points));
  return s / quad_points;
}

double real_action_norm_sq(const ComplexMatrix& g, const ModeVector& v, const SeriesParams& p,
                           int quad_points) {
  return circle_norm_sq(act_real(g, [v](double th) { return v.at_angle(th); }, p), quad_points);
}

std::vector<double> orbit_norms(const ModeVector& v, const SeriesParams& p,
                                std::span<const double> t_grid, int quad_points) {
  check_grid(t_grid);
  check_quad(quad_points);
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const int q = std::max(quad_points, required_quad_points(kPi / 2.0, t, v.bandwidth()));
    out.push_back(std::sqrt(extended_norm_sq(v, p, kPi / 2.0, t, q)));
  }
  return out;
}

BlowupFit growth_exponent(const ModeVector& v, const SeriesParams& p, std::span<const double> t_grid,
                          int quad_points) {
  const auto norms = orbit_norms(v, p, t_grid, quad_points);
  return fit_power_law(t_grid, norms, {t_grid.front(), t_grid.back()});
}

double derivative_norm(const ModeVector& v, const SeriesParams& p, double t, int quad_points,
                       double rel_step) {
  check_quad(quad_points);
  if (!(t >= 0.0 && t < 1.0)) throw StructuralError("derivative_norm: t must lie in [0, 1)");
  if (!(rel_step > 0.0 && rel_step < 1.0)) throw StructuralError("derivative_norm: rel_step must lie in (0, 1)");
  const double h = rel_step * (1.0 - t);
  const int q = std::max(quad_points, required_quad_points(kPi / 2.0, t + h, v.bandwidth()));
  double s = 0.0;
  for (int j = 0; j < q; ++j) {
    const double th = kPi * j / q;
    const cdouble d = (orbit_value(v, p, kPi / 2.0, cdouble(0.0, t + h), th) -
                       orbit_value(v, p, kPi / 2.0, cdouble(0.0, t - h), th)) /
                      (2.0 * h);
    s += std::norm(d);
  }
  return std::sqrt(s / q);
}

cdouble boundary_pairing_value(const ModeVector& v, const ModeVector& w, const SeriesParams& p,
                               double t, int quad_points) {
  check_quad(quad_points);
  const int q = std::max(quad_points, required_quad_points(kPi / 2.0, t, std::max(v.bandwidth(), w.bandwidth())));
  cdouble s = 0.0;
  for (int j = 0; j < q; ++j) {
    const double th = kPi * j / q;
    s += std::conj(w.at_angle(th)) * orbit_value(v, p, kPi / 2.0, cdouble(0.0, t), th);
  }
  return s / static_cast<double>(q);
}

PairingReport boundary_pairing(const ModeVector& v, const ModeVector& w, const SeriesParams& p,
                               std::span<const double> t_grid, int quad_points, double threshold) {
  check_grid(t_grid);
  PairingReport r;
  r.t.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid) r.pairings.push_back(boundary_pairing_value(v, w, p, t, quad_points));
  for (std::size_t i = 1; i < r.pairings.size(); ++i)
    r.differences.push_back(std::abs(r.pairings[i] - r.pairings[i - 1]));
  r.decreasing = !r.differences.empty();
  for (std::size_t i = 1; i < r.differences.size(); ++i)
    if (!(r.differences[i] < r.differences[i - 1])) r.decreasing = false;
  r.final_difference = r.differences.empty() ? 0.0 : r.differences.back();
  r.cauchy = r.decreasing && r.final_difference < threshold;
  return r;
}

}  // namespace crownlab
