#pragma once

// Spherical principal series of SL(2, R) realized on even functions of the
// circle K/M, theta in [0, pi) with d theta / pi. The group acts by
//   (pi_s(g) f)(k) = exp(-s H_1(g^{-1} k)) f(kappa(g^{-1} k)),
// and the orbit of exp(z x), x = diag(x_scale/2, -x_scale/2), is evaluated
// through the closed-form Iwasawa data of exp(-z x) k_theta.

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "crownlab/growth.hpp"
#include "crownlab/numkernel.hpp"

namespace crownlab {

struct SeriesParams {
  cdouble s = 1.0;
  // Multiplies the amplitude by alpha_1, i.e. the norm integrand by |alpha_1|^2.
  bool rho_shift = false;

  // Exponent actually applied to H_1.
  cdouble effective_s() const { return rho_shift ? s - 1.0 : s; }
};

// Re s on which pi_s is unitary for the given convention (1 without the
// shift, 2 with it).
double unitary_axis_re(bool rho_shift);

class ModeVector {
 public:
  ModeVector() = default;
  explicit ModeVector(std::map<int, cdouble> modes);
  static ModeVector single(int m, cdouble c = 1.0);

  const std::map<int, cdouble>& modes() const noexcept { return modes_; }
  double norm_sq() const;
  bool empty() const noexcept { return modes_.empty(); }
  int bandwidth() const;  // max |m|

  // sum_m c_m w^m for w = e^{i zeta}.
  cdouble evaluate(cdouble w) const;
  cdouble at_angle(double theta) const { return evaluate(std::polar(1.0, theta)); }

 private:
  std::map<int, cdouble> modes_;
};

// c_0 = 1, c_m = |m|^{-decay} for even 0 < |m| <= max_mode.
ModeVector smooth_test_vector(int max_mode = 40, double decay = 8.0);

struct Sl2Components {
  cdouble alpha1;   // sqrt(a^2 + c^2)
  cdouble zeta;     // kappa = rotation by zeta
  cdouble exp_i_zeta;
  cdouble nu;       // eta = [[1, nu], [0, 1]]
  cdouble q;        // a^2 + c^2

  ComplexMatrix kappa() const;
  ComplexMatrix eta() const;
  ComplexMatrix alpha() const;
};

// Iwasawa data of exp(-z x) k_theta, z complex. The principal square root
// of a^2 + c^2 is the continuous branch whenever Re(a^2 + c^2) stays
// positive along the segment [0, z], which holds for z = i t with
// t x_scale < pi/2 and for real z.
Sl2Components sl2_iwasawa_closed_z(double x_scale, double theta, cdouble z,
                                   double minor_floor = default_tolerances().minor_floor);

// z = i t.
Sl2Components sl2_iwasawa_closed(double x_scale, double theta, double t,
                                 double minor_floor = default_tolerances().minor_floor);

// Smallest power of two >= 64 resolving the integrand at z = i t: the
// nearest singularity sits about (pi/2 - t x_scale)/2 off the real theta axis.
int required_quad_points(double x_scale, double t, int bandwidth);

// Value of pi_s(exp(z x)) v at k_theta.
cdouble orbit_value(const ModeVector& v, const SeriesParams& p, double x_scale, cdouble z, double theta);

// ||pi_s(exp(z x)) v||^2 by the trapezoid rule on quad_points nodes.
double orbit_norm_sq(const ModeVector& v, const SeriesParams& p, double x_scale, cdouble z,
                     int quad_points);

// z = i t.
double extended_norm_sq(const ModeVector& v, const SeriesParams& p, double x_scale, double t,
                        int quad_points);

// A function on K/M given by its values at angles theta.
using CircleFunction = std::function<cdouble(double)>;

// pi_s(g) f for real g in SL(2, R), through decompose_real of g^{-1} k_theta.
CircleFunction act_real(const ComplexMatrix& g, CircleFunction f, const SeriesParams& p);

double circle_norm_sq(const CircleFunction& f, int quad_points);

// ||pi_s(g) v||^2 for real g, by the real Iwasawa decomposition.
double real_action_norm_sq(const ComplexMatrix& g, const ModeVector& v, const SeriesParams& p,
                           int quad_points);

// Fits ||pi_s(exp(i t x)) v|| along x_scale = pi/2 against -log(1 - t).
// quad_points is a minimum; each t uses at least required_quad_points.
BlowupFit growth_exponent(const ModeVector& v, const SeriesParams& p, std::span<const double> t_grid,
                          int quad_points);

// Same data as growth_exponent: (t, norm) per grid point.
std::vector<double> orbit_norms(const ModeVector& v, const SeriesParams& p,
                                std::span<const double> t_grid, int quad_points);

// ||d/dt pi_s(exp(i t x)) v|| by a centered difference with step
// rel_step * (1 - t).
double derivative_norm(const ModeVector& v, const SeriesParams& p, double t, int quad_points,
                       double rel_step = 1e-3);

struct PairingReport {
  std::vector<double> t;
  std::vector<cdouble> pairings;
  std::vector<double> differences;  // |F(t_{j+1}) - F(t_j)|
  bool decreasing = false;
  double final_difference = 0.0;
  bool cauchy = false;  // decreasing and final difference < threshold
};

// F(t) = <w, pi_s(exp(i t x)) v> with x_scale = pi/2, conjugate-linear in w.
cdouble boundary_pairing_value(const ModeVector& v, const ModeVector& w, const SeriesParams& p,
                               double t, int quad_points);

PairingReport boundary_pairing(const ModeVector& v, const ModeVector& w, const SeriesParams& p,
                               std::span<const double> t_grid, int quad_points,
                               double threshold = 1e-6);

}  // namespace crownlab
