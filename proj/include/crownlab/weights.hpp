#pragma once

// Highest-weight expansions through the fundamental representations
// Lambda^k C^n of SL(n). For a rotation k the highest-weight vector
// e_1 ^ ... ^ e_k expands over the weights mu_I = sum_{i in I} eps_i with
// squared coefficients det(k[I, 1..k])^2.

#include <complex>
#include <span>
#include <vector>

#include "crownlab/numkernel.hpp"

namespace crownlab {

struct WeightProfile {
  int n = 0;
  int rep_index = 0;
  // k-subsets in lexicographic order; weights[i] is the indicator vector of
  // subsets[i] in eps coordinates.
  std::vector<std::vector<int>> subsets;
  std::vector<std::vector<double>> weights;
  std::vector<double> norms_sq;

  // mu_I(h) for a diagonal element h.
  double weight_at(std::size_t i, std::span<const double> h) const;
};

WeightProfile fundamental_profile(const ComplexMatrix& k_rot, int rep_index);

// sum_mu exp(-2 z mu(h)) ||v_mu||^2; at z = i t this continues alpha^{2 omega_k}
// along exp(-i t h) k.
cdouble alpha_pow(const WeightProfile& profile, std::span<const double> h, cdouble z);

// sum_{mu, nu} cos(2 t (mu - nu)(h)) ||v_mu||^2 ||v_nu||^2 = |alpha_pow(i t)|^2.
double cos_formula(const WeightProfile& profile, std::span<const double> h, double t);

// Coefficients a_0..a_order of the expansion of cos_formula in powers of (1 - t).
std::vector<double> taylor_coeffs(const WeightProfile& profile, std::span<const double> h, int order);

// max |(mu - nu)(h)| over pairs of weights carrying mass.
double max_weight_gap(const WeightProfile& profile, std::span<const double> h);

// Smallest N with |a_N| > tol; throws OrderUndetermined past `cap`.
int leading_vanishing_order(const WeightProfile& profile, std::span<const double> h, double tol,
                            int cap = 20);

}  // namespace crownlab
