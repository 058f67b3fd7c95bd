#include "crownlab/weights.hpp"

#include <algorithm>
#include <cmath>

#include "crownlab/errors.hpp"

namespace crownlab {

namespace {

void k_subsets(int n, int k, std::vector<int>& cur, int start, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    k_subsets(n, k, cur, i + 1, out);
    cur.pop_back();
  }
}

// Pairwise data shared by the double sums.
struct WeightPairs {
  std::vector<double> gap;   // (mu - nu)(h)
  std::vector<double> mass;  // ||v_mu||^2 ||v_nu||^2
};

WeightPairs pairs(const WeightProfile& p, std::span<const double> h) {
  const std::size_t m = p.norms_sq.size();
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = p.weight_at(i, h);
  WeightPairs out;
  out.gap.reserve(m * m);
  out.mass.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.norms_sq[i] == 0.0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (p.norms_sq[j] == 0.0) continue;
      out.gap.push_back(w[i] - w[j]);
      out.mass.push_back(p.norms_sq[i] * p.norms_sq[j]);
    }
  }
  return out;
}

void check_h(const WeightProfile& p, std::span<const double> h) {
  if (static_cast<int>(h.size()) != p.n)
    throw StructuralError("weights: h has " + std::to_string(h.size()) + " entries, expected " +
                          std::to_string(p.n));
}

}  // namespace

double WeightProfile::weight_at(std::size_t i, std::span<const double> h) const {
  double s = 0.0;
  for (int idx : subsets[i]) s += h[idx];
  return s;
}

WeightProfile fundamental_profile(const ComplexMatrix& k_rot, int rep_index) {
  const int n = static_cast<int>(k_rot.dim());
  if (rep_index < 1 || rep_index > n - 1)
    throw StructuralError("fundamental_profile: rep_index must lie in 1..n-1");
  WeightProfile p;
  p.n = n;
  p.rep_index = rep_index;
  std::vector<int> cur;
  k_subsets(n, rep_index, cur, 0, p.subsets);
  for (const auto& subset : p.subsets) {
    std::vector<double> wt(n, 0.0);
    ComplexMatrix block(rep_index);
    for (int r = 0; r < rep_index; ++r) {
      wt[subset[r]] = 1.0;
      for (int c = 0; c < rep_index; ++c) block(r, c) = k_rot(subset[r], c).real();
    }
    const double d = block.det().real();
    p.weights.push_back(std::move(wt));
    p.norms_sq.push_back(d * d);
  }
  return p;
}

cdouble alpha_pow(const WeightProfile& profile, std::span<const double> h, cdouble z) {
  check_h(profile, h);
  cdouble s{};
  for (std::size_t i = 0; i < profile.norms_sq.size(); ++i)
    s += std::exp(-2.0 * z * profile.weight_at(i, h)) * profile.norms_sq[i];
  return s;
}

double cos_formula(const WeightProfile& profile, std::span<const double> h, double t) {
  check_h(profile, h);
  const auto wp = pairs(profile, h);
  double s = 0.0;
  for (std::size_t i = 0; i < wp.gap.size(); ++i) s += std::cos(2.0 * t * wp.gap[i]) * wp.mass[i];
  return s;
}

// Expanding cos(2 (1 - u) d) in u gives
//   a_{2m}   = (-1)^m 2^{2m} / (2m)!     sum cos(2d) d^{2m}   w_mu w_nu
//   a_{2m+1} = (-1)^m 2^{2m+1} / (2m+1)! sum sin(2d) d^{2m+1} w_mu w_nu
std::vector<double> taylor_coeffs(const WeightProfile& profile, std::span<const double> h, int order) {
  check_h(profile, h);
  if (order < 0) throw StructuralError("taylor_coeffs: order must be >= 0");
  const auto wp = pairs(profile, h);
  std::vector<double> a(order + 1, 0.0);
  for (std::size_t i = 0; i < wp.gap.size(); ++i) {
    const double d = wp.gap[i];
    const double c = std::cos(2.0 * d), s = std::sin(2.0 * d);
    // term_n = (2d)^n / n!, built incrementally.
    double term = 1.0;
    for (int nn = 0; nn <= order; ++nn) {
      if (nn > 0) term *= 2.0 * d / nn;
      const int m = nn / 2;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      a[nn] += sign * term * ((nn % 2 == 0) ? c : s) * wp.mass[i];
    }
  }
  return a;
}

double max_weight_gap(const WeightProfile& profile, std::span<const double> h) {
  check_h(profile, h);
  const auto wp = pairs(profile, h);
  double m = 0.0;
  for (double g : wp.gap) m = std::max(m, std::abs(g));
  return m;
}

int leading_vanishing_order(const WeightProfile& profile, std::span<const double> h, double tol,
                            int cap) {
  if (!(tol > 0.0)) throw StructuralError("leading_vanishing_order: tol must be > 0");
  const auto a = taylor_coeffs(profile, h, cap);
  for (int nn = 0; nn <= cap; ++nn)
    if (std::abs(a[nn]) > tol) return nn;
  throw OrderUndetermined(cap);
}

}  // namespace crownlab
