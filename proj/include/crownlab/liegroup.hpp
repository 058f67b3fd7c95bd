#pragma once

// sl(n, R) structure data: restricted roots, the Weyl group, the
// spectral-radius norm rho on p, crown membership, Haar samples on SO(n),
// and the maximal scale function on SL(n, C).

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "crownlab/numkernel.hpp"

namespace crownlab {

struct LieStructure {
  int n = 0;
  // eps_i - eps_j for i != j, in diagonal coordinates.
  std::vector<std::vector<double>> restricted_roots;
  // Permutations of 0..n-1; enumerated for n <= 5, otherwise empty and
  // sampled through random_weyl_element.
  std::vector<std::vector<int>> weyl_group;

  static LieStructure sl(int n);
};

std::vector<int> random_weyl_element(int n, std::mt19937_64& rng);

// A real symmetric traceless matrix with its spectral data cached.
class PElement {
 public:
  explicit PElement(const ComplexMatrix& x, const Tolerances& tol = default_tolerances());
  static PElement diagonal(std::span<const double> entries);

  const ComplexMatrix& matrix() const noexcept { return x_; }
  const std::vector<double>& eigenvalues() const noexcept { return eig_.values; }
  const SymmetricEigen& eigen() const noexcept { return eig_; }
  std::size_t dim() const noexcept { return x_.dim(); }

  PElement scaled(double c) const;

 private:
  ComplexMatrix x_;
  SymmetricEigen eig_;
};

// Spectral radius of ad(x): lambda_max - lambda_min.
double rho(const PElement& x);

// rho(x) < pi/2 - margin.
bool crown_contains(const PElement& x, double margin = 0.0);

// Rescales h_raw onto the crown boundary, rho = pi/2.
PElement boundary_direction(const PElement& h_raw);

// Random traceless symmetric direction with Gaussian entries, rescaled to
// the crown boundary.
PElement random_boundary_direction(int n, std::mt19937_64& rng);

// Haar-distributed element of SO(n): Gaussian matrix, Gram-Schmidt with a
// positive diagonal in the triangular factor, first column flipped when the
// determinant is negative.
ComplexMatrix haar_so(int n, std::mt19937_64& rng);
ComplexMatrix haar_so(int n, std::uint64_t seed);

// Rotation by angle in the (p, q) coordinate plane.
ComplexMatrix givens(int n, int p, int q, double angle);

// sigma_max / sigma_min; equals e^{rho(X)} for g = u exp(X).
double s_max(const ComplexMatrix& g, const Tolerances& tol = default_tolerances());

}  // namespace crownlab
