#pragma once

// Iwasawa factorization g = kappa * exp(H) * eta of SL(n, R), the
// complexified domain K_C A_C N_C = {Delta(g^T g) != 0}, and holomorphic
// continuation of (kappa, H, eta) along crown paths t -> exp(-i t x) k.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "crownlab/liegroup.hpp"
#include "crownlab/numkernel.hpp"

namespace crownlab {

struct IwasawaFactors {
  ComplexMatrix kappa;  // complex orthogonal: kappa^T kappa = 1
  DiagonalVector H;     // alpha = exp(H), sum(H) = 0
  ComplexMatrix eta;    // unit upper-triangular
  cdouble t = 0.0;      // path parameter at which the factors were taken
  int steps_used = 0;
  double min_minor_magnitude = 1.0;

  ComplexMatrix alpha() const;
  ComplexMatrix reconstruct() const;
};

struct PathConfig {
  int initial_steps = 16;
  int max_refinement_depth = 30;
  // Largest accepted change of arg(Delta_k) over one step.
  double max_arg_jump = 0.7853981633974483;  // pi/4
  // A step is refined when some |Delta_k| shrinks by more than this factor.
  double max_magnitude_drop = 10.0;
  double minor_floor = 1e-13;

  void validate() const;
};

struct DomainReport {
  bool inside = false;
  double min_minor_magnitude = 0.0;
};

// Real Iwasawa decomposition; kappa real orthogonal, H real, eta real.
IwasawaFactors decompose_real(const ComplexMatrix& g, const Tolerances& tol = default_tolerances());

// All leading minors of g^T g (bilinear transpose) above the floor.
DomainReport domain_test(const ComplexMatrix& g, double minor_floor = default_tolerances().minor_floor);

// Factorization at a single point without branch bookkeeping: H uses the
// principal square root of each pivot. Every s_max of a component is
// independent of that choice.
IwasawaFactors decompose_pointwise(const ComplexMatrix& g, const Tolerances& tol = default_tolerances());

// Continues the factorization of g(s), s in [0, 1], from the real point g(0)
// where H(0) is taken real. Throws DomainExit / BranchAmbiguity.
IwasawaFactors continue_along(const std::function<ComplexMatrix(double)>& path,
                              const PathConfig& cfg, cdouble t_scale = 1.0);

// Path exp(-i t x) k for t in [0, t_target].
IwasawaFactors decompose_path(const PElement& x, const ComplexMatrix& k, double t_target,
                              const PathConfig& cfg = {});

// Same, along the straight segment from 0 to a complex endpoint z.
IwasawaFactors decompose_path_complex(const PElement& x, const ComplexMatrix& k, cdouble z,
                                      const PathConfig& cfg = {});

// One continuation that records factors at each increasing grid point.
// Entries after a domain exit are empty.
struct PathGridResult {
  std::vector<std::optional<IwasawaFactors>> factors;
  std::optional<double> exit_t;  // last good t if the path left the domain
};
PathGridResult decompose_path_grid(const PElement& x, const ComplexMatrix& k,
                                   std::span<const double> t_grid, const PathConfig& cfg = {});

struct HRangeReport {
  bool contained = false;
  // Signed distance from Im H to conv(W . (-t lambda(x))), maximized over the
  // facet hyperplanes. Negative inside; positive and a lower bound on the
  // Euclidean distance outside.
  double violation = 0.0;
};

// Im H in the convex hull of Weyl-permuted -t * eigenvalues(x): the path
// exp(-i t x) k moves along exp(i h) with h = -t x.
HRangeReport check_H_range(const IwasawaFactors& factors, const PElement& x, double t,
                           double tol = 1e-8);

// Generic permutohedron membership used by check_H_range.
double permutohedron_violation(std::span<const double> y, std::span<const double> v);

}  // namespace crownlab
