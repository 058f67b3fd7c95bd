#pragma once

// Invariant suites run by `crownlab check` and the acceptance binary. Each
// check reports the worst measured value against its threshold.

#include <cstdint>
#include <string>
#include <vector>

namespace crownlab::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  long samples = 0;
  // Reported but not counted toward the suite verdict.
  bool diagnostic = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  // Quadrature minimum for the principal-series checks.
  int quad_points = 64;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {});

// numkernel / liegroup
CheckResult ldl_reconstruction(std::uint64_t seed, int samples = 200);
CheckResult ldl_minor_ratios(std::uint64_t seed, int samples = 200);
CheckResult eig_trace(std::uint64_t seed, int samples = 200);
CheckResult exp_additivity(std::uint64_t seed, int samples = 200);
CheckResult unitary_singular_values(std::uint64_t seed, int samples = 200);
CheckResult rho_ad_invariance(std::uint64_t seed, int samples = 200);
CheckResult boundary_direction_rho(std::uint64_t seed, int samples = 200);
CheckResult haar_second_moment(std::uint64_t seed, int n = 3, int samples = 10000);
// Submultiplicativity, inversion symmetry, unitary bi-invariance.
std::vector<CheckResult> smax_axioms(std::uint64_t seed, int triples = 1000);

// iwasawa
CheckResult real_reconstruction(std::uint64_t seed, int n_lo = 2, int n_hi = 6, int per_n = 500);
CheckResult sl2_dual_oracle(std::uint64_t seed, int samples = 200);
CheckResult path_reconstruction(std::uint64_t seed, int samples = 60);
CheckResult refinement_consistency(std::uint64_t seed, int samples = 20);
CheckResult holomorphy_probe(std::uint64_t seed, int samples = 10);
CheckResult h_range_containment(std::uint64_t seed, int samples_per_n = 60);

// weights
CheckResult minor_weight_identity(std::uint64_t seed, int samples = 100);
std::vector<CheckResult> cosine_formula(std::uint64_t seed, int samples = 100);
CheckResult taylor_bound(std::uint64_t seed, int samples = 100);
CheckResult taylor_partial_sums(std::uint64_t seed, int samples = 50);

// growth
std::vector<CheckResult> sl2_alpha_blowup(std::uint64_t seed);
std::vector<CheckResult> growth_property(std::uint64_t seed, int directions = 5);
std::vector<CheckResult> scale_relations(std::uint64_t seed, int corpus_size = 1000);

// prinseries
CheckResult series_t0_norm(int quad_points = 64);
std::vector<CheckResult> series_growth(int quad_points = 64);
std::vector<CheckResult> series_real_time(int quad_points = 1024);
CheckResult series_quadrature_doubling();
std::vector<CheckResult> series_cauchy(int quad_points = 64);
CheckResult series_derivative_bump(int quad_points = 64);

}  // namespace crownlab::checks
