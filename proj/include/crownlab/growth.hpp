#pragma once

// Sup-over-K estimates of the scale of each Iwasawa component along
// boundary paths exp(-i t x) k, power-law fits of their blow-up as t -> 1,
// and empirical certificates for the component scale relations.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crownlab/iwasawa.hpp"
#include "crownlab/liegroup.hpp"
#include "crownlab/numkernel.hpp"

namespace crownlab {

enum class Component { kappa = 0, alpha = 1, eta = 2 };

const char* component_name(Component c);
Component parse_component(const std::string& name);

struct ComponentScales {
  double kappa = 1.0;
  double alpha = 1.0;
  double eta = 1.0;

  double get(Component c) const;
};

// s_max of kappa, alpha = exp(H), eta for a single factorization.
ComponentScales component_scales(const IwasawaFactors& f, const Tolerances& tol = default_tolerances());

struct GrowthSample {
  double t = 0.0;
  double sup_kappa = 1.0;
  double sup_alpha = 1.0;
  double sup_eta = 1.0;
  // Index of the maximizing candidate per component: Haar samples first,
  // then torus-grid points; -1 when pattern search improved on every
  // candidate.
  std::array<long, 3> argmax_index{-1, -1, -1};
  std::array<ComplexMatrix, 3> argmax_k;
  int samples_used = 0;
  int exits = 0;

  double sup(Component c) const;
};

struct SweepConfig {
  int n_haar = 512;
  // Points per Givens angle; 0 picks 64 for n = 2, 10 for n = 3, none above.
  int torus_grid = 0;
  std::uint64_t seed = 0;
  bool pattern_search = true;
  int search_starts = 4;
  double search_initial_step = 0.25;
  double search_min_step = 1e-9;
  int search_max_evals = 4000;
  int threads = 1;
  Tolerances tol = default_tolerances();

  void validate() const;
};

int default_haar_count(int n);
int default_torus_grid(int n);

// Deterministic grid of rotations: theta in [0, pi) for n = 2, the ZXZ
// Givens chart G01(a) G12(b) G01(c) for n = 3, empty otherwise.
std::vector<ComplexMatrix> torus_rotations(int n, int per_angle);

// Haar sample number `index` of the stream selected by `seed`; the same
// regardless of how many samples are drawn.
ComplexMatrix indexed_haar(int n, std::uint64_t seed, std::uint64_t index);

std::vector<GrowthSample> sweep_components(const PElement& x, std::span<const double> t_grid,
                                           const SweepConfig& cfg = {});

struct BlowupFit {
  double N_hat = 0.0;
  double logC_hat = 0.0;
  double r_squared = 0.0;
  std::pair<double, double> t_window{0.0, 1.0};
  int points = 0;

  // C (1 - t)^{-N}
  double predict(double t) const;
};

// Least squares of log y against -log(1 - t) over t in the closed window.
// Non-finite or non-positive y are skipped; FitError below 4 usable points.
BlowupFit fit_power_law(std::span<const double> t, std::span<const double> y,
                        std::pair<double, double> t_window = {0.0, 1.0});

BlowupFit fit_blowup(std::span<const GrowthSample> samples, Component component,
                     std::pair<double, double> t_window = {0.9, 0.999});

// max over window samples of sample / fitted value.
double majorization_ratio(const BlowupFit& fit, std::span<const double> t, std::span<const double> y);
double majorization_ratio(const BlowupFit& fit, std::span<const GrowthSample> samples, Component c);

// Geometric grid 1 - 2^{-j}, j = j_lo..j_hi.
std::vector<double> dyadic_t_grid(int j_lo, int j_hi);

// Relation log lhs <= logC + M log a + N log b over a corpus.
struct ScaleCertificate {
  std::string relation;
  bool certified = false;
  int M = 0;
  int N = 0;
  double logC = 0.0;
  double max_violation = 0.0;  // max (lhs - rhs) in log space; <= 0 when certified
};

struct ScaleRelationConfig {
  int max_exponent = 12;
  double logC_cap = 20.0;
  Tolerances tol = default_tolerances();
};

struct ScaleRelationReport {
  std::size_t corpus_size = 0;
  ScaleCertificate eta;     // s(eta) <= C s(g)^M s(alpha)^N
  ScaleCertificate kappa;   // s(kappa) <= C s(g)^M s(alpha)^N
  ScaleCertificate coreta;  // ||eta|| <= C ||g||^M / |Delta(g^T g)|^N

  bool all_certified() const { return eta.certified && kappa.certified && coreta.certified; }
};

// Per-element log data entering the three relations.
struct ScaleData {
  double log_s_g = 0.0;
  double log_s_alpha = 0.0;
  double log_s_kappa = 0.0;
  double log_s_eta = 0.0;
  double log_norm_g = 0.0;
  double log_norm_eta = 0.0;
  double log_abs_delta = 0.0;  // log prod_{k<n} |Delta_k(g^T g)|
};

ScaleData scale_data(const ComplexMatrix& g, const Tolerances& tol = default_tolerances());

// logC needed for a given exponent pair (max over corpus).
double relation_log_constant(std::span<const ScaleData> data, Component lhs, int M, int N);
double coreta_log_constant(std::span<const ScaleData> data, int r, int N);

ScaleRelationReport scale_relation_check(std::span<const ComplexMatrix> corpus,
                                         const ScaleRelationConfig& cfg = {});

// Elements k1 exp(-i t x) h with k1 Haar, x a random boundary direction and
// t = 1 - 10^{-u}, u uniform in [0, u_max]. For a fraction near_fraction
// the right factor is a perturbation, of size 10^{-u'} with u' uniform in
// [0, u_max], of a rotation k0 with
// Q^T k0 e_1 = (e_min + e_max)/sqrt(2) in the eigenbasis x = Q Lambda Q^T,
// where Delta_1 vanishes at t = 1; the rest use a random real h with
// s_max(h) <= e^{h_spread}.
std::vector<ComplexMatrix> crown_corpus(int n, std::size_t count, std::uint64_t seed,
                                        double u_max = 12.0, double h_spread = 1.0,
                                        double near_fraction = 0.5);

}  // namespace crownlab
