#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crownlab/errors.hpp"
#include "crownlab/growth.hpp"

using namespace crownlab;

namespace {
constexpr double kPi = std::numbers::pi;

PElement sl2_boundary() {
  const std::vector<double> d{kPi / 4, -kPi / 4};
  return PElement::diagonal(d);
}
}  // namespace

TEST_CASE("sups at t = 0 are one") {
  std::mt19937_64 rng(2);
  const auto x = random_boundary_direction(3, rng);
  const std::vector<double> grid{0.0};
  SweepConfig cfg;
  cfg.n_haar = 32;
  cfg.torus_grid = 3;
  const auto s = sweep_components(x, grid, cfg);
  REQUIRE(s.size() == 1);
  CHECK(s[0].sup_kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s[0].sup_alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s[0].sup_eta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("SL(2) alpha sup is 1/|cos(t pi/2)|") {
  const auto grid = dyadic_t_grid(1, 10);
  SweepConfig cfg;
  cfg.n_haar = 64;
  const auto s = sweep_components(sl2_boundary(), grid, cfg);
  for (const auto& row : s) CHECK(row.sup_alpha == doctest::Approx(1.0 / std::cos(row.t * kPi / 2)).epsilon(1e-6));

  const auto fit = fit_blowup(s, Component::alpha);
  CHECK(std::abs(fit.N_hat - 1.0) < 0.05);
  CHECK(std::abs(std::exp(fit.logC_hat) / (2 / kPi) - 1.0) < 0.1);
}

TEST_CASE("more Haar samples never lower the estimate") {
  std::mt19937_64 rng(4);
  const auto x = random_boundary_direction(3, rng);
  const std::vector<double> grid{0.5, 0.9};
  SweepConfig a;
  a.n_haar = 40;
  a.torus_grid = 0;
  a.pattern_search = false;
  a.seed = 99;
  SweepConfig b = a;
  b.n_haar = 80;
  const auto sa = sweep_components(x, grid, a);
  const auto sb = sweep_components(x, grid, b);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (Component c : {Component::kappa, Component::alpha, Component::eta}) CHECK(sb[i].sup(c) >= sa[i].sup(c));
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  std::mt19937_64 rng(6);
  const auto x = random_boundary_direction(2, rng);
  const std::vector<double> grid{0.3, 0.8, 0.95};
  SweepConfig cfg;
  cfg.n_haar = 32;
  cfg.seed = 1;
  const auto one = sweep_components(x, grid, cfg);
  cfg.threads = 4;
  const auto four = sweep_components(x, grid, cfg);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(one[i].sup_kappa == four[i].sup_kappa);
    CHECK(one[i].sup_alpha == four[i].sup_alpha);
    CHECK(one[i].sup_eta == four[i].sup_eta);
  }
}

TEST_CASE("indexed Haar samples do not depend on the count drawn") {
  const auto a = indexed_haar(3, 5, 17);
  const auto b = indexed_haar(3, 5, 17);
  const auto c = indexed_haar(3, 5, 18);
  CHECK((a - b).frobenius_norm() == 0.0);
  CHECK((a - c).frobenius_norm() > 1e-3);
}

TEST_CASE("power-law fit recovers synthetic data") {
  const auto t = dyadic_t_grid(1, 12);
  std::vector<double> y;
  for (double v : t) y.push_back(3.0 * std::pow(1.0 - v, -2.0));
  const auto fit = fit_power_law(t, y, {0.9, 0.999});
  CHECK(fit.N_hat == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.logC_hat == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.predict(0.99) == doctest::Approx(3e4).epsilon(1e-9));
  CHECK(majorization_ratio(fit, t, y) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<double> ones(t.size(), 1.0);
  const auto flat = fit_power_law(t, ones);
  CHECK(std::abs(flat.N_hat) < 1e-12);
}

TEST_CASE("fit rejects too few points") {
  const std::vector<double> t{0.5, 0.75, 0.875};
  const std::vector<double> y{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(fit_power_law(t, y), FitError);
  const std::vector<double> t4{0.5, 0.75, 0.875, 0.9375};
  const std::vector<double> y4{1.0, 0.0, 3.0, -1.0};
  CHECK_THROWS_AS(fit_power_law(t4, y4), FitError);
}

TEST_CASE("dyadic grid") {
  const auto g = dyadic_t_grid(1, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == 0.5);
  CHECK(g[2] == 0.875);
}

TEST_CASE("scale relations on trivial corpora") {
  const std::vector<ComplexMatrix> id{ComplexMatrix::identity(3)};
  const auto rep = scale_relation_check(id);
  CHECK(rep.all_certified());
  CHECK(rep.eta.M == 0);
  CHECK(rep.eta.N == 0);
  CHECK(rep.eta.logC == doctest::Approx(0.0));

  // Inside the unitary part of the crown s(g) = 1, so M does not matter.
  std::mt19937_64 rng(8);
  std::vector<ComplexMatrix> corpus;
  for (int i = 0; i < 100; ++i) {
    const auto x = random_boundary_direction(3, rng);
    const double t = 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
    corpus.push_back(group_exp(x.matrix(), cdouble(0, -t)) * haar_so(3, rng));
  }
  const auto r2 = scale_relation_check(corpus);
  CHECK(r2.eta.certified);
  CHECK(r2.kappa.certified);
  CHECK(r2.eta.max_violation <= 0.0);
}

TEST_CASE("scale relation rejects elements outside the domain") {
  const cdouble i(0, 1);
  const std::vector<ComplexMatrix> bad{ComplexMatrix{{1, 0}, {i, 1}}};
  CHECK_THROWS_AS(scale_relation_check(bad), DomainError);
}

TEST_CASE("component names round-trip") {
  for (Component c : {Component::kappa, Component::alpha, Component::eta})
    CHECK(parse_component(component_name(c)) == c);
  CHECK_THROWS(parse_component("beta"));
}

TEST_CASE("sweep config validation") {
  SweepConfig cfg;
  cfg.n_haar = -1;
  CHECK_THROWS_AS(cfg.validate(), StructuralError);
}
