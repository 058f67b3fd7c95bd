#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crownlab/errors.hpp"
#include "crownlab/iwasawa.hpp"
#include "crownlab/prinseries.hpp"
#include "helpers.hpp"

using namespace crownlab;
using testing::max_gap;
using testing::rotation;

namespace {
constexpr double kPi = std::numbers::pi;

PElement sl2_boundary() {
  const std::vector<double> d{kPi / 4, -kPi / 4};
  return PElement::diagonal(d);
}
}  // namespace

TEST_CASE("real Iwasawa of the lower shear") {
  const ComplexMatrix g{{1, 0}, {1, 1}};
  const auto f = decompose_real(g);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_gap(f.kappa, ComplexMatrix{{r, -r}, {r, r}}) < 1e-15);
  CHECK(std::exp(f.H.entries[0].real()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::exp(f.H.entries[1].real()) == doctest::Approx(r).epsilon(1e-15));
  CHECK(max_gap(f.eta, ComplexMatrix{{1, 0.5}, {0, 1}}) < 1e-15);
  CHECK(max_gap(f.reconstruct(), g) < 1e-15);
}

TEST_CASE("real Iwasawa trivial cases") {
  auto f = decompose_real(ComplexMatrix::identity(3));
  CHECK(max_gap(f.kappa, ComplexMatrix::identity(3)) < 1e-15);
  CHECK(max_gap(f.eta, ComplexMatrix::identity(3)) < 1e-15);
  for (auto h : f.H.entries) CHECK(std::abs(h) < 1e-15);

  f = decompose_real(ComplexMatrix{{2, 0}, {0, 0.5}});
  CHECK(max_gap(f.kappa, ComplexMatrix::identity(2)) < 1e-15);
  CHECK(f.H.entries[0].real() == doctest::Approx(std::log(2.0)));
  CHECK(f.H.entries[1].real() == doctest::Approx(-std::log(2.0)));
}

TEST_CASE("domain test") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  ComplexMatrix a(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = g(rng);
  CHECK(domain_test(a).inside);

  const cdouble i(0, 1);
  CHECK_FALSE(domain_test(ComplexMatrix{{1, 0}, {i, 1}}).inside);

  const auto id = domain_test(ComplexMatrix::identity(3));
  CHECK(id.inside);
  CHECK(id.min_minor_magnitude == doctest::Approx(1.0));
}

TEST_CASE("crown path at t = 0 returns the rotation") {
  const auto k = haar_so(3, std::uint64_t{9});
  std::mt19937_64 rng(1);
  const auto x = random_boundary_direction(3, rng);
  const auto f = decompose_path(x, k, 0.0);
  CHECK(max_gap(f.kappa, k) < 1e-14);
  CHECK(max_gap(f.eta, ComplexMatrix::identity(3)) < 1e-14);
  for (auto h : f.H.entries) CHECK(std::abs(h) < 1e-14);
}

TEST_CASE("SL(2) crown path matches the closed form") {
  const auto x = sl2_boundary();
  for (double theta : {0.0, 0.3, kPi / 4 - 0.05, 1.2, 2.9})
    for (double t : {0.25, 0.7, 0.95, 0.999}) {
      const auto f = decompose_path(x, rotation(theta), t);
      const cdouble q = std::cos(t * kPi / 2) - cdouble(0, 1) * std::sin(t * kPi / 2) * std::cos(2 * theta);
      const cdouble a1 = std::exp(f.H.entries[0]);
      CHECK(std::abs(a1 * a1 - q) < 1e-10);
      const auto c = sl2_iwasawa_closed(kPi / 2, theta, t);
      CHECK(std::abs(a1 - c.alpha1) < 1e-10);
      CHECK(max_gap(f.kappa, c.kappa()) < 1e-9);
      CHECK(max_gap(f.eta, c.eta()) < 1e-9);
    }
}

TEST_CASE("SL(2) crown path exits near t = 1 at theta = pi/4") {
  bool exited = false;
  try {
    decompose_path(sl2_boundary(), rotation(kPi / 4), 1.0);
  } catch (const DomainExit& e) {
    exited = true;
    CHECK(e.last_good_t() > 0.99);
    CHECK(e.last_good_t() < 1.0);
  }
  CHECK(exited);
}

TEST_CASE("H range in SL(2)") {
  const auto x = sl2_boundary();
  for (double theta = 0.05; theta < kPi; theta += 0.3)
    for (double t : {0.0, 0.5, 0.99}) {
      const auto f = decompose_path(x, rotation(theta), t);
      const auto rep = check_H_range(f, x, t);
      CHECK(rep.contained);
      CHECK(std::abs(f.H.entries[0].imag()) <= t * kPi / 4 + 1e-12);
    }
}

TEST_CASE("permutohedron membership") {
  const std::vector<double> v{1.0, 0.0, -1.0};
  const std::vector<double> inside{0.2, -0.1, -0.1};
  const std::vector<double> vertex{0.0, 1.0, -1.0};
  const std::vector<double> outside{1.5, -0.5, -1.0};
  CHECK(permutohedron_violation(inside, v) < 0.0);
  CHECK(std::abs(permutohedron_violation(vertex, v)) < 1e-15);
  CHECK(permutohedron_violation(outside, v) > 0.1);
}

TEST_CASE("path grid agrees with separate continuations") {
  std::mt19937_64 rng(17);
  const auto x = random_boundary_direction(3, rng);
  const auto k = haar_so(3, rng);
  const std::vector<double> grid{0.2, 0.5, 0.9};
  const auto res = decompose_path_grid(x, k, grid);
  REQUIRE(res.factors.size() == 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(res.factors[i].has_value());
    const auto single = decompose_path(x, k, grid[i]);
    CHECK(max_gap(res.factors[i]->kappa, single.kappa) < 1e-10);
    CHECK(max_gap(res.factors[i]->eta, single.eta) < 1e-10);
  }
}

TEST_CASE("path config validation") {
  PathConfig cfg;
  cfg.initial_steps = 0;
  CHECK_THROWS_AS(cfg.validate(), StructuralError);
}
