#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crownlab/liegroup.hpp"
#include "helpers.hpp"

using namespace crownlab;
using testing::max_gap;

namespace {
constexpr double kPi = std::numbers::pi;

PElement diag(std::vector<double> d) { return PElement::diagonal(d); }
}  // namespace

TEST_CASE("rho is the eigenvalue spread") {
  CHECK(rho(diag({0.0, 0.0})) == 0.0);
  CHECK(rho(diag({kPi / 4, -kPi / 4})) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(rho(diag({1.0, 0.0, -1.0})) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("crown membership") {
  CHECK(crown_contains(diag({0.0, 0.0})));
  CHECK_FALSE(crown_contains(diag({kPi / 4, -kPi / 4})));
  CHECK(crown_contains(diag({0.9 * kPi / 4, -0.9 * kPi / 4})));
  CHECK_FALSE(crown_contains(diag({0.45 * kPi / 2, -0.45 * kPi / 2}), 0.2));
}

TEST_CASE("boundary_direction rescales to rho = pi/2") {
  auto b = boundary_direction(diag({1.0, -1.0}));
  CHECK(b.matrix()(0, 0).real() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(b.matrix()(1, 1).real() == doctest::Approx(-kPi / 4).epsilon(1e-15));

  b = boundary_direction(diag({kPi / 4, -kPi / 4}));
  CHECK(b.matrix()(0, 0).real() == doctest::Approx(kPi / 4).epsilon(1e-15));

  b = boundary_direction(diag({2.0, -1.0, -1.0}));
  CHECK(b.matrix()(0, 0).real() == doctest::Approx(kPi / 3).epsilon(1e-15));
  CHECK(b.matrix()(2, 2).real() == doctest::Approx(-kPi / 6).epsilon(1e-15));
}

TEST_CASE("Haar samples are deterministic rotations") {
  for (int n = 2; n <= 5; ++n) {
    const auto q = haar_so(n, std::uint64_t{42});
    CHECK(max_gap(q.transpose() * q, ComplexMatrix::identity(n)) < 1e-12);
    CHECK(std::abs(q.det() - 1.0) < 1e-12);
    CHECK(q.is_real(0.0));
    CHECK(max_gap(q, haar_so(n, std::uint64_t{42})) == 0.0);
  }
  CHECK(max_gap(haar_so(3, std::uint64_t{1}), haar_so(3, std::uint64_t{2})) > 1e-3);
}

TEST_CASE("Haar entry second moment is 1/n") {
  const int n = 3, samples = 10000;
  std::mt19937_64 rng(11);
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double v = std::norm(haar_so(n, rng)(0, 0));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double sd = std::sqrt((sum2 / samples - mean * mean) / samples);
  CHECK(std::abs(mean - 1.0 / n) < 3.0 * sd);
}

TEST_CASE("s_max examples") {
  CHECK(s_max(haar_so(4, std::uint64_t{3})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s_max(ComplexMatrix{{2, 0}, {0, 0.5}}) == doctest::Approx(4.0).epsilon(1e-14));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix a(3), b(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = cdouble(g(rng), g(rng));
        b(i, j) = cdouble(g(rng), g(rng));
      }
    CHECK(s_max(a * b) <= s_max(a) * s_max(b) * (1 + 1e-10));
    CHECK(s_max(a.inverse()) == doctest::Approx(s_max(a)).epsilon(1e-10));
  }
}

TEST_CASE("sl(n) structure data") {
  const auto s3 = LieStructure::sl(3);
  CHECK(s3.restricted_roots.size() == 6);
  CHECK(s3.weyl_group.size() == 6);
  CHECK(LieStructure::sl(4).weyl_group.size() == 24);
}
