#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crownlab/errors.hpp"
#include "crownlab/numkernel.hpp"
#include "helpers.hpp"

using namespace crownlab;
using testing::max_gap;

TEST_CASE("principal minors of small symmetric matrices") {
  const ComplexMatrix s{{2, 1}, {1, 1}};
  const auto m = principal_minors(s);
  REQUIRE(m.size() == 2);
  CHECK(std::abs(m[0] - 2.0) < 1e-15);
  CHECK(std::abs(m[1] - 1.0) < 1e-15);

  for (cdouble d : principal_minors(ComplexMatrix::identity(4))) CHECK(std::abs(d - 1.0) < 1e-15);

  const ComplexMatrix g{{1, 0}, {1, 1}};
  const auto mg = principal_minors(g.transpose() * g);
  CHECK(std::abs(mg[0] - 2.0) < 1e-15);
  CHECK(std::abs(mg[1] - 1.0) < 1e-15);
}

TEST_CASE("principal minors reject asymmetric input") {
  CHECK_THROWS_AS(principal_minors(ComplexMatrix{{1, 2}, {0, 1}}), StructuralError);
}

TEST_CASE("sym_ldl known factors") {
  const auto f = sym_ldl(ComplexMatrix{{2, 1}, {1, 1}});
  CHECK(max_gap(f.upper, ComplexMatrix{{1, 0.5}, {0, 1}}) < 1e-15);
  CHECK(std::abs(f.d.entries[0] - 2.0) < 1e-15);
  CHECK(std::abs(f.d.entries[1] - 0.5) < 1e-15);

  const cdouble i(0, 1);
  const auto c = sym_ldl(ComplexMatrix{{1, i}, {i, 0}});
  CHECK(max_gap(c.upper, ComplexMatrix{{1, i}, {0, 1}}) < 1e-15);
  CHECK(std::abs(c.d.entries[0] - 1.0) < 1e-15);
  CHECK(std::abs(c.d.entries[1] - 1.0) < 1e-15);

  const auto id = sym_ldl(ComplexMatrix::identity(3));
  CHECK(max_gap(id.upper, ComplexMatrix::identity(3)) < 1e-15);
}

TEST_CASE("sym_ldl reconstructs random complex symmetric matrices") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    ComplexMatrix s(n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) s(a, b) = s(b, a) = cdouble(g(rng), g(rng));
    const auto f = sym_ldl(s);
    const auto back = f.upper.transpose() * ComplexMatrix::diagonal(f.d.entries) * f.upper;
    CHECK((back - s).frobenius_norm() <= 1e-11 * s.frobenius_norm());
  }
}

TEST_CASE("sym_ldl refuses a vanishing leading minor") {
  CHECK_THROWS_AS(sym_ldl(ComplexMatrix{{0, 1}, {1, 0}}), NearSingularMinor);
}

TEST_CASE("sym_eig spectra") {
  const double q = std::numbers::pi / 4;
  const std::vector<double> dg{q, -q};
  auto e = sym_eig(ComplexMatrix::diagonal(dg));
  CHECK(e[0] == doctest::Approx(-q).epsilon(1e-15));
  CHECK(e[1] == doctest::Approx(q).epsilon(1e-15));

  e = sym_eig(ComplexMatrix{{0, 1}, {1, 0}});
  CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-14));

  for (double v : sym_eig(ComplexMatrix(3))) CHECK(std::abs(v) < 1e-15);

  const cdouble i(0, 1);
  e = sym_eig(ComplexMatrix{{0, -i}, {i, 0}});
  CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("group_exp of diagonal directions") {
  const std::vector<double> d1{1.0, -1.0};
  const ComplexMatrix x = ComplexMatrix::diagonal(d1);
  CHECK(max_gap(group_exp(x, 0.0), ComplexMatrix::identity(2)) < 1e-15);
  const auto e = group_exp(x, std::log(2.0));
  CHECK(std::abs(e(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(e(1, 1) - 0.5) < 1e-14);
  CHECK(std::abs(e(0, 1)) < 1e-15);

  const double q = std::numbers::pi / 4;
  const std::vector<double> dq{q, -q};
  const auto u = group_exp(ComplexMatrix::diagonal(dq), cdouble(0, -1));
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -q)) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, q)) < 1e-15);
  CHECK(max_gap(u.adjoint() * u, ComplexMatrix::identity(2)) < 1e-15);
}

TEST_CASE("group_exp additivity off the diagonal") {
  const ComplexMatrix x{{0.3, 0.7}, {0.7, -0.3}};
  const cdouble a(0.2, -0.4), b(-0.5, 0.9);
  CHECK(max_gap(group_exp(x, a) * group_exp(x, b), group_exp(x, a + b)) < 1e-14);
}

TEST_CASE("singular values") {
  for (double v : singular_values(ComplexMatrix::identity(3))) CHECK(v == doctest::Approx(1.0));
  auto s = singular_values(ComplexMatrix{{2, 0}, {0, 0.5}});
  CHECK(s[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(0.5).epsilon(1e-15));
  s = singular_values(ComplexMatrix{{1, 1}, {0, 1}});
  CHECK(s[0] == doctest::Approx(std::sqrt((3 + std::sqrt(5.0)) / 2)).epsilon(1e-14));
  CHECK(s[1] == doctest::Approx(std::sqrt((3 - std::sqrt(5.0)) / 2)).epsilon(1e-14));
}

TEST_CASE("determinant and inverse") {
  const cdouble i(0, 1);
  const ComplexMatrix g{{1, 2.0 * i, 0}, {0.5, 1, i}, {0, 3, 2}};
  CHECK(max_gap(g * g.inverse(), ComplexMatrix::identity(3)) < 1e-14);
  // 1*(2 - 3i) - 2i*(1 - 0) + 0
  CHECK(std::abs(g.det() - cdouble(2, -5)) < 1e-14);
}
