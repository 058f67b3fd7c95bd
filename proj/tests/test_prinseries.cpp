#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crownlab/errors.hpp"
#include "crownlab/prinseries.hpp"
#include "helpers.hpp"

using namespace crownlab;
using testing::max_gap;
using testing::rotation;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed form at t = 0") {
  const auto c = sl2_iwasawa_closed(kPi / 2, 0.7, 0.0);
  CHECK(std::abs(c.alpha1 - 1.0) < 1e-15);
  CHECK(std::abs(c.zeta - 0.7) < 1e-15);
  CHECK(std::abs(c.nu) < 1e-15);
}

TEST_CASE("closed form at theta = 0 stays on the unit circle") {
  for (double t : {0.1, 0.5, 0.99, 1.0}) {
    const auto c = sl2_iwasawa_closed(kPi / 2, 0.0, t);
    CHECK(std::abs(c.alpha1 * c.alpha1 - std::polar(1.0, -t * kPi / 2)) < 1e-14);
    CHECK(std::abs(c.alpha1) == doctest::Approx(1.0));
  }
}

TEST_CASE("closed form vanishes at theta = pi/4, t = 1") {
  const auto c = sl2_iwasawa_closed(kPi / 2, kPi / 4, 0.9);
  CHECK(std::norm(c.alpha1) == doctest::Approx(std::cos(0.9 * kPi / 2)).epsilon(1e-12));
  CHECK_THROWS_AS(sl2_iwasawa_closed(kPi / 2, kPi / 4, 1.0), DomainExit);
}

TEST_CASE("closed form reconstructs the group element") {
  const double xs = 1.3;
  for (cdouble z : {cdouble(0, 0.8), cdouble(0.4, 0.0), cdouble(-0.2, 0.5)}) {
    const double th = 0.6;
    const auto c = sl2_iwasawa_closed_z(xs, th, z);
    const std::vector<double> d{xs / 2, -xs / 2};
    const auto g = group_exp(ComplexMatrix::diagonal(d), -z) * rotation(th);
    CHECK(max_gap(c.kappa() * c.alpha() * c.eta(), g) < 1e-13);
  }
}

TEST_CASE("mode vectors") {
  const ModeVector v({{0, 1.0}, {2, cdouble(0, 2)}, {-4, 0.5}});
  CHECK(v.norm_sq() == doctest::Approx(5.25));
  CHECK(v.bandwidth() == 4);
  const double th = 0.3;
  const cdouble direct = 1.0 + cdouble(0, 2) * std::polar(1.0, 2 * th) + 0.5 * std::polar(1.0, -4 * th);
  CHECK(std::abs(v.at_angle(th) - direct) < 1e-14);
  CHECK_THROWS_AS(ModeVector({{1, 1.0}}), StructuralError);

  const auto w = smooth_test_vector();
  CHECK(w.bandwidth() == 40);
  CHECK(std::abs(w.modes().at(2) - std::pow(2.0, -8)) < 1e-18);
}

TEST_CASE("norm at t = 0 is the coefficient norm") {
  const ModeVector v({{0, 0.3}, {2, cdouble(1, -1)}, {-6, 0.25}});
  const SeriesParams p{cdouble(1.0, 0.7), false};
  CHECK(extended_norm_sq(v, p, kPi / 2, 0.0, 64) == doctest::Approx(v.norm_sq()).epsilon(1e-13));
}

TEST_CASE("unitary axis isometry at real time") {
  const ModeVector v({{0, 1.0}, {2, 0.5}, {-2, cdouble(0, 0.25)}});
  for (bool shift : {false, true}) {
    const SeriesParams p{cdouble(unitary_axis_re(shift), 0.9), shift};
    const ComplexMatrix g{{1.2, 0.4}, {-0.3, 0.7333333333333334}};
    CHECK(real_action_norm_sq(g, v, p, 1024) == doctest::Approx(v.norm_sq()).epsilon(1e-8));
  }
}

TEST_CASE("real-time closed form matches the real Iwasawa action") {
  const ModeVector v({{0, 1.0}, {2, 0.3}});
  const SeriesParams p{cdouble(1.5, 0.4), false};
  const double xs = kPi / 2, tau = 0.6;
  const std::vector<double> d{xs / 2, -xs / 2};
  const auto g = group_exp(ComplexMatrix::diagonal(d), tau);
  CHECK(orbit_norm_sq(v, p, xs, tau, 1024) ==
        doctest::Approx(real_action_norm_sq(g, v, p, 1024)).epsilon(1e-9));
}

TEST_CASE("quadrature requirement grows toward the boundary") {
  CHECK(required_quad_points(kPi / 2, 0.0, 0) == 64);
  CHECK(required_quad_points(kPi / 2, 0.999, 0) > required_quad_points(kPi / 2, 0.9, 0));
  const int p = required_quad_points(kPi / 2, 0.99, 40);
  CHECK((p & (p - 1)) == 0);
}

TEST_CASE("growth exponent of synthetic and degenerate data") {
  const auto t = dyadic_t_grid(1, 12);
  std::vector<double> y;
  for (double v : t) y.push_back(5.0 * std::pow(1.0 - v, -1.5));
  CHECK(fit_power_law(t, y, {0.5, 1.0}).N_hat == doctest::Approx(1.5).epsilon(1e-9));

  const SeriesParams p{2.0, false};
  CHECK_THROWS_AS(growth_exponent(ModeVector{}, p, t, 64), FitError);
}

TEST_CASE("spherical bench growth is a clean power law") {
  const auto t = dyadic_t_grid(4, 12);
  const SeriesParams p{2.0, false};
  const auto fit = growth_exponent(ModeVector::single(0), p, t, 64);
  CHECK(fit.r_squared > 0.99);
  CHECK(std::isfinite(fit.N_hat));
}

TEST_CASE("pairing at t = 0") {
  const SeriesParams p{1.0, false};
  const auto f = boundary_pairing_value(ModeVector::single(0), ModeVector::single(0), p, 0.0, 64);
  CHECK(std::abs(f - 1.0) < 1e-14);
  const ModeVector v({{0, 1.0}, {2, cdouble(0, 1)}});
  const ModeVector w({{2, 2.0}});
  // <w, v> conjugate-linear in w: conj(2) * i.
  CHECK(std::abs(boundary_pairing_value(v, w, p, 0.0, 64) - cdouble(0, 2)) < 1e-14);
}
