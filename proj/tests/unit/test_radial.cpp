#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "steklov/errors.hpp"
#include "steklov/radial.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

// max |w' - rhs(w)| of the candidate w(r) = k / sin r on a grid of (0, r_max].
double sphere_closed_form_residual(int k, double r_max) {
  const auto s = SurfaceMetric::sphere();
  double worst = 0;
  for (int i = 1; i <= 400; ++i) {
    const double r = r_max * i / 400;
    const double w = k / std::sin(r);
    const double dw = -k * std::cos(r) / (std::sin(r) * std::sin(r));
    worst = std::max(worst, std::abs(dw - riccati_rhs(s, k, 2, r, w)) / (1 + std::abs(dw)));
  }
  return worst;
}

}  // namespace

TEST_CASE("closed form log-derivatives") {
  CHECK(std::abs(radial_log_derivative(SurfaceMetric::plane(), 2, 1.5) - 2 / 1.5) < 1e-10);

  REQUIRE(sphere_closed_form_residual(1, kPi / 4) < 1e-12);
  CHECK(std::abs(radial_log_derivative(SurfaceMetric::sphere(), 1, kPi / 4) - std::sqrt(2.0)) <
        1e-9);

  CHECK(radial_log_derivative(SurfaceMetric::plane(), 0, 1.0) == 0.0);
}

TEST_CASE("closed form residuals over modes and radii") {
  for (int k = 1; k <= 16; ++k) {
    REQUIRE(sphere_closed_form_residual(k, 1.4) < 1e-12);
    for (double R : {0.3, 0.7, 1.2, 1.4}) {
      CAPTURE(k);
      CAPTURE(R);
      CHECK(std::abs(radial_log_derivative(SurfaceMetric::plane(), k, R, 2, 1e-13) - k / R) <
            1e-10);
      CHECK(std::abs(radial_log_derivative(SurfaceMetric::sphere(), k, R, 2, 1e-13) -
                     k / std::sin(R)) < 1e-9);
    }
  }
}

TEST_CASE("paraboloid coordinate ball") {
  // The substitution g = exp(k int dr / S) solves the radial equation, so
  // w = k sqrt(A) / r and sigma_k = k / R exactly.
  const auto p = SurfaceMetric::paraboloid();
  const double R = 0.05;
  const double ref = radial_log_derivative(p, 1, R, 2, 1e-13);
  CHECK(std::abs(ref / std::sqrt(1 + 4 * R * R) * R - 1) < 1e-2);
  for (int k : {1, 3, 7}) {
    for (double r : {0.05, 0.5, 1.0, 2.0}) {
      CHECK(ball_mode_value(p, k, r, 2, 1e-12) == doctest::Approx(k / r).epsilon(1e-9));
    }
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(radial_log_derivative(SurfaceMetric::sphere(), 1, 3.5), DomainRangeError);
  CHECK_THROWS_AS(radial_log_derivative(SurfaceMetric::plane(), 1, -1.0), InvalidArgument);
  CHECK_THROWS_AS(radial_log_derivative(SurfaceMetric::plane(), 1, 1.0, 2, 1e-2), InvalidArgument);
  CHECK_THROWS_AS(radial_log_derivative(SurfaceMetric::paraboloid(), 1, 1.0, 3), InvalidArgument);
  CHECK_THROWS_AS(radial_profile(SurfaceMetric::plane(), 1, 1.0, 32), InvalidArgument);
  CHECK_THROWS_AS(ball_spectrum(SurfaceMetric::plane(), 1.0, 0), InvalidArgument);
}

TEST_CASE("start radius halving") {
  const double rtol = 1e-11;
  for (const auto& s : {SurfaceMetric::plane(), SurfaceMetric::sphere(), SurfaceMetric::tanh(),
                        SurfaceMetric::paraboloid()}) {
    for (int k : {1, 4, 12}) {
      for (double R : {0.4, 1.1}) {
        const double w1 = radial_log_derivative(s, k, R, 2, rtol, 1e-6);
        const double w2 = radial_log_derivative(s, k, R, 2, rtol, 5e-7);
        CAPTURE(s.name());
        CAPTURE(k);
        CHECK(std::abs(w1 - w2) < 10 * rtol * std::abs(w1));
      }
    }
  }
}

TEST_CASE("tanh ball against an independent linear integration") {
  const oracle::Fn h = [](double r) { return std::tanh(r); };
  for (int k : {1, 2, 5}) {
    for (double R : {0.5, 1.0, 2.0}) {
      const double ref = oracle::warped_ball_log_derivative(h, k, R);
      CHECK(ball_mode_value(SurfaceMetric::tanh(), k, R) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("profile closed forms") {
  const auto plane = radial_profile(SurfaceMetric::plane(), 3, 1.0);
  CHECK(plane.evaluate(0.5).log_g == doctest::Approx(3 * std::log(0.5)).epsilon(1e-9));
  for (std::size_t i = 0; i < plane.grid().size(); i += 17) {
    const double r = plane.grid()[i];
    CHECK(std::abs(plane.log_g()[i] - 3 * std::log(r)) < 1e-8 * (1 + std::abs(3 * std::log(r))));
  }

  REQUIRE(sphere_closed_form_residual(2, 1.0) < 1e-12);
  const auto sphere = radial_profile(SurfaceMetric::sphere(), 2, 1.0);
  for (double r : {0.01, 0.2, 0.5, 0.77, 1.0}) {
    const double ref = 2 * std::log(std::tan(r / 2)) - 2 * std::log(std::tan(0.5));
    const auto s = sphere.evaluate(r);
    // Off-grid values come from the cubic Hermite interpolant.
    CHECK(s.log_g == doctest::Approx(ref).epsilon(1e-6));
    CHECK(s.w == doctest::Approx(2 / std::sin(r)).epsilon(1e-6));
  }
  for (std::size_t i = 0; i + 1 < sphere.grid().size(); i += 13) {
    const double r = sphere.grid()[i];
    const double ref = 2 * std::log(std::tan(r / 2)) - 2 * std::log(std::tan(0.5));
    CHECK(sphere.log_g()[i] == doctest::Approx(ref).epsilon(1e-9));
    CHECK(sphere.w()[i] == doctest::Approx(2 / std::sin(r)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sphere.evaluate(1.5), DomainRangeError);
}

TEST_CASE("profile invariants") {
  for (const auto& s : {SurfaceMetric::plane(), SurfaceMetric::sphere(), SurfaceMetric::tanh(),
                        SurfaceMetric::paraboloid()}) {
    for (int k : {0, 1, 5}) {
      const std::vector<double> extra = {0.333, 0.9};
      const auto p = radial_profile(s, k, 1.0, 256, 1e-11, extra);
      CAPTURE(s.name());
      CAPTURE(k);
      CHECK(p.log_g().back() == 0.0);
      CHECK(p.grid().back() == 1.0);
      for (double x : extra) CHECK(std::find(p.grid().begin(), p.grid().end(), x) != p.grid().end());
      for (std::size_t i = 0; i < p.grid().size(); ++i) {
        if (k == 0) {
          CHECK(p.w()[i] == 0.0);
          continue;
        }
        CHECK(p.w()[i] > 0);
        if (i > 0) {
          CHECK(p.grid()[i] > p.grid()[i - 1]);
          CHECK(p.log_g()[i] > p.log_g()[i - 1]);
        }
      }
      if (k > 0) CHECK(std::abs(p.grid()[0] * p.w()[0] - k) < 1e-4);
    }
  }
}

TEST_CASE("ball spectra") {
  const auto disc = ball_spectrum(SurfaceMetric::plane(), 1.0, 7);
  const std::vector<double> disc_ref = {0, 1, 1, 2, 2, 3, 3};
  REQUIRE(disc.eigenvalues.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(std::abs(disc.eigenvalues[i] - disc_ref[i]) < 1e-10);
  CHECK(disc.modes == std::vector<int>{0, 1, 1, 2, 2, 3, 3});

  REQUIRE(sphere_closed_form_residual(2, kPi / 3) < 1e-12);
  const auto cap = ball_spectrum(SurfaceMetric::sphere(), kPi / 3, 5);
  const double c = 2 / std::sqrt(3.0);
  const std::vector<double> cap_ref = {0, c, c, 2 * c, 2 * c};
  for (int i = 0; i < 5; ++i) CHECK(cap.eigenvalues[i] == doctest::Approx(cap_ref[i]).epsilon(1e-9));

  const auto ball3 = ball_spectrum(SurfaceMetric::plane(), 1.0, 6, 3);
  const std::vector<double> ball3_ref = {0, 1, 1, 1, 2, 2};
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ball3.eigenvalues[i] - ball3_ref[i]) < 1e-9);
  CHECK(ball3.n == 3);
}

TEST_CASE("ball spectrum multiplicities") {
  CHECK(harmonic_multiplicity(0, 2) == 1);
  CHECK(harmonic_multiplicity(5, 2) == 2);
  for (int k = 0; k <= 8; ++k) CHECK(harmonic_multiplicity(k, 3) == 2 * k + 1);
  CHECK(harmonic_multiplicity(2, 4) == 9);
  CHECK(harmonic_multiplicity(3, 5) == 30);

  for (int n : {2, 3, 4}) {
    const auto b = ball_spectrum(SurfaceMetric::sphere(), 0.9, 40, n);
    REQUIRE(b.eigenvalues.size() == 40);
    CHECK(b.eigenvalues[0] == 0.0);
    CHECK(b.modes[0] == 0);
    std::vector<long> counts(64, 0);
    for (int m : b.modes) ++counts[m];
    const int last = b.modes.back();
    for (int k = 0; k < last; ++k) CHECK(counts[k] == harmonic_multiplicity(k, n));
    CHECK(counts[last] <= harmonic_multiplicity(last, n));
    CHECK(std::is_sorted(b.eigenvalues.begin(), b.eigenvalues.end()));
  }
}

TEST_CASE("mode values increase and scale") {
  for (const auto& s : {SurfaceMetric::plane(), SurfaceMetric::sphere(), SurfaceMetric::tanh(),
                        SurfaceMetric::paraboloid()}) {
    double prev = 0;
    for (int k = 1; k <= 32; ++k) {
      const double v = ball_mode_value(s, k, 0.8);
      CHECK(v > prev);
      prev = v;
    }
  }
  for (int k : {1, 3, 9}) {
    const double one = ball_mode_value(SurfaceMetric::plane(), k, 1.0, 2, 1e-13);
    for (double R : {0.25, 3.0, 40.0}) {
      CHECK(std::abs(ball_mode_value(SurfaceMetric::plane(), k, R, 2, 1e-13) * R - one) <
            1e-10 * one);
    }
  }
}
