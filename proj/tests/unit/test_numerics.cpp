#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "steklov/errors.hpp"
#include "steklov/numerics/ode.hpp"
#include "steklov/numerics/quadrature.hpp"
#include "steklov/numerics/sym_matrix.hpp"

using namespace steklov;
using namespace steklov::numerics;

namespace {

constexpr double kPi = std::numbers::pi;

OdeRhs growth(double rate) {
  return [rate](double, std::span<const double> y, std::span<double> f) { f[0] = rate * y[0]; };
}

// Plane Riccati equation for k = 1: w' = -w^2 - w/r + 1/r^2, exact w = 1/r.
void plane_riccati(double r, std::span<const double> y, std::span<double> f) {
  f[0] = -y[0] * y[0] - y[0] / r + 1 / (r * r);
}

double solve_final(const OdeRhs& rhs, double t0, double t1, double y0, double rtol) {
  OdeOptions o;
  o.rtol = rtol;
  o.atol = 1e-2 * rtol;
  const double init[1] = {y0};
  return ode_solve(rhs, t0, t1, init, o).final_state()[0];
}

}  // namespace

TEST_CASE("ode_solve reproduces closed-form solutions") {
  for (double rtol : {1e-6, 1e-9, 1e-11}) {
    CAPTURE(rtol);
    const double e = std::exp(1.0);
    CHECK(std::abs(solve_final(growth(1), 0, 1, 1, rtol) - e) <= 10 * rtol * e);
    const double decay = 3 * std::exp(-4.0);
    CHECK(std::abs(solve_final(growth(-2), 0, 2, 3, rtol) - decay) <= 50 * rtol * decay);
    CHECK(std::abs(solve_final(plane_riccati, 1e-6, 1, 1e6, rtol) - 1) <= 10 * rtol);
  }
}

TEST_CASE("ode_solve error is proportional to rtol") {
  const std::array<OdeRhs, 3> problems = {growth(1), growth(-2), plane_riccati};
  const std::array<double, 3> t0 = {0, 0, 1e-6}, t1 = {1, 2, 1}, y0 = {1, 3, 1e6};
  const std::array<double, 3> exact = {std::exp(1.0), 3 * std::exp(-4.0), 1.0};
  for (std::size_t p = 0; p < problems.size(); ++p) {
    CAPTURE(p);
    double first = 0, previous = 0;
    for (double rtol : {1e-5, 1e-6, 1e-7, 1e-8}) {
      const double err = std::abs(solve_final(problems[p], t0[p], t1[p], y0[p], rtol) - exact[p]);
      CHECK(err <= 50 * rtol * std::abs(exact[p]));
      // Tolerance proportionality: each decade of rtol gains at least 3x,
      // three decades at least 100x.
      if (previous > 0) CHECK(previous / err >= 3);
      if (first == 0) first = err;
      previous = err;
    }
    if (previous > 0) CHECK(first / previous >= 100);
  }
}

TEST_CASE("ode_solve lands on stops and interpolates between steps") {
  OdeOptions o;
  o.rtol = 1e-10;
  o.atol = 1e-12;
  o.stops = {0.125, 0.5, 0.75};
  const double y0[1] = {1};
  const auto traj = ode_solve(growth(1), 0, 1, y0, o);
  for (double s : o.stops) {
    const auto& t = traj.times();
    CHECK(std::find(t.begin(), t.end(), s) != t.end());
  }
  CHECK(traj.times().back() == 1.0);
  for (double t : {0.01, 0.3, 0.6180339887, 0.99}) {
    CHECK(traj.evaluate(t)[0] == doctest::Approx(std::exp(t)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(traj.evaluate(1.5), DomainRangeError);
  CHECK(traj.accepted_steps + 1 == traj.size());
}

TEST_CASE("ode_solve rejects bad input and breakdown") {
  const double y0[1] = {1};
  OdeOptions o;
  o.rtol = 1e-14;
  CHECK_THROWS_AS(ode_solve(growth(1), 0, 1, y0, o), InvalidArgument);
  o.rtol = 1e-2;
  CHECK_THROWS_AS(ode_solve(growth(1), 0, 1, y0, o), InvalidArgument);
  CHECK_THROWS_AS(ode_solve(growth(1), 1, 1, y0, OdeOptions{}), InvalidArgument);

  // y' = y^2 blows up at t = 1.
  auto blowup = [](double, std::span<const double> y, std::span<double> f) { f[0] = y[0] * y[0]; };
  CHECK_THROWS_AS(ode_solve(blowup, 0, 2, y0, OdeOptions{}), NumericalError);

  auto nan_rhs = [](double, std::span<const double>, std::span<double> f) {
    f[0] = std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_AS(ode_solve(nan_rhs, 0, 1, y0, OdeOptions{}), NumericalError);

  OdeOptions few;
  few.max_steps = 3;
  few.rtol = 1e-12;
  CHECK_THROWS_AS(ode_solve(growth(30), 0, 1, y0, few), NumericalError);
}

TEST_CASE("ode_solve retries steps whose stages leave the domain of the equation") {
  // sqrt(y) is undefined for y < 0; the solution y = (1 - t/2)^2 touches 0 at t = 2.
  auto rhs = [](double, std::span<const double> y, std::span<double> f) {
    f[0] = y[0] >= 0 ? -std::sqrt(y[0]) : std::numeric_limits<double>::quiet_NaN();
  };
  const double y0[1] = {1};
  OdeOptions o;
  o.rtol = 1e-8;
  o.atol = 1e-12;
  o.h_init = 1.9;
  const auto traj = ode_solve(rhs, 0, 1.5, y0, o);
  CHECK(traj.final_state()[0] == doctest::Approx(0.0625).epsilon(1e-6));
  CHECK(traj.rejected_steps >= 1);
}

TEST_CASE("periodic_quadrature") {
  auto sample = [](int m, auto f) {
    std::vector<double> v;
    for (double t : periodic_nodes(m)) v.push_back(f(t));
    return v;
  };
  CHECK(periodic_quadrature(sample(16, [](double) { return 1.0; })) ==
        doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(periodic_quadrature(sample(16, [](double t) { return std::cos(t) * std::cos(t); })) ==
        doctest::Approx(kPi).epsilon(1e-15));

  // Reference by a plain 4096-node sum, cross-checked against 2 pi I_0(1).
  double reference = 0;
  for (int m = 0; m < 4096; ++m) reference += std::exp(std::cos(2 * kPi * m / 4096));
  reference *= 2 * kPi / 4096;
  CHECK(reference == doctest::Approx(2 * kPi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
  CHECK(periodic_quadrature(sample(64, [](double t) { return std::exp(std::cos(t)); })) ==
        doctest::Approx(reference).epsilon(1e-14));

  CHECK_THROWS_AS(periodic_quadrature(std::vector<double>(7, 1.0)), InvalidArgument);
}

TEST_CASE("periodic_quadrature is exact for trigonometric polynomials below the aliasing limit") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 40);
    const int m = 2 * d + 1 + static_cast<int>(rng() % 16);
    std::vector<double> a(d + 1), b(d + 1);
    for (int k = 0; k <= d; ++k) {
      a[k] = coef(rng);
      b[k] = coef(rng);
    }
    std::vector<double> v;
    double max_abs = 0;
    for (double t : periodic_nodes(m)) {
      double s = 0;
      for (int k = 0; k <= d; ++k) s += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
      v.push_back(s);
      max_abs = std::max(max_abs, std::abs(s));
    }
    CAPTURE(d);
    CAPTURE(m);
    CHECK(std::abs(periodic_quadrature(v) - 2 * kPi * a[0]) < 1e-13 * m * max_abs);
  }
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto rule = gauss_legendre(n, -0.5, 2.0);
    for (int p = 0; p <= 2 * n - 1; p += std::max(1, n / 4)) {
      double s = 0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = (std::pow(2.0, p + 1) - std::pow(-0.5, p + 1)) / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0, 0, 1), InvalidArgument);
}

TEST_CASE("quad2d_polar") {
  CHECK(quad2d_polar([](double rho, double) { return rho; }, 1.0, 64, 64) ==
        doctest::Approx(kPi).epsilon(1e-14));
  CHECK(quad2d_polar([](double rho, double phi) { return std::pow(rho, 3) * std::cos(phi) * std::cos(phi); },
                     1.0, 64, 64) == doctest::Approx(kPi / 4).epsilon(1e-14));

  // Area of r < 1 + 0.2 cos 2 theta through the rho = r R_m / R(theta) map.
  const double R_m = 0.8;
  auto area_density = [&](double rho, double phi) {
    const double R = 1 + 0.2 * std::cos(2 * phi);
    return rho * (R / R_m) * (R / R_m);
  };
  const double coarse = quad2d_polar(area_density, R_m, 64, 64);
  const double refined = quad2d_polar(area_density, R_m, 256, 256);
  CHECK(coarse == doctest::Approx(refined).epsilon(1e-13));
  CHECK(refined == doctest::Approx(kPi * 1.02).epsilon(1e-13));

  CHECK_THROWS_AS(quad2d_polar(area_density, R_m, 63, 64), InvalidArgument);
  CHECK_THROWS_AS(quad2d_polar(area_density, R_m, 64, 32), InvalidArgument);
}

TEST_CASE("SymMatrix reads the upper triangle only") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 99, 3;
  const SymMatrix s(a);
  CHECK(s(1, 0) == 2);
  CHECK(s(0, 1) == 2);
  CHECK(s.order() == 2);
  CHECK_THROWS_AS(SymMatrix(Eigen::MatrixXd(2, 3)), InvalidArgument);
  a(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(SymMatrix{a}, NumericalError);
}

TEST_CASE("sym_geig examples") {
  const auto eye3 = SymMatrix::diagonal({1, 1, 1});
  auto r = sym_geig(SymMatrix::diagonal({0, 1, 2}), eye3, 0.0);
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == doctest::Approx(0).epsilon(1e-15));
  CHECK(r.values[1] == doctest::Approx(1));
  CHECK(r.values[2] == doctest::Approx(2));

  Eigen::MatrixXd k(2, 2);
  k << 2, 1, 1, 2;
  r = sym_geig(SymMatrix(k), SymMatrix::diagonal({1, 1}), 0.0);
  CHECK(r.values[0] == doctest::Approx(1));
  CHECK(r.values[1] == doctest::Approx(3));

  r = sym_geig(SymMatrix::diagonal({1, 1}), SymMatrix::diagonal({1, 1e-16}), 1e-12);
  REQUIRE(r.values.size() == 1);
  CHECK(r.values[0] == doctest::Approx(1));
  CHECK(r.dropped == 1);

  CHECK_THROWS_AS(sym_geig(eye3, SymMatrix::diagonal({1, -1e-3, 1}), 0.0), NumericalError);
  CHECK_THROWS_AS(sym_geig(eye3, SymMatrix::diagonal({1, 1}), 0.0), InvalidArgument);
}

TEST_CASE("sym_geig residuals and determinism on random pencils") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int n : {3, 17, 60}) {
    Eigen::MatrixXd b(n, n), c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        b(i, j) = g(rng);
        c(i, j) = g(rng);
      }
    const Eigen::MatrixXd m = b * b.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd k = c + c.transpose();
    const SymMatrix ks(k), ms(m);
    const auto r = sym_geig(ks, ms, 1e-12);
    const auto again = sym_geig(ks, ms, 1e-12);
    CHECK(r.values == again.values);
    CHECK(std::is_sorted(r.values.begin(), r.values.end()));
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const Eigen::VectorXd v = r.vectors.col(static_cast<Eigen::Index>(i));
      const double mu = r.values[i];
      const double res = (k * v - mu * m * v).norm();
      CHECK(res < 1e-10 * (k.norm() + std::abs(mu) * m.norm()));
      CHECK(v.dot(m * v) == doctest::Approx(1).epsilon(1e-10));
    }
  }
}
