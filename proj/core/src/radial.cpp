#include "steklov/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/numerics/ode.hpp"

namespace steklov {

namespace {

void check_args(const SurfaceMetric& surface, int k, double r, int n, double rtol) {
  if (k < 0) throw InvalidArgument("angular mode must be >= 0");
  if (n < 2) throw InvalidArgument("dimension n must be >= 2");
  if (n != 2 && !surface.is_warped()) {
    throw InvalidArgument("the paraboloid is only defined for n = 2");
  }
  if (!(rtol >= 1e-13 && rtol <= 1e-6)) {
    throw InvalidArgument("radial rtol must lie in [1e-13, 1e-6]");
  }
  if (!(r > 0)) throw InvalidArgument("radius must be positive");
  if (r > surface.max_radius()) {
    std::ostringstream os;
    os << "radius " << r << " beyond the " << surface.name() << " range "
       << surface.max_radius();
    throw DomainRangeError(os.str());
  }
}

struct RiccatiRun {
  numerics::Trajectory traj;
  double eps;
};

// Integrates (w, log g) from eps to r_end landing on every stop.
RiccatiRun integrate(const SurfaceMetric& surface, int k, int n, double r_end,
                     double rtol, double start_factor, std::vector<double> stops) {
  const double eps = start_factor * std::min(r_end, 1.0);
  const double kd = static_cast<double>(k);
  auto rhs = [&](double r, std::span<const double> y, std::span<double> dy) {
    // A trial stage with w <= 0 is rejected by the step controller.
    if (!(y[0] > 0)) {
      dy[0] = dy[1] = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    dy[0] = riccati_rhs(surface, k, n, r, y[0]);
    dy[1] = y[0];
  };
  numerics::OdeOptions opts;
  opts.rtol = rtol;
  opts.atol = 1e-13 * kd;
  opts.stops = std::move(stops);
  const double y0[2] = {kd / eps, kd * std::log(eps)};
  auto traj = numerics::ode_solve(rhs, eps, r_end, y0, opts);
  const double w_end = traj.final_state()[0];
  if (!(w_end > 0) || !std::isfinite(w_end)) {
    throw NumericalError("log-derivative left (0, inf)");
  }
  return {std::move(traj), eps};
}

}  // namespace

double riccati_rhs(const SurfaceMetric& surface, int k, int n, double r, double w) {
  if (n == 2) {
    const double s = surface.S(r);
    return -w * w - surface.log_dS(r) * w + static_cast<double>(k) * k / (s * s);
  }
  const auto& warp = surface.warp();
  const double h = warp.h(r);
  const double lambda = static_cast<double>(k) * (k + n - 2);
  return -w * w - (n - 1) * (warp.dh(r) / h) * w + lambda / (h * h);
}

double radial_log_derivative(const SurfaceMetric& surface, int k, double R, int n,
                             double rtol, double start_factor) {
  check_args(surface, k, R, n, rtol);
  if (k == 0) return 0.0;
  if (!(start_factor > 0 && start_factor < 1e-2)) {
    throw InvalidArgument("start_factor must lie in (0, 1e-2)");
  }
  return integrate(surface, k, n, R, rtol, start_factor, {}).traj.final_state()[0];
}

RadialProfile::RadialProfile(SurfaceMetric surface, int k, int n, std::vector<double> grid,
                             std::vector<double> log_g, std::vector<double> w)
    : surface_(std::move(surface)),
      k_(k),
      n_(n),
      grid_(std::move(grid)),
      log_g_(std::move(log_g)),
      w_(std::move(w)) {
  if (grid_.empty() || grid_.size() != log_g_.size() || grid_.size() != w_.size()) {
    throw InvalidArgument("RadialProfile: inconsistent sample arrays");
  }
}

RadialProfile::Sample RadialProfile::evaluate(double r) const {
  if (r < grid_.front() || r > grid_.back()) {
    std::ostringstream os;
    os << "radial profile evaluated at r = " << r << " outside [" << grid_.front()
       << ", " << grid_.back() << "]";
    throw DomainRangeError(os.str());
  }
  auto it = std::lower_bound(grid_.begin(), grid_.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
  if (*it == r) return {log_g_[j], w_[j]};
  const std::size_t i = j - 1;
  const double h = grid_[j] - grid_[i];
  const double s = (r - grid_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  Sample out;
  out.log_g = h00 * log_g_[i] + h10 * h * w_[i] + h01 * log_g_[j] + h11 * h * w_[j];
  if (k_ == 0) {
    out.w = 0;
  } else {
    const double dw0 = riccati_rhs(surface_, k_, n_, grid_[i], w_[i]);
    const double dw1 = riccati_rhs(surface_, k_, n_, grid_[j], w_[j]);
    out.w = h00 * w_[i] + h10 * h * dw0 + h01 * w_[j] + h11 * h * dw1;
  }
  return out;
}

std::vector<double> default_profile_grid(double r_max, int grid_size) {
  const int n_geo = grid_size / 4;
  const int n_uni = grid_size - n_geo;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_size));
  const double lo = 1e-4 * r_max, mid = 0.1 * r_max;
  const double ratio = std::pow(mid / lo, 1.0 / n_geo);
  for (int i = 0; i < n_geo; ++i) grid.push_back(lo * std::pow(ratio, i));
  for (int i = 0; i < n_uni; ++i) grid.push_back(mid + (r_max - mid) * i / (n_uni - 1));
  grid.back() = r_max;
  return grid;
}

RadialProfile radial_profile(const SurfaceMetric& surface, int k, double r_max,
                             int grid_size, double rtol,
                             std::span<const double> extra_radii, int n) {
  check_args(surface, k, r_max, n, rtol);
  if (grid_size < 64) throw InvalidArgument("radial_profile needs grid_size >= 64");
  std::vector<double> grid = default_profile_grid(r_max, grid_size);
  for (double r : extra_radii) {
    if (!(r > 0) || r > r_max) {
      throw DomainRangeError("radial_profile extra radius outside (0, r_max]");
    }
    grid.push_back(r);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const std::size_t m = grid.size();
  std::vector<double> log_g(m, 0.0), w(m, 0.0);
  if (k == 0) return RadialProfile(surface, k, n, std::move(grid), log_g, w);

  const double eps = 1e-6 * std::min(r_max, 1.0);
  if (grid.front() <= eps) {
    throw InvalidArgument("radial_profile radius too close to the pole");
  }
  auto run = integrate(surface, k, n, r_max, rtol, 1e-6, grid);
  const auto& times = run.traj.times();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < m; ++i) {
    while (times[pos] != grid[i]) ++pos;
    auto y = run.traj.state(pos);
    w[i] = y[0];
    log_g[i] = y[1];
  }
  const double top = log_g.back();
  for (double& v : log_g) v -= top;
  return RadialProfile(surface, k, n, std::move(grid), std::move(log_g), std::move(w));
}

long harmonic_multiplicity(int k, int n) {
  if (k < 0 || n < 2) throw InvalidArgument("harmonic_multiplicity needs k >= 0, n >= 2");
  // C(k+n-1, n-1) - C(k+n-3, n-1): homogeneous harmonic polynomials of degree k.
  auto binom = [](long a, long b) -> long {
    if (b < 0 || a < b) return 0;
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return binom(k + n - 1, n - 1) - binom(k + n - 3, n - 1);
}

double ball_mode_value(const SurfaceMetric& surface, int k, double R, int n, double rtol) {
  return radial_log_derivative(surface, k, R, n, rtol) / std::sqrt(surface.A(R));
}

BallSpectrum ball_spectrum(const SurfaceMetric& surface, double R, int count, int n,
                           double rtol) {
  if (count < 1) throw InvalidArgument("ball_spectrum needs count >= 1");
  check_args(surface, 0, R, n, rtol);
  BallSpectrum out{surface, R, n, {0.0}, {0}};
  for (int k = 1; static_cast<int>(out.eigenvalues.size()) < count; ++k) {
    const double sigma = ball_mode_value(surface, k, R, n, rtol);
    const long mult = harmonic_multiplicity(k, n);
    for (long j = 0; j < mult; ++j) {
      out.eigenvalues.push_back(sigma);
      out.modes.push_back(k);
    }
  }
  std::vector<std::size_t> order(out.eigenvalues.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.eigenvalues[a] < out.eigenvalues[b];
  });
  std::vector<double> values;
  std::vector<int> modes;
  for (int i = 0; i < count; ++i) {
    values.push_back(out.eigenvalues[order[i]]);
    modes.push_back(out.modes[order[i]]);
  }
  out.eigenvalues = std::move(values);
  out.modes = std::move(modes);
  return out;
}

}  // namespace steklov
