#pragma once

#include <span>
#include <vector>

#include "steklov/geometry.hpp"

namespace steklov {

// Right-hand side of the Riccati equation for w = g'/g of the separated
// harmonic r-profile g of angular mode k:
//   n = 2:          w' = -w^2 - (S'/S) w + k^2 / S^2
//   warped, n >= 3: w' = -w^2 - (n-1)(h'/h) w + k(k+n-2) / h^2
double riccati_rhs(const SurfaceMetric& surface, int k, int n, double r, double w);

// w_k(R) = g_k'(R)/g_k(R), integrated from r = start_factor * min(R, 1) with
// w = k / r there. k = 0 returns 0. Throws NumericalError on integrator
// failure or if w leaves (0, inf), DomainRangeError if R is beyond the surface.
double radial_log_derivative(const SurfaceMetric& surface, int k, double R, int n = 2,
                             double rtol = 1e-11, double start_factor = 1e-6);

// Sampled log g_k and w_k on an increasing grid in (0, r_max], normalised so
// log_g(r_max) = 0.
class RadialProfile {
 public:
  RadialProfile(SurfaceMetric surface, int k, int n, std::vector<double> grid,
                std::vector<double> log_g, std::vector<double> w);

  int k() const { return k_; }
  int n() const { return n_; }
  const SurfaceMetric& surface() const { return surface_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& log_g() const { return log_g_; }
  const std::vector<double>& w() const { return w_; }
  double r_max() const { return grid_.back(); }

  struct Sample {
    double log_g;
    double w;
  };
  // Exact at grid points; cubic Hermite between them, using w as the slope of
  // log_g and the Riccati right-hand side as the slope of w.
  Sample evaluate(double r) const;

 private:
  SurfaceMetric surface_;
  int k_;
  int n_;
  std::vector<double> grid_;
  std::vector<double> log_g_;
  std::vector<double> w_;
};

// Geometric spacing on [1e-4, 0.1] * r_max, uniform on [0.1, 1] * r_max.
std::vector<double> default_profile_grid(double r_max, int grid_size);

// Profile on the default grid merged with extra_radii (each in (0, r_max]).
// Requires grid_size >= 64.
RadialProfile radial_profile(const SurfaceMetric& surface, int k, double r_max,
                             int grid_size = 512, double rtol = 1e-11,
                             std::span<const double> extra_radii = {}, int n = 2);

// Dimension of degree-k spherical harmonics on S^{n-1}.
long harmonic_multiplicity(int k, int n);

struct BallSpectrum {
  SurfaceMetric surface;
  double R = 0;
  int n = 2;
  std::vector<double> eigenvalues;  // ascending, multiplicities expanded
  std::vector<int> modes;           // angular mode of each entry
};

// Steklov value of angular mode k on the coordinate ball r < R:
// w_k(R) / sqrt(A(R)).
double ball_mode_value(const SurfaceMetric& surface, int k, double R, int n = 2,
                       double rtol = 1e-11);

// First `count` Steklov eigenvalues of the coordinate ball r < R.
BallSpectrum ball_spectrum(const SurfaceMetric& surface, double R, int count, int n = 2,
                           double rtol = 1e-11);

}  // namespace steklov
