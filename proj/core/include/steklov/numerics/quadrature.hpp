#pragma once

#include <functional>
#include <span>
#include <vector>

namespace steklov::numerics {

// Trapezoidal rule on M uniform nodes theta_m = 2*pi*m/M. Exact for
// trigonometric polynomials of degree < M/2. Requires M >= 8.
double periodic_quadrature(std::span<const double> samples);

// Uniform periodic nodes 2*pi*m/M, m = 0..M-1.
std::vector<double> periodic_nodes(int m);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

// Integral of integrand(rho, phi) over [0, rho_max] x [0, 2*pi): Gauss-Legendre
// in rho times the trapezoidal rule in phi. The integrand carries its own
// Jacobian. Requires n_r >= 64 and n_theta >= 64.
double quad2d_polar(const std::function<double(double, double)>& integrand,
                    double rho_max, int n_r, int n_theta);

}  // namespace steklov::numerics
