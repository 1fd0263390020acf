#include "steklov/numerics/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <numbers>

#include "steklov/errors.hpp"

namespace steklov::numerics {

double periodic_quadrature(std::span<const double> samples) {
  if (samples.size() < 8) {
    throw InvalidArgument("periodic_quadrature needs at least 8 nodes");
  }
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum * (2 * std::numbers::pi / static_cast<double>(samples.size()));
}

std::vector<double> periodic_nodes(int m) {
  std::vector<double> nodes(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) nodes[i] = 2 * std::numbers::pi * i / m;
  return nodes;
}

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_legendre needs n >= 1");
  // Non-negative zeros of P_n, ascending.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x, w;
  x.reserve(n);
  w.reserve(n);
  auto weight = [n](double z) {
    const double dp = boost::math::legendre_p_prime(n, z);
    return 2.0 / ((1 - z * z) * dp * dp);
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    x.push_back(-*it);
    w.push_back(weight(*it));
  }
  for (double z : zeros) {
    if (z == 0.0 && n % 2 == 0) continue;
    x.push_back(z);
    w.push_back(weight(z));
  }
  GaussRule rule;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back(mid + half * x[i]);
    rule.weights.push_back(half * w[i]);
  }
  return rule;
}

double quad2d_polar(const std::function<double(double, double)>& integrand,
                    double rho_max, int n_r, int n_theta) {
  if (n_r < 64 || n_theta < 64) {
    throw InvalidArgument("quad2d_polar needs n_r >= 64 and n_theta >= 64");
  }
  if (!(rho_max > 0)) throw InvalidArgument("quad2d_polar needs rho_max > 0");
  const GaussRule rule = gauss_legendre(n_r, 0.0, rho_max);
  const std::vector<double> phis = periodic_nodes(n_theta);
  double total = 0.0;
  for (double phi : phis) {
    double line = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      line += rule.weights[i] * integrand(rule.nodes[i], phi);
    }
    total += line;
  }
  return total * (2 * std::numbers::pi / n_theta);
}

}  // namespace steklov::numerics
