#include "steklov/dtn_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/numerics/quadrature.hpp"

namespace steklov {

HarmonicBasis HarmonicBasis::build(const SurfaceMetric& surface, int K, double r_max,
                                   std::span<const double> radii, double rtol) {
  if (K < 0) throw InvalidArgument("HarmonicBasis needs K >= 0");
  std::vector<RadialProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
    profiles.push_back(radial_profile(surface, k, r_max, 64, rtol, radii));
  }
  return HarmonicBasis(surface, r_max, std::move(profiles));
}

void HarmonicBasis::evaluate(double r, double theta, std::span<double> value,
                             std::span<double> d_r, std::span<double> d_theta) const {
  value[0] = 1.0;
  d_r[0] = 0.0;
  d_theta[0] = 0.0;
  for (int k = 1; k <= K(); ++k) {
    const auto s = profiles_[k - 1].evaluate(r);
    const double g = std::exp(s.log_g);
    const double c = std::cos(k * theta), sn = std::sin(k * theta);
    const auto ic = static_cast<std::size_t>(2 * k - 1);
    const auto is = static_cast<std::size_t>(2 * k);
    value[ic] = g * c;
    value[is] = g * sn;
    d_r[ic] = s.w * g * c;
    d_r[is] = s.w * g * sn;
    d_theta[ic] = -k * g * sn;
    d_theta[is] = k * g * c;
  }
}

int default_quad_points(int K) { return std::max(4 * K + 16, 256); }

std::vector<double> boundary_radii(const StarDomain& domain, int M) {
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(M));
  for (double theta : numerics::periodic_nodes(M)) radii.push_back(domain.R(theta));
  return radii;
}

BoundaryMatrices assemble_boundary_matrices(const SurfaceMetric& surface,
                                            const StarDomain& domain,
                                            const HarmonicBasis& basis, int M) {
  const int K = basis.K();
  if (M < 4 * K + 16) {
    std::ostringstream os;
    os << "assemble_boundary_matrices: M = " << M << " < 4K + 16 = " << 4 * K + 16;
    throw InvalidArgument(os.str());
  }
  const int n = basis.size();
  const auto thetas = numerics::periodic_nodes(M);
  Eigen::MatrixXd phi(M, n), dphi(M, n);
  Eigen::VectorXd weight(M);
  std::vector<double> val(n), dr(n), dth(n);
  for (int m = 0; m < M; ++m) {
    const BoundaryFrame f = boundary_frame(surface, domain, thetas[m]);
    if (f.R > basis.r_max()) {
      throw DomainRangeError("domain boundary lies beyond the radial profile range");
    }
    basis.evaluate(f.R, f.theta, val, dr, dth);
    for (int i = 0; i < n; ++i) {
      phi(m, i) = val[i];
      dphi(m, i) = f.n_r * dr[i] + f.n_theta * dth[i];
    }
    weight(m) = f.ds_dtheta * (2 * std::numbers::pi / M);
  }
  const Eigen::MatrixXd weighted = weight.asDiagonal() * phi;
  Eigen::MatrixXd mass = phi.transpose() * weighted;
  Eigen::MatrixXd stiff = dphi.transpose() * weighted;

  BoundaryMatrices out;
  const double norm = stiff.norm();
  out.raw_asymmetry = norm > 0 ? (stiff - stiff.transpose()).norm() / norm : 0.0;
  stiff = 0.5 * (stiff + stiff.transpose()).eval();
  mass = 0.5 * (mass + mass.transpose()).eval();
  out.stiffness = numerics::SymMatrix(stiff);
  out.mass = numerics::SymMatrix(mass);
  out.quad_points = M;
  return out;
}

DomainSpectrum solve_at_order(const SurfaceMetric& surface, const StarDomain& domain, int K,
                              int M, const SolverOptions& opts) {
  const auto radii = boundary_radii(domain, M);
  const double r_max = *std::max_element(radii.begin(), radii.end());
  const auto basis = HarmonicBasis::build(surface, K, r_max, radii, opts.rtol);
  const auto mats = assemble_boundary_matrices(surface, domain, basis, M);

  const Eigen::Index n = mats.mass.order();
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = mats.mass(i, i);
    scale(i) = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  const numerics::SymMatrix k_scaled(scale.asDiagonal() * mats.stiffness.dense() *
                                     scale.asDiagonal());
  const numerics::SymMatrix m_scaled(scale.asDiagonal() * mats.mass.dense() *
                                     scale.asDiagonal());
  auto eig = numerics::sym_geig(k_scaled, m_scaled, opts.gram_drop);

  DomainSpectrum out;
  out.eigenvalues = std::move(eig.values);
  out.K_used = K;
  out.quad_points = M;
  out.regularization_drop = eig.dropped;
  out.coefficients = scale.asDiagonal() * eig.vectors;
  return out;
}

DomainSpectrum steklov_spectrum(const SurfaceMetric& surface, const StarDomain& domain,
                                int l_max, const SolverOptions& opts) {
  if (l_max < 2) throw InvalidArgument("steklov_spectrum needs l_max >= 2");
  if (opts.K_init < 1 || opts.K_cap < opts.K_init) {
    throw InvalidArgument("steklov_spectrum needs 1 <= K_init <= K_cap");
  }
  check_domain_on_surface(surface, domain);

  const auto l = static_cast<std::size_t>(l_max);
  std::vector<double> previous;
  double last_change = std::numeric_limits<double>::infinity();
  for (int K = opts.K_init;; K = std::min(2 * K, opts.K_cap)) {
    DomainSpectrum round = solve_at_order(surface, domain, K, default_quad_points(K), opts);
    const bool enough = round.eigenvalues.size() >= l;
    if (enough && !previous.empty()) {
      bool settled = true;
      last_change = 0;
      for (std::size_t i = 0; i < l; ++i) {
        const double delta = std::abs(round.eigenvalues[i] - previous[i]);
        last_change = std::max(last_change, delta);
        if (delta >= opts.tol * (1 + std::abs(round.eigenvalues[i]))) settled = false;
      }
      round.converged = settled;
    }
    round.est_error = last_change;
    if (enough) previous.assign(round.eigenvalues.begin(), round.eigenvalues.begin() + l);
    if (round.converged || K == opts.K_cap) {
      if (round.eigenvalues.size() > l) round.eigenvalues.resize(l);
      if (round.coefficients.cols() > l_max) {
        round.coefficients.conservativeResize(Eigen::NoChange, l_max);
      }
      return round;
    }
  }
}

std::vector<int> eigenvalue_clusters(const std::vector<double>& values, double rel_gap) {
  std::vector<int> sizes;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool joins = i > 0 && std::abs(values[i] - values[i - 1]) <=
                                    rel_gap * std::max(1.0, std::abs(values[i]));
    if (joins) {
      ++sizes.back();
    } else {
      sizes.push_back(1);
    }
  }
  return sizes;
}

}  // namespace steklov
