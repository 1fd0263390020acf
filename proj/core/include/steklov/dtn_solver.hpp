#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/numerics/sym_matrix.hpp"
#include "steklov/radial.hpp"

namespace steklov {

struct SolverOptions {
  int K_init = 16;
  int K_cap = 512;
  double tol = 1e-8;
  double gram_drop = 1e-12;
  double rtol = 1e-11;  // radial integration tolerance
};

// Separated harmonic functions phi_0 = 1, phi_{2k-1} = g_k(r) cos(k theta),
// phi_{2k} = g_k(r) sin(k theta), k = 1..K.
class HarmonicBasis {
 public:
  // Profiles on [.., r_max]; `radii` are radii the basis will be evaluated at
  // exactly (typically the boundary quadrature radii).
  static HarmonicBasis build(const SurfaceMetric& surface, int K, double r_max,
                             std::span<const double> radii, double rtol = 1e-11);

  int K() const { return static_cast<int>(profiles_.size()); }
  int size() const { return 2 * K() + 1; }
  const SurfaceMetric& surface() const { return surface_; }
  double r_max() const { return r_max_; }
  const std::vector<RadialProfile>& profiles() const { return profiles_; }

  // Values and coordinate derivatives of all 2K+1 functions at (r, theta).
  void evaluate(double r, double theta, std::span<double> value, std::span<double> d_r,
                std::span<double> d_theta) const;

 private:
  HarmonicBasis(SurfaceMetric surface, double r_max, std::vector<RadialProfile> profiles)
      : surface_(std::move(surface)), r_max_(r_max), profiles_(std::move(profiles)) {}

  SurfaceMetric surface_;
  double r_max_;
  std::vector<RadialProfile> profiles_;
};

struct BoundaryMatrices {
  numerics::SymMatrix stiffness;  // int d_nu phi_i phi_j ds, symmetrised
  numerics::SymMatrix mass;       // int phi_i phi_j ds
  // ||K - K^T||_F / ||K||_F of the raw stiffness before symmetrisation.
  double raw_asymmetry = 0;
  int quad_points = 0;
};

// max(4K + 16, 256) uniform boundary nodes.
int default_quad_points(int K);

// Boundary Gram and Dirichlet-energy matrices by the trapezoidal rule on M
// uniform nodes. Requires M >= 4K + 16.
BoundaryMatrices assemble_boundary_matrices(const SurfaceMetric& surface,
                                            const StarDomain& domain,
                                            const HarmonicBasis& basis, int M);

// Radii R(theta_m) of the M uniform boundary nodes.
std::vector<double> boundary_radii(const StarDomain& domain, int M);

struct DomainSpectrum {
  std::vector<double> eigenvalues;  // first l_max, ascending
  int K_used = 0;
  int quad_points = 0;
  int regularization_drop = 0;
  bool converged = false;
  double est_error = 0;
  // Basis coefficients of each returned eigenfunction (columns).
  Eigen::MatrixXd coefficients;
};

// Galerkin pencil at a fixed order K with M quadrature nodes; eigenvalues are
// all retained Ritz values. Gram matrices are Jacobi-scaled before the
// generalized solve.
DomainSpectrum solve_at_order(const SurfaceMetric& surface, const StarDomain& domain, int K,
                              int M, const SolverOptions& opts = {});

// Doubles K from K_init until the first l_max eigenvalues move by less than
// tol * (1 + |mu|) between rounds, or K_cap is reached (converged = false).
DomainSpectrum steklov_spectrum(const SurfaceMetric& surface, const StarDomain& domain,
                                int l_max, const SolverOptions& opts = {});

// Sizes of clusters of eigenvalues whose relative gap is below rel_gap.
std::vector<int> eigenvalue_clusters(const std::vector<double>& values,
                                     double rel_gap = 1e-6);

}  // namespace steklov
