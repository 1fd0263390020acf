#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace steklov {

enum class WarpKind { Plane, Sphere, Tanh, TabulatedSpline };

std::string_view to_string(WarpKind kind);

// Warp h(r) of a rotationally symmetric metric dr^2 + h(r)^2 dtheta^2.
// Builtins: h = r, sin r, tanh r. Tabulated warps use the C2 cubic spline
// through the knots, clamped to h'(0) = 1.
class WarpFunction {
 public:
  static WarpFunction plane(double domain_max = 1e3);
  static WarpFunction sphere(double domain_max = 3.141592653589793);
  static WarpFunction tanh(double domain_max = 20.0);
  // knots must start at 0 with value 0, be strictly increasing and number at
  // least four. domain_max is the last knot.
  static WarpFunction spline(std::vector<double> knots, std::vector<double> values);

  WarpKind kind() const { return kind_; }
  double domain_max() const { return domain_max_; }

  double h(double r) const;
  double dh(double r) const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const WarpFunction& other) const;

 private:
  struct Spline;

  WarpFunction(WarpKind kind, double domain_max);

  WarpKind kind_;
  double domain_max_;
  std::vector<double> knots_;
  std::vector<double> values_;
  std::shared_ptr<const Spline> spline_;
};

struct WarpValidation {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

// Samples h(0) = 0, h'(0) = 1, monotone h, non-increasing h(r)/r and the
// scaling inequalities h(ar) >= a h(r) (a < 1), h(ar) <= a h(r) (a > 1) on a
// uniform grid of `samples` points in [0, r_max]. Throws DomainRangeError when
// r_max exceeds the warp's domain and InvalidArgument when samples < 64.
WarpValidation validate_warp(const WarpFunction& warp, double r_max, int samples = 512);

struct Paraboloid {
  bool operator==(const Paraboloid&) const = default;
};

// Metric A(r) dr^2 + B(r) dtheta^2 on a rotationally symmetric surface.
// Warped: A = 1, B = h^2. Paraboloid z = x^2 + y^2: A = 1 + 4 r^2, B = r^2.
class SurfaceMetric {
 public:
  explicit SurfaceMetric(WarpFunction warp) : variant_(std::move(warp)) {}
  explicit SurfaceMetric(Paraboloid p) : variant_(p) {}

  static SurfaceMetric plane() { return SurfaceMetric(WarpFunction::plane()); }
  static SurfaceMetric sphere() { return SurfaceMetric(WarpFunction::sphere()); }
  static SurfaceMetric tanh() { return SurfaceMetric(WarpFunction::tanh()); }
  static SurfaceMetric paraboloid() { return SurfaceMetric(Paraboloid{}); }

  bool is_warped() const { return std::holds_alternative<WarpFunction>(variant_); }
  bool is_paraboloid() const { return !is_warped(); }
  // Throws InvalidArgument for the paraboloid.
  const WarpFunction& warp() const;

  // "plane", "sphere", "tanh", "spline" or "paraboloid".
  std::string name() const;

  double A(double r) const;
  double B(double r) const;
  double dA(double r) const;
  double dB(double r) const;
  // S = sqrt(B / A); the radial equation is (S g')' = k^2 g / S.
  double S(double r) const;
  double dS(double r) const;
  // S'/S, evaluated without forming S'.
  double log_dS(double r) const;

  // Largest radius at which the metric is defined.
  double max_radius() const;

  bool operator==(const SurfaceMetric& other) const { return variant_ == other.variant_; }

 private:
  std::variant<WarpFunction, Paraboloid> variant_;
};

// Star-shaped domain about the pole, boundary r = R(theta) with
// R(theta) = c_0 + sum_k c_k cos(k theta) + s_k sin(k theta).
class StarDomain {
 public:
  // cos_coeffs = c_0..c_K, sin_coeffs = s_1..s_K' (may be shorter or empty).
  // Throws InvalidArgument unless R > 0 on a grid of at least 1024 points.
  StarDomain(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static StarDomain constant(double radius);

  const std::vector<double>& fourier_cos() const { return cos_; }
  const std::vector<double>& fourier_sin() const { return sin_; }
  int max_mode() const;

  double R(double theta) const;
  double dR(double theta) const;

  // Boundary of R(theta - phase).
  StarDomain rotated(double phase) const;
  StarDomain scaled(double factor) const;

  bool operator==(const StarDomain&) const = default;

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// Local geometry of the boundary curve r = R(theta).
struct BoundaryFrame {
  double theta = 0;
  double R = 0;
  double Rp = 0;
  double ds_dtheta = 0;  // sqrt(A R'^2 + B)
  double cos_angle = 1;  // cosine of the angle between nu and d/dr
  double tan2_angle = 0; // A R'^2 / B
  // Outward unit normal: d_nu f = n_r f_r + n_theta f_theta.
  double n_r = 1;
  double n_theta = 0;
};

BoundaryFrame boundary_frame(const SurfaceMetric& surface, const StarDomain& domain,
                             double theta);

struct DomainConstants {
  double R_m = 0;
  double R_M = 0;
  double a = 0;      // max tan^2 of the boundary angle
  double alpha = 0;  // arctan(sqrt(a))
};

// Extremes of R and of tan2_angle over a uniform grid, refined around each
// grid extremum by Brent's method. Requires grid >= 1024.
DomainConstants domain_constants(const SurfaceMetric& surface, const StarDomain& domain,
                                 int grid = 4096);

// Throws DomainRangeError if the domain reaches past the surface's usable
// radius.
void check_domain_on_surface(const SurfaceMetric& surface, const StarDomain& domain);

// Maximises g over the periodic grid of `grid` nodes and refines the winning
// bracket; returns {argmax, max}.
struct PeriodicExtremum {
  double theta;
  double value;
};
template <class F>
PeriodicExtremum periodic_maximum(const F& g, int grid);

}  // namespace steklov

#include "steklov/detail/periodic_extremum.hpp"
