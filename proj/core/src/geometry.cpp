#include "steklov/geometry.hpp"

#include <Eigen/SparseLU>
#include <boost/math/interpolators/cubic_hermite.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "steklov/errors.hpp"

namespace steklov {

std::string_view to_string(WarpKind kind) {
  switch (kind) {
    case WarpKind::Plane: return "plane";
    case WarpKind::Sphere: return "sphere";
    case WarpKind::Tanh: return "tanh";
    case WarpKind::TabulatedSpline: return "spline";
  }
  return "unknown";
}

struct WarpFunction::Spline {
  boost::math::interpolators::cubic_hermite<std::vector<double>> interp;
};

namespace {

// Knot slopes of the C2 cubic spline with h'(0) = 1 and, at the last knot, the
// slope of the cubic through the last four knots.
std::vector<double> clamped_spline_slopes(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::Triplet<double>> entries;
  Eigen::VectorXd rhs(n);
  entries.emplace_back(0, 0, 1.0);
  rhs(0) = 1.0;
  for (int i = 1; i < n - 1; ++i) {
    const double a = 1 / (x[i] - x[i - 1]), b = 1 / (x[i + 1] - x[i]);
    entries.emplace_back(i, i - 1, a);
    entries.emplace_back(i, i, 2 * (a + b));
    entries.emplace_back(i, i + 1, b);
    rhs(i) = 3 * ((y[i] - y[i - 1]) * a * a + (y[i + 1] - y[i]) * b * b);
  }
  double end_slope = 0;
  for (int j = n - 4; j < n; ++j) {
    double d = 0;
    if (j == n - 1) {
      for (int m = n - 4; m < n - 1; ++m) d += 1 / (x[n - 1] - x[m]);
    } else {
      d = 1 / (x[j] - x[n - 1]);
      for (int m = n - 4; m < n - 1; ++m) {
        if (m != j) d *= (x[n - 1] - x[m]) / (x[j] - x[m]);
      }
    }
    end_slope += y[j] * d;
  }
  entries.emplace_back(n - 1, n - 1, 1.0);
  rhs(n - 1) = end_slope;
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(m);
  const Eigen::VectorXd slopes = lu.solve(rhs);
  return {slopes.data(), slopes.data() + n};
}

}  // namespace

WarpFunction::WarpFunction(WarpKind kind, double domain_max)
    : kind_(kind), domain_max_(domain_max) {
  if (!(domain_max > 0) || !std::isfinite(domain_max)) {
    throw InvalidArgument("warp domain_max must be positive and finite");
  }
}

WarpFunction WarpFunction::plane(double domain_max) {
  return {WarpKind::Plane, domain_max};
}

WarpFunction WarpFunction::sphere(double domain_max) {
  return {WarpKind::Sphere, domain_max};
}

WarpFunction WarpFunction::tanh(double domain_max) {
  return {WarpKind::Tanh, domain_max};
}

WarpFunction WarpFunction::spline(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() != values.size()) {
    throw InvalidArgument("spline warp: knots and values differ in length");
  }
  if (knots.size() < 4) throw InvalidArgument("spline warp needs at least four knots");
  if (knots.front() != 0.0 || values.front() != 0.0) {
    throw InvalidArgument("spline warp must start at (0, 0)");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) {
      throw InvalidArgument("spline warp knots must be strictly increasing");
    }
    if (!std::isfinite(values[i])) throw InvalidArgument("spline warp value not finite");
  }
  WarpFunction w(WarpKind::TabulatedSpline, knots.back());
  auto slopes = clamped_spline_slopes(knots, values);
  w.knots_ = knots;
  w.values_ = values;
  w.spline_ = std::make_shared<const Spline>(
      Spline{boost::math::interpolators::cubic_hermite<std::vector<double>>(
          std::move(knots), std::move(values), std::move(slopes))});
  return w;
}

double WarpFunction::h(double r) const {
  switch (kind_) {
    case WarpKind::Plane: return r;
    case WarpKind::Sphere: return std::sin(r);
    case WarpKind::Tanh: return std::tanh(r);
    case WarpKind::TabulatedSpline:
      if (r < 0 || r > domain_max_) {
        throw DomainRangeError("spline warp evaluated outside its knots");
      }
      return spline_->interp(r);
  }
  return 0;
}

double WarpFunction::dh(double r) const {
  switch (kind_) {
    case WarpKind::Plane: return 1.0;
    case WarpKind::Sphere: return std::cos(r);
    case WarpKind::Tanh: {
      const double c = std::cosh(r);
      return 1.0 / (c * c);
    }
    case WarpKind::TabulatedSpline:
      if (r < 0 || r > domain_max_) {
        throw DomainRangeError("spline warp evaluated outside its knots");
      }
      return spline_->interp.prime(r);
  }
  return 0;
}

bool WarpFunction::operator==(const WarpFunction& other) const {
  return kind_ == other.kind_ && domain_max_ == other.domain_max_ &&
         knots_ == other.knots_ && values_ == other.values_;
}

WarpValidation validate_warp(const WarpFunction& warp, double r_max, int samples) {
  if (samples < 64) throw InvalidArgument("validate_warp needs samples >= 64");
  if (!(r_max > 0)) throw InvalidArgument("validate_warp needs r_max > 0");
  if (r_max > warp.domain_max()) {
    std::ostringstream os;
    os << "validate_warp: r_max " << r_max << " exceeds warp domain "
       << warp.domain_max();
    throw DomainRangeError(os.str());
  }

  constexpr double tol = 1e-12;
  WarpValidation report;
  auto fail = [&report](const std::string& what, double where) {
    std::ostringstream os;
    os.precision(17);
    os << what << " (first at r = " << where << ")";
    report.violations.push_back(os.str());
  };

  if (std::abs(warp.h(0.0)) > tol) fail("h(0) != 0", 0.0);
  if (std::abs(warp.dh(0.0) - 1.0) > tol) fail("h'(0) != 1", 0.0);

  std::vector<double> r(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) r[i] = r_max * i / (samples - 1);
  if (r.back() > warp.domain_max()) r.back() = warp.domain_max();

  for (int i = 1; i < samples; ++i) {
    if (warp.h(r[i]) < warp.h(r[i - 1]) - tol) {
      fail("h is not non-decreasing", r[i]);
      break;
    }
  }
  for (int i = 2; i < samples; ++i) {
    if (warp.h(r[i]) / r[i] > warp.h(r[i - 1]) / r[i - 1] + tol) {
      fail("h(r)/r is not non-increasing", r[i]);
      break;
    }
  }
  for (double a : {0.25, 0.5, 0.75}) {
    for (int i = 1; i < samples; ++i) {
      if (warp.h(a * r[i]) < a * warp.h(r[i]) - tol) {
        fail("h(a r) >= a h(r) fails for a = " + std::to_string(a), r[i]);
        break;
      }
    }
  }
  for (double a : {1.5, 2.0}) {
    for (int i = 1; i < samples; ++i) {
      if (a * r[i] > warp.domain_max()) break;
      if (warp.h(a * r[i]) > a * warp.h(r[i]) + tol) {
        fail("h(a r) <= a h(r) fails for a = " + std::to_string(a), r[i]);
        break;
      }
    }
  }
  return report;
}

const WarpFunction& SurfaceMetric::warp() const {
  if (!is_warped()) throw InvalidArgument("the paraboloid has no warp function");
  return std::get<WarpFunction>(variant_);
}

std::string SurfaceMetric::name() const {
  if (!is_warped()) return "paraboloid";
  return std::string(to_string(warp().kind()));
}

double SurfaceMetric::A(double r) const {
  return is_warped() ? 1.0 : 1.0 + 4 * r * r;
}

double SurfaceMetric::dA(double r) const { return is_warped() ? 0.0 : 8 * r; }

double SurfaceMetric::B(double r) const {
  if (is_warped()) {
    const double h = warp().h(r);
    return h * h;
  }
  return r * r;
}

double SurfaceMetric::dB(double r) const {
  if (is_warped()) return 2 * warp().h(r) * warp().dh(r);
  return 2 * r;
}

double SurfaceMetric::S(double r) const {
  if (is_warped()) return warp().h(r);
  return r / std::sqrt(1 + 4 * r * r);
}

double SurfaceMetric::log_dS(double r) const {
  if (is_warped()) return warp().dh(r) / warp().h(r);
  return 1.0 / r - 4 * r / (1 + 4 * r * r);
}

double SurfaceMetric::dS(double r) const {
  if (is_warped()) return warp().dh(r);
  const double q = 1 + 4 * r * r;
  return 1.0 / (q * std::sqrt(q));
}

double SurfaceMetric::max_radius() const {
  return is_warped() ? warp().domain_max() : std::numeric_limits<double>::infinity();
}

StarDomain::StarDomain(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  if (cos_.empty()) throw InvalidArgument("StarDomain needs at least c_0");
  for (double c : cos_) {
    if (!std::isfinite(c)) throw InvalidArgument("StarDomain coefficient not finite");
  }
  for (double s : sin_) {
    if (!std::isfinite(s)) throw InvalidArgument("StarDomain coefficient not finite");
  }
  const int grid = std::max(1024, 32 * (max_mode() + 1));
  for (int i = 0; i < grid; ++i) {
    const double theta = 2 * std::numbers::pi * i / grid;
    if (!(R(theta) > 0)) {
      std::ostringstream os;
      os << "StarDomain radius not positive at theta = " << theta;
      throw InvalidArgument(os.str());
    }
  }
}

StarDomain StarDomain::constant(double radius) { return StarDomain({radius}, {}); }

int StarDomain::max_mode() const {
  return static_cast<int>(std::max(cos_.size() - 1, sin_.size()));
}

double StarDomain::R(double theta) const {
  double r = cos_[0];
  for (std::size_t k = 1; k < cos_.size(); ++k) r += cos_[k] * std::cos(k * theta);
  for (std::size_t k = 1; k <= sin_.size(); ++k) r += sin_[k - 1] * std::sin(k * theta);
  return r;
}

double StarDomain::dR(double theta) const {
  double d = 0;
  for (std::size_t k = 1; k < cos_.size(); ++k) {
    d -= static_cast<double>(k) * cos_[k] * std::sin(k * theta);
  }
  for (std::size_t k = 1; k <= sin_.size(); ++k) {
    d += static_cast<double>(k) * sin_[k - 1] * std::cos(k * theta);
  }
  return d;
}

StarDomain StarDomain::rotated(double phase) const {
  const std::size_t modes = static_cast<std::size_t>(max_mode());
  std::vector<double> c(modes + 1, 0.0), s(modes, 0.0);
  c[0] = cos_[0];
  for (std::size_t k = 1; k <= modes; ++k) {
    const double ck = k < cos_.size() ? cos_[k] : 0.0;
    const double sk = k <= sin_.size() ? sin_[k - 1] : 0.0;
    const double cp = std::cos(k * phase), sp = std::sin(k * phase);
    c[k] = ck * cp - sk * sp;
    s[k - 1] = ck * sp + sk * cp;
  }
  return StarDomain(std::move(c), std::move(s));
}

StarDomain StarDomain::scaled(double factor) const {
  if (!(factor > 0)) throw InvalidArgument("StarDomain scale must be positive");
  auto c = cos_;
  auto s = sin_;
  for (double& v : c) v *= factor;
  for (double& v : s) v *= factor;
  return StarDomain(std::move(c), std::move(s));
}

BoundaryFrame boundary_frame(const SurfaceMetric& surface, const StarDomain& domain,
                             double theta) {
  BoundaryFrame f;
  f.theta = theta;
  f.R = domain.R(theta);
  f.Rp = domain.dR(theta);
  const double a = surface.A(f.R);
  const double b = surface.B(f.R);
  f.ds_dtheta = std::sqrt(a * f.Rp * f.Rp + b);
  f.tan2_angle = a * f.Rp * f.Rp / b;
  f.cos_angle = 1.0 / std::sqrt(1.0 + f.tan2_angle);
  const double norm = std::sqrt(1.0 / a + f.Rp * f.Rp / b);
  f.n_r = (1.0 / a) / norm;
  f.n_theta = (-f.Rp / b) / norm;
  return f;
}

DomainConstants domain_constants(const SurfaceMetric& surface, const StarDomain& domain,
                                 int grid) {
  if (grid < 1024) throw InvalidArgument("domain_constants needs grid >= 1024");
  DomainConstants c;
  c.R_m = -periodic_maximum([&](double t) { return -domain.R(t); }, grid).value;
  c.R_M = periodic_maximum([&](double t) { return domain.R(t); }, grid).value;
  if (!(c.R_m > 0)) throw InvalidArgument("domain radius is not positive");
  c.a = periodic_maximum(
            [&](double t) { return boundary_frame(surface, domain, t).tan2_angle; }, grid)
            .value;
  c.a = std::max(c.a, 0.0);
  c.alpha = std::atan(std::sqrt(c.a));
  return c;
}

void check_domain_on_surface(const SurfaceMetric& surface, const StarDomain& domain) {
  const double r_max = periodic_maximum([&](double t) { return domain.R(t); }, 1024).value;
  if (r_max > surface.max_radius()) {
    std::ostringstream os;
    os << "domain reaches r = " << r_max << " beyond the " << surface.name()
       << " range " << surface.max_radius();
    throw DomainRangeError(os.str());
  }
}

}  // namespace steklov
