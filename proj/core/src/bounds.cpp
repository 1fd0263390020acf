#include "steklov/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

constexpr std::array<BoundFormula, 6> kAllFormulas = {
    BoundFormula::MainWarped,    BoundFormula::ParaboloidMain,
    BoundFormula::KuttlerSigillito, BoundFormula::GarciaMontano,
    BoundFormula::VermaSphere,   BoundFormula::BramblePayne};

void require_l2(BoundFormula f, int l) {
  if (l != 2) {
    throw NotApplicable(std::string(to_string(f)) +
                        " bounds only mu_2; requested l = " + std::to_string(l));
  }
}

void check_ball(const SurfaceMetric& surface, const DomainConstants& consts,
                const BallSpectrum& ball, int l) {
  if (!(ball.surface == surface)) {
    throw NotApplicable("ball spectrum was computed on " + ball.surface.name() +
                        ", domain lives on " + surface.name());
  }
  if (std::abs(ball.R - consts.R_m) > 1e-12 * consts.R_m) {
    std::ostringstream os;
    os.precision(17);
    os << "ball radius " << ball.R << " differs from R_m = " << consts.R_m;
    throw NotApplicable(os.str());
  }
  if (l < 1 || l > static_cast<int>(ball.eigenvalues.size())) {
    throw InvalidArgument("eigenvalue index " + std::to_string(l) +
                          " outside the computed ball spectrum");
  }
}

}  // namespace

std::string_view to_string(BoundFormula formula) {
  switch (formula) {
    case BoundFormula::MainWarped: return "main_warped";
    case BoundFormula::ParaboloidMain: return "paraboloid_main";
    case BoundFormula::KuttlerSigillito: return "kuttler_sigillito";
    case BoundFormula::GarciaMontano: return "garcia_montano";
    case BoundFormula::VermaSphere: return "verma_sphere";
    case BoundFormula::BramblePayne: return "bramble_payne";
  }
  return "unknown";
}

BoundFormula bound_formula_from_string(std::string_view name) {
  for (BoundFormula f : kAllFormulas) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown bound formula '" + std::string(name) + "'");
}

bool applies_to(BoundFormula formula, const SurfaceMetric& surface) {
  switch (formula) {
    case BoundFormula::MainWarped: return surface.is_warped();
    case BoundFormula::ParaboloidMain: return surface.is_paraboloid();
    case BoundFormula::KuttlerSigillito:
    case BoundFormula::GarciaMontano:
    case BoundFormula::BramblePayne:
      return surface.is_warped() && surface.warp().kind() == WarpKind::Plane;
    case BoundFormula::VermaSphere:
      return surface.is_warped() && surface.warp().kind() == WarpKind::Sphere;
  }
  return false;
}

bool uses_ball(BoundFormula formula) {
  return formula == BoundFormula::MainWarped || formula == BoundFormula::ParaboloidMain ||
         formula == BoundFormula::VermaSphere;
}

std::vector<BoundFormula> applicable_formulas(const SurfaceMetric& surface) {
  std::vector<BoundFormula> out;
  for (BoundFormula f : kAllFormulas) {
    if (applies_to(f, surface)) out.push_back(f);
  }
  return out;
}

double shape_factor(double a) {
  if (!(a >= 0) || !std::isfinite(a)) {
    throw InvalidArgument("shape_factor needs a finite a >= 0");
  }
  return 2.0 / (((2 + a) + std::sqrt(a * a + 4 * a)) * std::sqrt(1 + a));
}

BoundValue bound_main_warped(const SurfaceMetric& surface, const DomainConstants& consts,
                             const BallSpectrum& ball, int l) {
  if (!surface.is_warped()) {
    throw NotApplicable("main_warped needs a warped surface");
  }
  check_ball(surface, consts, ball, l);
  const auto& warp = surface.warp();
  const double ratio_h = warp.h(consts.R_m) / warp.h(consts.R_M);
  BoundValue b;
  b.formula = BoundFormula::MainWarped;
  b.l = l;
  b.factor = (consts.R_m / consts.R_M) * shape_factor(consts.a) *
             std::pow(ratio_h, ball.n - 1);
  b.value = b.factor * ball.eigenvalues[l - 1];
  b.needs_ball = true;
  return b;
}

BoundValue bound_paraboloid(const SurfaceMetric& surface, const DomainConstants& consts,
                            const BallSpectrum& ball, int l) {
  if (!surface.is_paraboloid()) {
    throw NotApplicable("paraboloid_main needs the paraboloid");
  }
  check_ball(surface, consts, ball, l);
  const double q = consts.R_m / consts.R_M;
  BoundValue b;
  b.formula = BoundFormula::ParaboloidMain;
  b.l = l;
  b.factor = q * q * q * shape_factor(consts.a);
  b.value = b.factor * ball.eigenvalues[l - 1];
  b.needs_ball = true;
  return b;
}

std::array<BoundValue, 2> bound_kuttler_sigillito(const StarDomain& domain, int k,
                                                  int grid) {
  if (k < 1) throw InvalidArgument("kuttler_sigillito needs k >= 1");
  // max (R'/R)^2 = 1/q; zero for a circle, where q = inf and the bracket is 1.
  const double inv_q = periodic_maximum(
                           [&](double t) {
                             const double s = domain.dR(t) / domain.R(t);
                             return s * s;
                           },
                           grid)
                           .value;
  double bracket = 1.0;
  if (inv_q > 0) {
    const double q = 1.0 / inv_q;
    bracket = 1.0 - 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * q));
  }
  const double denom = periodic_maximum(
                           [&](double t) { return std::hypot(domain.R(t), domain.dR(t)); },
                           grid)
                           .value;
  const double r_min =
      -periodic_maximum([&](double t) { return -domain.R(t); }, grid).value;
  std::array<BoundValue, 2> out;
  for (int j = 0; j < 2; ++j) {
    out[j].formula = BoundFormula::KuttlerSigillito;
    out[j].l = 2 * k + j;
    out[j].value = k * bracket / denom;
    out[j].factor = out[j].value * r_min / k;
    out[j].needs_ball = false;
  }
  return out;
}

BoundValue bound_garcia_montano(const DomainConstants& consts, int n, int l) {
  require_l2(BoundFormula::GarciaMontano, l);
  if (n < 2) throw InvalidArgument("garcia_montano needs n >= 2");
  BoundValue b;
  b.formula = BoundFormula::GarciaMontano;
  b.l = 2;
  b.value = std::pow(consts.R_m, n - 2) / std::pow(consts.R_M, n - 1) *
            shape_factor(consts.a);
  b.factor = b.value * consts.R_m;
  return b;
}

BoundValue bound_verma_sphere(const DomainConstants& consts, const BallSpectrum& ball,
                              int n, int l) {
  require_l2(BoundFormula::VermaSphere, l);
  if (!ball.surface.is_warped() || ball.surface.warp().kind() != WarpKind::Sphere) {
    throw NotApplicable("verma_sphere needs a ball spectrum on the sphere");
  }
  check_ball(ball.surface, consts, ball, l);
  BoundValue b;
  b.formula = BoundFormula::VermaSphere;
  b.l = 2;
  b.factor = (consts.R_m / consts.R_M) * shape_factor(consts.a) *
             std::pow(std::sin(consts.R_m) / std::sin(consts.R_M), n - 1);
  b.value = b.factor * ball.eigenvalues[1];
  b.needs_ball = true;
  return b;
}

BoundValue bound_bramble_payne(const StarDomain& domain, int n, int l, int grid) {
  require_l2(BoundFormula::BramblePayne, l);
  if (n < 2) throw InvalidArgument("bramble_payne needs n >= 2");
  const auto consts = domain_constants(SurfaceMetric::plane(), domain, grid);
  const double h_m = -periodic_maximum(
                         [&](double t) {
                           const double r = domain.R(t);
                           return -r * r / std::hypot(r, domain.dR(t));
                         },
                         grid)
                         .value;
  BoundValue b;
  b.formula = BoundFormula::BramblePayne;
  b.l = 2;
  b.value = std::pow(consts.R_m, n - 1) / std::pow(consts.R_M, n + 1) * h_m;
  b.factor = b.value * consts.R_m;
  return b;
}

}  // namespace steklov
