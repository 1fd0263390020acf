#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "steklov/geometry.hpp"
#include "steklov/radial.hpp"

namespace steklov {

enum class BoundFormula {
  MainWarped,        // all l, any admissible warp
  ParaboloidMain,    // all l, paraboloid
  KuttlerSigillito,  // l = 2k, 2k+1, plane
  GarciaMontano,     // l = 2, R^n
  VermaSphere,       // l = 2, S^n
  BramblePayne,      // l = 2, R^n
};

std::string_view to_string(BoundFormula formula);
// Accepts the names produced by to_string; throws InvalidArgument otherwise.
BoundFormula bound_formula_from_string(std::string_view name);

bool applies_to(BoundFormula formula, const SurfaceMetric& surface);
bool uses_ball(BoundFormula formula);
// Formulas applicable to the surface, in declaration order.
std::vector<BoundFormula> applicable_formulas(const SurfaceMetric& surface);

struct BoundValue {
  BoundFormula formula = BoundFormula::MainWarped;
  int l = 2;  // 1-based, mu_1 = 0
  double value = 0;
  // value / mu_l(B(R_m)); for the planar catalogue bounds B(R_m) is the disc.
  double factor = 0;
  bool needs_ball = false;
};

// F(a) = ((2 + a) - sqrt(a^2 + 4a)) / (2 sqrt(1 + a)), evaluated as
// 2 / (((2 + a) + sqrt(a^2 + 4a)) sqrt(1 + a)) to avoid cancellation.
double shape_factor(double a);

// (R_m / R_M) F(a) (h(R_m) / h(R_M))^{n-1} mu_l(B(R_m)); n is ball.n.
BoundValue bound_main_warped(const SurfaceMetric& surface, const DomainConstants& consts,
                             const BallSpectrum& ball, int l);

// (R_m / R_M)^3 F(a) mu_l(B(R_m)).
BoundValue bound_paraboloid(const SurfaceMetric& surface, const DomainConstants& consts,
                            const BallSpectrum& ball, int l);

// k [1 - 2 / (1 + sqrt(1 + 4q))] / max sqrt(R^2 + R'^2) with
// q = min (R/R')^2 over points where R' != 0 (q = inf for a circle).
// Returns the bound for l = 2k and l = 2k + 1.
std::array<BoundValue, 2> bound_kuttler_sigillito(const StarDomain& domain, int k,
                                                  int grid = 4096);

// (R_m^{n-2} / R_M^{n-1}) F(a). l must be 2.
BoundValue bound_garcia_montano(const DomainConstants& consts, int n = 2, int l = 2);

// (R_m / R_M) F(a) (sin R_m / sin R_M)^{n-1} mu_2(B(R_m)) with the ball taken
// on the sphere. l must be 2.
BoundValue bound_verma_sphere(const DomainConstants& consts, const BallSpectrum& ball,
                              int n = 2, int l = 2);

// (R_m^{n-1} / R_M^{n+1}) h_m with h_m = min <x, nu> = min R^2 / sqrt(R^2 + R'^2).
// l must be 2.
BoundValue bound_bramble_payne(const StarDomain& domain, int n = 2, int l = 2,
                               int grid = 4096);

}  // namespace steklov
