#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "steklov/bounds.hpp"
#include "steklov/dtn_solver.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

struct VerificationCase {
  SurfaceMetric surface;
  StarDomain domain;
  std::vector<int> l_range;            // 1-based eigenvalue indices
  std::vector<BoundFormula> formulas;  // empty: every applicable formula
  double rel_slack = 1e-6;
  SolverOptions solver;
};

enum class BoundStatus { Pass, Fail, Inconclusive, Undefined };

std::string_view to_string(BoundStatus status);

struct BoundEntry {
  BoundFormula formula;
  int l;
  double mu;
  double bound;
  std::optional<double> ratio;  // bound / mu, only when mu > 0
  BoundStatus status;
  double est_error;
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  DomainConstants constants;
  DomainSpectrum spectrum;
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  int undefined = 0;

  bool solver_converged() const { return spectrum.converged; }
  bool any_failed() const { return failed > 0; }
};

// Classification of one comparison. Pass iff bound <= mu (1 + rel_slack) +
// est_error; a miss no larger than the extrema-refinement band around the
// bound is Inconclusive. For l = 1 both sides vanish and Pass iff |bound| <=
// 1e-12. An unconverged spectrum yields Undefined.
BoundStatus classify_bound(int l, double mu, double bound, double rel_slack,
                           double est_error, bool converged);

// Solves the domain once, evaluates every requested bound and compares.
BoundReport verify_case(const VerificationCase& c);

// Runs cases on up to `jobs` worker threads (<= 0: hardware concurrency).
// Reports come back in case order.
std::vector<BoundReport> verify_cases(std::span<const VerificationCase> cases, int jobs = 0);

struct SharpnessPoint {
  double eps;
  double mu;
  double bound;
  double ratio;
  bool converged;
};

struct SharpnessResult {
  std::vector<SharpnessPoint> points;
  double limit = 0;        // polynomial extrapolation of ratio to eps = 0
  bool monotone = false;   // ratio non-decreasing as eps decreases (1e-6 slack)
};

// Value at 0 of the polynomial through the last (up to) three points.
double richardson_limit(std::span<const double> eps, std::span<const double> values);

// Family R = R0 (1 + eps P(theta)), P given by Fourier coefficients, compared
// against the main bound of the surface for eigenvalue l. eps_list must be
// non-empty and ordered by decreasing eps.
SharpnessResult sharpness_study(const SurfaceMetric& surface, double base_R0,
                                const std::vector<double>& perturb_cos,
                                const std::vector<double>& perturb_sin,
                                const std::vector<double>& eps_list, int l,
                                const SolverOptions& solver = {});

// f(s, phi) = sum c s^p trig(m phi) in the normalised radius s = rho / R_m of
// the reference ball; pulled back to the domain by rho = r R_m / R(phi).
struct TestTerm {
  int power;
  int mode;
  bool sine;
  double coef;
};

struct TestFunction {
  std::vector<TestTerm> terms;

  double value(double s, double phi) const;
  double d_s(double s, double phi) const;
  double d_phi(double s, double phi) const;
};

// Terms s^p trig(m phi) for m = 0..max_mode, p in {m, m+1, m+2} (p >= 1 when
// m >= 1, keeping f in H^1), coefficients uniform in [-1, 1].
TestFunction random_test_function(std::mt19937_64& rng, int max_mode = 4);

struct InequalityCheck {
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // lhs - rhs
  bool pass = false;
};

struct ProofStepResult {
  InequalityCheck gradient;  // int_Omega |grad f|^2 >= c1 int_B |grad f|^2
  InequalityCheck boundary;  // c2 int_{dB} f^2 >= int_{dOmega} f^2
  InequalityCheck quotient;  // energy quotient on Omega >= (c1/c2) quotient on B
  double refinement_error = 0;
  bool all_pass() const { return gradient.pass && boundary.pass && quotient.pass; }
};

struct QuadGrid {
  int n_r = 64;
  int n_theta = 128;
};

// Evaluates the energy and boundary estimates of the test function at grid and
// at a doubled grid; disagreement above 1e-6 throws NumericalError.
ProofStepResult proof_step_check(const SurfaceMetric& surface, const StarDomain& domain,
                                 const TestFunction& f, QuadGrid grid = {});

struct DomainSuite {
  std::vector<StarDomain> domains;
  int attempts = 0;
  int rejected = 0;
  double rejection_rate() const {
    return attempts > 0 ? static_cast<double>(rejected) / attempts : 0.0;
  }
};

// Uniform [0, 1) from a 64-bit engine, identical on every platform.
double uniform01(std::mt19937_64& rng);

// R = R0 (1 + sum_k a_k cos k theta + b_k sin k theta), a_k, b_k uniform in
// [-max_eps, max_eps], k = 1..max_mode. Rejects draws with min R < 0.2 R0 and,
// on warped surfaces, draws whose R_M leaves the range where the warp is
// admissible (increasing h, non-increasing h/r).
DomainSuite random_domain_suite(const SurfaceMetric& surface, int count, int max_mode,
                                double max_eps, std::uint64_t seed, double base_R0 = 1.0);

}  // namespace steklov
