#include "steklov/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "steklov/errors.hpp"
#include "steklov/numerics/quadrature.hpp"
#include "steklov/radial.hpp"

namespace steklov {

std::string_view to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::Pass: return "pass";
    case BoundStatus::Fail: return "fail";
    case BoundStatus::Inconclusive: return "inconclusive";
    case BoundStatus::Undefined: return "undefined";
  }
  return "unknown";
}

BoundStatus classify_bound(int l, double mu, double bound, double rel_slack,
                           double est_error, bool converged) {
  if (!converged) return BoundStatus::Undefined;
  if (l == 1) return std::abs(bound) <= 1e-12 ? BoundStatus::Pass : BoundStatus::Fail;
  const double allowed = mu * (1 + rel_slack) + est_error;
  if (bound <= allowed) return BoundStatus::Pass;
  // R_m, R_M and a carry ~1e-10 refinement error into the bound.
  const double band = 1e-9 * std::abs(bound) + 1e-12;
  if (bound <= allowed + band) return BoundStatus::Inconclusive;
  return BoundStatus::Fail;
}

BoundReport verify_case(const VerificationCase& c) {
  if (c.l_range.empty()) throw InvalidArgument("verify_case needs a non-empty l_range");
  for (int l : c.l_range) {
    if (l < 1) throw InvalidArgument("eigenvalue indices are 1-based");
  }
  std::vector<BoundFormula> formulas =
      c.formulas.empty() ? applicable_formulas(c.surface) : c.formulas;
  for (BoundFormula f : formulas) {
    if (!applies_to(f, c.surface)) {
      throw InvalidArgument(std::string(to_string(f)) + " does not apply to the " +
                            c.surface.name());
    }
  }

  BoundReport report;
  report.constants = domain_constants(c.surface, c.domain);
  const int l_max = std::max(2, *std::max_element(c.l_range.begin(), c.l_range.end()));
  report.spectrum = steklov_spectrum(c.surface, c.domain, l_max, c.solver);
  const auto& spec = report.spectrum;

  std::optional<BallSpectrum> ball;
  if (std::any_of(formulas.begin(), formulas.end(), uses_ball)) {
    ball = ball_spectrum(c.surface, report.constants.R_m, l_max, 2, c.solver.rtol);
  }

  for (BoundFormula f : formulas) {
    for (int l : c.l_range) {
      std::optional<BoundValue> b;
      switch (f) {
        case BoundFormula::MainWarped:
          b = bound_main_warped(c.surface, report.constants, *ball, l);
          break;
        case BoundFormula::ParaboloidMain:
          b = bound_paraboloid(c.surface, report.constants, *ball, l);
          break;
        case BoundFormula::KuttlerSigillito:
          if (l >= 2) b = bound_kuttler_sigillito(c.domain, l / 2)[l % 2];
          break;
        case BoundFormula::GarciaMontano:
          if (l == 2) b = bound_garcia_montano(report.constants);
          break;
        case BoundFormula::VermaSphere:
          if (l == 2) b = bound_verma_sphere(report.constants, *ball);
          break;
        case BoundFormula::BramblePayne:
          if (l == 2) b = bound_bramble_payne(c.domain);
          break;
      }
      if (!b) continue;
      const double mu = spec.eigenvalues[static_cast<std::size_t>(l - 1)];
      BoundEntry e{f,
                   l,
                   mu,
                   b->value,
                   mu > 0 ? std::optional<double>(b->value / mu) : std::nullopt,
                   classify_bound(l, mu, b->value, c.rel_slack, spec.est_error,
                                  spec.converged),
                   spec.est_error};
      switch (e.status) {
        case BoundStatus::Pass: ++report.passed; break;
        case BoundStatus::Fail: ++report.failed; break;
        case BoundStatus::Inconclusive: ++report.inconclusive; break;
        case BoundStatus::Undefined: ++report.undefined; break;
      }
      report.entries.push_back(e);
    }
  }
  return report;
}

std::vector<BoundReport> verify_cases(std::span<const VerificationCase> cases, int jobs) {
  const std::size_t n = cases.size();
  std::vector<std::optional<BoundReport>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::size_t workers = jobs > 0 ? static_cast<std::size_t>(jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(n, 1));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = verify_case(cases[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::vector<BoundReport> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

double richardson_limit(std::span<const double> eps, std::span<const double> values) {
  if (eps.size() != values.size() || eps.empty()) {
    throw InvalidArgument("richardson_limit needs matching, non-empty inputs");
  }
  const std::size_t n = eps.size();
  const std::size_t first = n >= 3 ? n - 3 : 0;
  double limit = 0;
  for (std::size_t i = first; i < n; ++i) {
    double basis = 1;
    for (std::size_t j = first; j < n; ++j) {
      if (j != i) basis *= (0 - eps[j]) / (eps[i] - eps[j]);
    }
    limit += values[i] * basis;
  }
  return limit;
}

SharpnessResult sharpness_study(const SurfaceMetric& surface, double base_R0,
                                const std::vector<double>& perturb_cos,
                                const std::vector<double>& perturb_sin,
                                const std::vector<double>& eps_list, int l,
                                const SolverOptions& solver) {
  if (eps_list.empty()) throw InvalidArgument("sharpness_study needs eps values");
  if (l < 2) throw InvalidArgument("sharpness_study needs l >= 2");
  if (!(base_R0 > 0)) throw InvalidArgument("sharpness_study needs R0 > 0");
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) {
      throw InvalidArgument("sharpness eps values must be strictly decreasing");
    }
  }
  SharpnessResult out;
  for (double eps : eps_list) {
    const std::size_t nc = std::max<std::size_t>(perturb_cos.size(), 1);
    std::vector<double> c(nc, 0.0), s(perturb_sin.size(), 0.0);
    for (std::size_t k = 0; k < perturb_cos.size(); ++k) c[k] = base_R0 * eps * perturb_cos[k];
    c[0] += base_R0;
    for (std::size_t k = 0; k < perturb_sin.size(); ++k) s[k] = base_R0 * eps * perturb_sin[k];
    const StarDomain domain(std::move(c), std::move(s));

    const auto consts = domain_constants(surface, domain);
    const auto spec = steklov_spectrum(surface, domain, l, solver);
    const auto ball = ball_spectrum(surface, consts.R_m, l, 2, solver.rtol);
    const BoundValue b = surface.is_warped() ? bound_main_warped(surface, consts, ball, l)
                                             : bound_paraboloid(surface, consts, ball, l);
    const double mu = spec.eigenvalues[static_cast<std::size_t>(l - 1)];
    out.points.push_back({eps, mu, b.value, b.value / mu, spec.converged});
  }
  std::vector<double> e, r;
  for (const auto& p : out.points) {
    e.push_back(p.eps);
    r.push_back(p.ratio);
  }
  out.limit = richardson_limit(e, r);
  out.monotone = true;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] < r[i - 1] - 1e-6) out.monotone = false;
  }
  return out;
}

double TestFunction::value(double s, double phi) const {
  double v = 0;
  for (const auto& t : terms) {
    const double trig = t.sine ? std::sin(t.mode * phi) : std::cos(t.mode * phi);
    v += t.coef * std::pow(s, t.power) * trig;
  }
  return v;
}

double TestFunction::d_s(double s, double phi) const {
  double v = 0;
  for (const auto& t : terms) {
    if (t.power == 0) continue;
    const double trig = t.sine ? std::sin(t.mode * phi) : std::cos(t.mode * phi);
    v += t.coef * t.power * std::pow(s, t.power - 1) * trig;
  }
  return v;
}

double TestFunction::d_phi(double s, double phi) const {
  double v = 0;
  for (const auto& t : terms) {
    const double dtrig = t.sine ? t.mode * std::cos(t.mode * phi)
                                : -t.mode * std::sin(t.mode * phi);
    v += t.coef * std::pow(s, t.power) * dtrig;
  }
  return v;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

TestFunction random_test_function(std::mt19937_64& rng, int max_mode) {
  TestFunction f;
  for (int m = 0; m <= max_mode; ++m) {
    for (int p = m; p <= m + 2; ++p) {
      if (m >= 1 && p == 0) continue;
      f.terms.push_back({p, m, false, 2 * uniform01(rng) - 1});
      if (m >= 1) f.terms.push_back({p, m, true, 2 * uniform01(rng) - 1});
    }
  }
  return f;
}

namespace {

struct ProofIntegrals {
  double energy_domain;
  double energy_ball;
  double boundary_domain;
  double boundary_ball;
};

ProofIntegrals proof_integrals(const SurfaceMetric& surface, const StarDomain& domain,
                               const TestFunction& f, double r_m, int n_r, int n_t) {
  ProofIntegrals out{};
  out.energy_domain = numerics::quad2d_polar(
      [&](double rho, double phi) {
        const double R = domain.R(phi), Rp = domain.dR(phi);
        const double s = rho / r_m;
        const double f_rho = f.d_s(s, phi) / r_m;
        const double r = rho * R / r_m;
        const double f_r = f_rho * r_m / R;
        const double f_t = f.d_phi(s, phi) - f_rho * rho * Rp / R;
        const double A = surface.A(r), B = surface.B(r);
        return (f_r * f_r / A + f_t * f_t / B) * std::sqrt(A * B) * (R / r_m);
      },
      r_m, n_r, n_t);
  out.energy_ball = numerics::quad2d_polar(
      [&](double rho, double phi) {
        const double s = rho / r_m;
        const double f_rho = f.d_s(s, phi) / r_m;
        const double f_t = f.d_phi(s, phi);
        const double A = surface.A(rho), B = surface.B(rho);
        return (f_rho * f_rho / A + f_t * f_t / B) * std::sqrt(A * B);
      },
      r_m, n_r, n_t);
  std::vector<double> on_domain, on_ball;
  const double ball_arc = std::sqrt(surface.B(r_m));
  for (double phi : numerics::periodic_nodes(n_t)) {
    const double v = f.value(1.0, phi);
    on_domain.push_back(v * v * boundary_frame(surface, domain, phi).ds_dtheta);
    on_ball.push_back(v * v * ball_arc);
  }
  out.boundary_domain = numerics::periodic_quadrature(on_domain);
  out.boundary_ball = numerics::periodic_quadrature(on_ball);
  return out;
}

InequalityCheck make_check(double lhs, double rhs) {
  InequalityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = lhs - rhs;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  c.pass = c.margin >= -1e-9 * scale;
  return c;
}

}  // namespace

ProofStepResult proof_step_check(const SurfaceMetric& surface, const StarDomain& domain,
                                 const TestFunction& f, QuadGrid grid) {
  check_domain_on_surface(surface, domain);
  const auto consts = domain_constants(surface, domain);
  const auto coarse =
      proof_integrals(surface, domain, f, consts.R_m, grid.n_r, grid.n_theta);
  const auto fine =
      proof_integrals(surface, domain, f, consts.R_m, 2 * grid.n_r, 2 * grid.n_theta);

  double refinement = 0;
  const std::array<std::pair<double, double>, 4> pairs = {
      std::pair{coarse.energy_domain, fine.energy_domain},
      std::pair{coarse.energy_ball, fine.energy_ball},
      std::pair{coarse.boundary_domain, fine.boundary_domain},
      std::pair{coarse.boundary_ball, fine.boundary_ball}};
  for (const auto& [c, fv] : pairs) {
    const double rel = std::abs(c - fv) / std::max(std::abs(fv), 1e-300);
    if (std::abs(c - fv) > 1e-15) refinement = std::max(refinement, rel);
  }
  if (refinement > 1e-6) {
    throw NumericalError("proof_step_check: quadrature under-resolved (refinement "
                         "disagreement " + std::to_string(refinement) + ")");
  }

  const double a = consts.a;
  // ((2 + a) - sqrt(a^2 + 4a)) / 2 without cancellation.
  const double half_gap = 2.0 / ((2 + a) + std::sqrt(a * a + 4 * a));
  const double c1 = (consts.R_m / consts.R_M) * half_gap;
  const double c2 = std::sqrt(1 + a) * std::sqrt(surface.B(consts.R_M) / surface.B(consts.R_m));

  ProofStepResult out;
  out.refinement_error = refinement;
  out.gradient = make_check(fine.energy_domain, c1 * fine.energy_ball);
  out.boundary = make_check(c2 * fine.boundary_ball, fine.boundary_domain);
  if (fine.boundary_domain > 0 && fine.boundary_ball > 0) {
    out.quotient = make_check(fine.energy_domain / fine.boundary_domain,
                              (c1 / c2) * fine.energy_ball / fine.boundary_ball);
  } else {
    out.quotient = make_check(0.0, 0.0);
  }
  return out;
}

DomainSuite random_domain_suite(const SurfaceMetric& surface, int count, int max_mode,
                                double max_eps, std::uint64_t seed, double base_R0) {
  if (count < 0 || max_mode < 1 || !(max_eps > 0) || !(base_R0 > 0)) {
    throw InvalidArgument("random_domain_suite: bad parameters");
  }
  std::mt19937_64 rng(seed);
  DomainSuite suite;
  const int max_attempts = 1000 * std::max(count, 1);
  while (static_cast<int>(suite.domains.size()) < count) {
    if (suite.attempts >= max_attempts) {
      throw InvalidArgument("random_domain_suite: rejection limit reached");
    }
    ++suite.attempts;
    std::vector<double> c(static_cast<std::size_t>(max_mode) + 1, 0.0);
    std::vector<double> s(static_cast<std::size_t>(max_mode), 0.0);
    c[0] = base_R0;
    for (int k = 1; k <= max_mode; ++k) {
      c[k] = base_R0 * max_eps * (2 * uniform01(rng) - 1);
      s[k - 1] = base_R0 * max_eps * (2 * uniform01(rng) - 1);
    }
    bool ok = true;
    std::optional<StarDomain> domain;
    try {
      domain.emplace(std::move(c), std::move(s));
    } catch (const InvalidArgument&) {
      ok = false;
    }
    if (ok) {
      const auto consts = domain_constants(surface, *domain, 1024);
      ok = consts.R_m >= 0.2 * base_R0;
      if (ok && surface.is_warped()) {
        const auto& warp = surface.warp();
        ok = consts.R_M <= warp.domain_max() && warp.dh(consts.R_M) > 0 &&
             validate_warp(warp, consts.R_M, 256).valid();
      }
    }
    if (ok) {
      suite.domains.push_back(std::move(*domain));
    } else {
      ++suite.rejected;
    }
  }
  return suite;
}

}  // namespace steklov
