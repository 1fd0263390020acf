// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fd_oracle.hpp"
#include "steklov/bounds.hpp"
#include "steklov/dtn_solver.hpp"
#include "steklov/errors.hpp"
#include "steklov/radial.hpp"
#include "steklov/verify.hpp"

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> l_range(int lo, int hi) {
  std::vector<int> out;
  for (int l = lo; l <= hi; ++l) out.push_back(l);
  return out;
}

// Residual of w = k / sin r in the Riccati equation on (0, r_max].
double sphere_residual(int k, double r_max) {
  const auto s = SurfaceMetric::sphere();
  double worst = 0;
  for (int i = 1; i <= 1000; ++i) {
    const double r = r_max * i / 1000;
    const double dw = -k * std::cos(r) / (std::sin(r) * std::sin(r));
    worst = std::max(worst, std::abs(dw - riccati_rhs(s, k, 2, r, k / std::sin(r))) / (1 + std::abs(dw)));
  }
  return worst;
}

Outcome disc_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = steklov_spectrum(SurfaceMetric::plane(), StarDomain::constant(1.0), 9);
  const double elapsed = seconds_since(t0);
  const std::vector<double> ref = {0, 1, 1, 2, 2, 3, 3, 4, 4};
  double err = 0;
  for (int i = 0; i < 9; ++i) err = std::max(err, std::abs(spec.eigenvalues.at(i) - ref[i]));
  return {spec.converged && err < 1e-8 && elapsed < 5.0,
          fmt("max abs error %.3g (< 1e-8), %.2f s (< 5 s)", err, elapsed)};
}

Outcome cap_oracle() {
  int worst_k = 1;
  double residual = 0;
  for (int k = 1; k <= 3; ++k) {
    const double r = sphere_residual(k, kPi / 4);
    if (r > residual) residual = r, worst_k = k;
  }
  if (!(residual < 1e-12)) {
    return {false, fmt("closed form residual %.3g at k=%d (needs < 1e-12)", residual, worst_k)};
  }
  const double c = 1 / std::sin(kPi / 4);
  const std::vector<double> ref = {0, c, c, 2 * c, 2 * c, 3 * c, 3 * c};
  const auto spec = steklov_spectrum(SurfaceMetric::sphere(), StarDomain::constant(kPi / 4), 7);
  double rel = std::abs(spec.eigenvalues.at(0));
  for (int i = 1; i < 7; ++i) rel = std::max(rel, std::abs(spec.eigenvalues.at(i) / ref[i] - 1));
  return {spec.converged && rel < 1e-7,
          fmt("residual %.3g, max rel error %.3g (< 1e-7; mu_1 abs)", residual, rel)};
}

Outcome riccati_closed_forms() {
  double plane_err = 0, sphere_err = 0, residual = 0;
  for (int k = 1; k <= 16; ++k) {
    residual = std::max(residual, sphere_residual(k, 1.2));
    for (double R : {0.3, 0.7, 1.2}) {
      plane_err = std::max(plane_err,
                           std::abs(radial_log_derivative(SurfaceMetric::plane(), k, R, 2, 1e-13) - k / R));
      sphere_err = std::max(sphere_err, std::abs(radial_log_derivative(SurfaceMetric::sphere(), k, R, 2, 1e-13) -
                                                 k / std::sin(R)));
    }
  }
  return {plane_err < 1e-10 && sphere_err < 1e-9 && residual < 1e-12,
          fmt("plane %.3g (< 1e-10), sphere %.3g (< 1e-9), rtol 1e-13", plane_err, sphere_err)};
}

struct SuiteRun {
  std::string surface;
  std::vector<VerificationCase> cases;
  std::vector<BoundReport> reports;
  int rejected = 0;
  int attempts = 0;
};

SuiteRun run_suite(const SurfaceMetric& s, double R0, std::vector<BoundFormula> formulas) {
  SuiteRun run;
  run.surface = s.name();
  const auto suite = random_domain_suite(s, 20, 3, 0.1, 42, R0);
  run.rejected = suite.rejected;
  run.attempts = suite.attempts;
  for (const auto& d : suite.domains) run.cases.push_back({s, d, l_range(2, 8), formulas, 1e-6, {}});
  run.reports = verify_cases(run.cases, 0);
  return run;
}

// Counts non-passing entries of the given formulas over converged cases.
struct SuiteTally {
  int converged = 0;
  int entries = 0;
  int failures = 0;
  double max_ratio = 0;
  double max_ratio_steep = 0;  // over cases with a >= 0.01
};

SuiteTally tally(const SuiteRun& run, const std::function<bool(BoundFormula)>& keep) {
  SuiteTally t;
  for (const auto& r : run.reports) {
    if (!r.solver_converged()) continue;
    ++t.converged;
    for (const auto& e : r.entries) {
      if (!keep(e.formula)) continue;
      ++t.entries;
      if (e.status != BoundStatus::Pass) ++t.failures;
      if (e.ratio) {
        t.max_ratio = std::max(t.max_ratio, *e.ratio);
        if (r.constants.a >= 0.01) t.max_ratio_steep = std::max(t.max_ratio_steep, *e.ratio);
      }
    }
  }
  return t;
}

bool is_main(BoundFormula f) {
  return f == BoundFormula::MainWarped || f == BoundFormula::ParaboloidMain;
}

Outcome main_suites(const std::vector<SuiteRun>& runs) {
  bool ok = true;
  std::string detail;
  for (const auto& run : runs) {
    const auto t = tally(run, is_main);
    // Equality rigidity: steep domains stay clear of ratio 1.
    const bool rigid = t.max_ratio_steep < 1 - 1e-3;
    ok = ok && t.failures == 0 && 2 * t.converged >= static_cast<int>(run.reports.size()) && rigid;
    detail += fmt("%s %d/%zu converged, %d entries, %d failed, max ratio %.4f; ", run.surface.c_str(),
                  t.converged, run.reports.size(), t.entries, t.failures, t.max_ratio);
  }
  return {ok, detail};
}

Outcome paraboloid_suite(const SuiteRun& run) {
  const auto t = tally(run, is_main);
  const auto p = SurfaceMetric::paraboloid();
  const auto r = verify_case({p, StarDomain::constant(0.9), l_range(2, 8), {BoundFormula::ParaboloidMain}, 1e-6, {}});
  double dev = 0;
  for (const auto& e : r.entries) dev = std::max(dev, std::abs(e.ratio.value_or(0) - 1));
  const bool ok = t.failures == 0 && 2 * t.converged >= static_cast<int>(run.reports.size()) &&
                  t.max_ratio_steep < 1 - 1e-3 && dev < 1e-7;
  return {ok, fmt("%d/%zu converged, %d entries, %d failed, max ratio %.4f; R const |ratio-1| %.3g (< 1e-7)",
                  t.converged, run.reports.size(), t.entries, t.failures, t.max_ratio, dev)};
}

Outcome sharpness() {
  const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
  const auto r = sharpness_study(SurfaceMetric::plane(), 1.0, {0, 0, 0, 1}, {}, eps, 2);
  bool increasing = true, converged = true;
  std::string ratios;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    converged = converged && r.points[i].converged;
    if (i > 0) increasing = increasing && r.points[i].ratio > r.points[i - 1].ratio;
    ratios += fmt("%.6f ", r.points[i].ratio);
  }
  const double gap = std::abs(r.limit - 1);
  return {converged && increasing && r.monotone && gap < 1e-3,
          fmt("ratios %s; monotone %s; extrapolated limit %.6f, |limit-1| = %.3g (< 1e-3)", ratios.c_str(),
              increasing ? "yes" : "no", r.limit, gap)};
}

Outcome catalog(const SuiteRun& plane_run) {
  double err = 0;
  for (double R : {0.5, 1.0, 1.7}) {
    const auto disc = StarDomain::constant(R);
    for (int k = 1; k <= 4; ++k) {
      for (const auto& b : bound_kuttler_sigillito(disc, k)) err = std::max(err, std::abs(b.value - k / R));
    }
    const auto consts = domain_constants(SurfaceMetric::plane(), disc);
    err = std::max(err, std::abs(bound_garcia_montano(consts).value - 1 / R));
    err = std::max(err, std::abs(bound_bramble_payne(disc).value - 1 / R));
  }
  const auto t = tally(plane_run, [](BoundFormula f) { return !is_main(f); });
  return {err < 1e-10 && t.failures == 0 && t.entries > 0,
          fmt("disc equality error %.3g (< 1e-10); plane suite %d catalog entries, %d failed", err, t.entries,
              t.failures)};
}

Outcome proof_steps() {
  struct Surface {
    SurfaceMetric metric;
    double R0;
  };
  const std::vector<Surface> surfaces = {{SurfaceMetric::plane(), 1.0},
                                         {SurfaceMetric::sphere(), 0.8},
                                         {SurfaceMetric::tanh(), 1.0},
                                         {SurfaceMetric::paraboloid(), 0.5}};
  int checks = 0, failed = 0, errors = 0;
  double worst_refinement = 0;
  std::mt19937_64 rng(2718);
  for (const auto& s : surfaces) {
    const auto suite = random_domain_suite(s.metric, 5, 3, 0.1, 314, s.R0);
    for (const auto& d : suite.domains) {
      for (int i = 0; i < 50; ++i) {
        const auto f = random_test_function(rng, 4);
        ++checks;
        try {
          const auto r = proof_step_check(s.metric, d, f);
          worst_refinement = std::max(worst_refinement, r.refinement_error);
          if (!r.all_pass()) ++failed;
        } catch (const NumericalError&) {
          ++errors;
        }
      }
    }
  }
  return {failed == 0 && errors == 0,
          fmt("%d checks, %d failed, %d under-resolved, worst refinement %.3g (< 1e-6)", checks, failed, errors,
              worst_refinement)};
}

Outcome fd_oracle() {
  const StarDomain d({1.0, 0.0, 0.2}, {});
  const auto spec = steklov_spectrum(SurfaceMetric::plane(), d, 4);
  const auto R = [](double t) { return 1 + 0.2 * std::cos(2 * t); };
  const auto dR = [](double t) { return -0.4 * std::sin(2 * t); };
  // Richardson from the 100 x 200 and 200 x 400 grids.
  const double fd = oracle::fd_steklov_richardson(R, dR, {100, 200}, 2);
  const double mu = spec.eigenvalues.at(1);
  const double rel = std::abs(mu - fd) / std::abs(fd);
  return {spec.converged && rel < 5e-4,
          fmt("solver %.8f, FD oracle %.8f, relative difference %.3g (< 5e-4)", mu, fd, rel)};
}

Outcome courant_fischer() {
  const StarDomain d({1.0, 0.0, 0.2}, {});
  SolverOptions opts;
  opts.gram_drop = 0;
  const int M = default_quad_points(32);
  const auto coarse = solve_at_order(SurfaceMetric::plane(), d, 16, M, opts);
  const auto fine = solve_at_order(SurfaceMetric::plane(), d, 32, M, opts);
  double worst = -INFINITY;
  for (int l = 0; l < 6; ++l) {
    worst = std::max(worst, fine.eigenvalues.at(l) - coarse.eigenvalues.at(l) -
                                1e-9 * (1 + coarse.eigenvalues.at(l)));
  }
  const bool nothing_dropped = coarse.regularization_drop == 0 && fine.regularization_drop == 0;
  return {nothing_dropped && worst <= 0,
          fmt("M = %d, dropped %d/%d, max (mu_K32 - mu_K16 - slack) = %.3g (<= 0)", M, coarse.regularization_drop,
              fine.regularization_drop, worst)};
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  };

  report(1, "disc oracle", disc_oracle);
  report(2, "cap oracle", cap_oracle);
  report(3, "Riccati closed forms", riccati_closed_forms);

  std::vector<SuiteRun> warped;
  report(4, "main bound on random warped domains", [&] {
    warped.push_back(run_suite(SurfaceMetric::plane(), 1.0, {}));
    warped.push_back(run_suite(SurfaceMetric::sphere(), 0.8, {BoundFormula::MainWarped}));
    warped.push_back(run_suite(SurfaceMetric::tanh(), 1.0, {BoundFormula::MainWarped}));
    return main_suites(warped);
  });
  report(5, "paraboloid bound", [] {
    return paraboloid_suite(run_suite(SurfaceMetric::paraboloid(), 0.5, {BoundFormula::ParaboloidMain}));
  });
  report(6, "sharpness", sharpness);
  report(7, "catalog consistency", [&] {
    if (warped.empty()) return Outcome{false, "plane suite unavailable"};
    return catalog(warped.front());
  });
  report(8, "proof-step inequalities", proof_steps);
  report(9, "independent FD oracle", fd_oracle);
  report(10, "Courant-Fischer monotonicity", courant_fischer);

  std::printf("%d of 10 criteria failed; total %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
