#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace steklov::numerics {

// Right-hand side y' = f(t, y); writes f into dydt.
using OdeRhs = std::function<void(double t, std::span<const double> y,
                                  std::span<double> dydt)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  // Initial step; <= 0 selects one automatically.
  double h_init = 0.0;
  std::size_t max_steps = 2'000'000;
  // Times in (t0, t1] the integrator lands on exactly. Must be increasing.
  std::vector<double> stops;
};

// Accepted step points of an integration with cubic Hermite dense output.
class Trajectory {
 public:
  Trajectory(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }

  std::span<const double> state(std::size_t i) const {
    return {states_.data() + i * dim_, dim_};
  }
  std::span<const double> derivative(std::size_t i) const {
    return {derivs_.data() + i * dim_, dim_};
  }
  std::span<const double> final_state() const { return state(size() - 1); }

  // State at t in [t0, t1]. Exact at step points, cubic Hermite between.
  std::vector<double> evaluate(double t) const;

  void push(double t, std::span<const double> y, std::span<const double> f);

  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;

 private:
  std::size_t dim_;
  std::vector<double> times_;
  std::vector<double> states_;
  std::vector<double> derivs_;
};

// Dormand-Prince 5(4) with PI step-size control. Requires t1 > t0 and
// rtol in [1e-13, 1e-3]. A trial step whose stages give a non-finite
// right-hand side is rejected and retried with a smaller step. Throws
// NumericalError on step underflow, on a non-finite right-hand side at the
// initial state, or when max_steps is exhausted.
Trajectory ode_solve(const OdeRhs& rhs, double t0, double t1,
                     std::span<const double> y0, const OdeOptions& options);

}  // namespace steklov::numerics
