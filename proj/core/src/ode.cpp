#include "steklov/numerics/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "steklov/errors.hpp"

namespace steklov::numerics {

void Trajectory::push(double t, std::span<const double> y,
                      std::span<const double> f) {
  times_.push_back(t);
  states_.insert(states_.end(), y.begin(), y.end());
  derivs_.insert(derivs_.end(), f.begin(), f.end());
}

std::vector<double> Trajectory::evaluate(double t) const {
  if (times_.empty()) throw InvalidArgument("empty trajectory");
  const double lo = times_.front();
  const double hi = times_.back();
  if (t < lo || t > hi) {
    throw DomainRangeError("trajectory evaluated at " + std::to_string(t) +
                           " outside [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  std::size_t j = static_cast<std::size_t>(it - times_.begin());
  if (*it == t) {
    auto s = state(j);
    return {s.begin(), s.end()};
  }
  const std::size_t i = j - 1;
  const double h = times_[j] - times_[i];
  const double s = (t - times_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  std::vector<double> out(dim_);
  auto y0 = state(i), y1 = state(j), f0 = derivative(i), f1 = derivative(j);
  for (std::size_t d = 0; d < dim_; ++d) {
    out[d] = h00 * y0[d] + h10 * h * f0[d] + h01 * y1[d] + h11 * h * f1[d];
  }
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kInf = std::numeric_limits<double>::infinity();

// PI controller constants.
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;   // largest shrink: h / 5
constexpr double kFacMax = 10.0;  // largest growth: 10 h

class Stepper {
 public:
  Stepper(const OdeRhs& rhs, std::size_t n, Trajectory& traj)
      : rhs_(rhs), n_(n), traj_(traj) {
    for (auto& k : k_) k.resize(n);
    tmp_.resize(n);
  }

  // False when the right-hand side is not finite, e.g. a trial stage left
  // the region where the equation is defined.
  bool try_eval(double t, std::span<const double> y, std::span<double> f) {
    rhs_(t, y, f);
    ++traj_.rhs_evaluations;
    return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
  }

  void eval(double t, std::span<const double> y, std::span<double> f) {
    if (!try_eval(t, y, f)) {
      throw NumericalError("non-finite right-hand side at t = " + std::to_string(t));
    }
  }

  // One trial step from (t, y) with derivative k_[0] = f(t, y). Writes the
  // 5th-order solution into y_new, its derivative into k_[6], returns the
  // scaled error norm (infinite when a stage could not be evaluated).
  double attempt(double t, double h, const std::vector<double>& y,
                 std::vector<double>& y_new, double rtol, double atol) {
    auto& k1 = k_[0];
    auto& k2 = k_[1];
    auto& k3 = k_[2];
    auto& k4 = k_[3];
    auto& k5 = k_[4];
    auto& k6 = k_[5];
    auto& k7 = k_[6];
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h * a21 * k1[i];
    if (!try_eval(t + c2 * h, tmp_, k2)) return kInf;
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    if (!try_eval(t + c3 * h, tmp_, k3)) return kInf;
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    if (!try_eval(t + c4 * h, tmp_, k4)) return kInf;
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] =
          y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    if (!try_eval(t + c5 * h, tmp_, k5)) return kInf;
    for (std::size_t i = 0; i < n_; ++i)
      tmp_[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    if (!try_eval(t + h, tmp_, k6)) return kInf;
    for (std::size_t i = 0; i < n_; ++i)
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                             a75 * k5[i] + a76 * k6[i]);
    if (!try_eval(t + h, y_new, k7)) return kInf;

    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                              e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      sum += (err / sc) * (err / sc);
    }
    return std::sqrt(sum / static_cast<double>(n_));
  }

  std::array<std::vector<double>, 7> k_;

 private:
  const OdeRhs& rhs_;
  std::size_t n_;
  Trajectory& traj_;
  std::vector<double> tmp_;
};

double rms_scaled(std::span<const double> v, std::span<const double> y,
                  double rtol, double atol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sc = atol + rtol * std::abs(y[i]);
    sum += (v[i] / sc) * (v[i] / sc);
  }
  return std::sqrt(sum / static_cast<double>(v.size()));
}

// Starting step heuristic of Hairer, Norsett and Wanner.
double initial_step(Stepper& st, double t0, double span,
                    const std::vector<double>& y0, double rtol, double atol) {
  const auto& f0 = st.k_[0];
  const double dnf = rms_scaled(f0, y0, rtol, atol);
  const double dny = rms_scaled(y0, y0, rtol, atol);
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 * span
                                            : 0.01 * std::sqrt(dny / dnf);
  h = std::min(h, span);
  std::vector<double> y1(y0.size()), f1(y0.size());
  while (true) {
    for (std::size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + h * f0[i];
    if (st.try_eval(t0 + h, y1, f1)) break;
    h *= 0.1;
    if (h < 1e-12 * span) throw NumericalError("ode_solve cannot take a first step");
  }
  std::vector<double> diff(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) diff[i] = f1[i] - f0[i];
  const double der2 = rms_scaled(diff, y0, rtol, atol) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6 * span, h * 1e-3)
                                   : std::pow(0.01 / der12, 0.2);
  return std::min({100 * h, h1, span});
}

}  // namespace

Trajectory ode_solve(const OdeRhs& rhs, double t0, double t1,
                     std::span<const double> y0, const OdeOptions& options) {
  if (!(t1 > t0)) throw InvalidArgument("ode_solve requires t1 > t0");
  if (!(options.rtol >= 1e-13 && options.rtol <= 1e-3)) {
    throw InvalidArgument("ode_solve rtol must lie in [1e-13, 1e-3]");
  }
  if (!(options.atol > 0)) throw InvalidArgument("ode_solve atol must be > 0");
  if (y0.empty()) throw InvalidArgument("ode_solve needs a non-empty state");

  std::vector<double> stops;
  stops.reserve(options.stops.size() + 1);
  for (double s : options.stops) {
    if (s <= t0 || s > t1) {
      throw InvalidArgument("ode_solve stop outside (t0, t1]");
    }
    if (!stops.empty() && s <= stops.back()) {
      throw InvalidArgument("ode_solve stops must be strictly increasing");
    }
    stops.push_back(s);
  }
  if (stops.empty() || stops.back() != t1) stops.push_back(t1);

  const std::size_t n = y0.size();
  Trajectory traj(n);
  Stepper st(rhs, n, traj);
  std::vector<double> y(y0.begin(), y0.end()), y_new(n);

  double t = t0;
  st.eval(t, y, st.k_[0]);
  traj.push(t, y, st.k_[0]);

  const double span = t1 - t0;
  double h = options.h_init > 0
                 ? std::min(options.h_init, span)
                 : initial_step(st, t0, span, y, options.rtol, options.atol);
  double fac_old = 1e-4;
  bool last_rejected = false;
  std::size_t next_stop = 0;

  while (next_stop < stops.size()) {
    if (traj.accepted_steps + traj.rejected_steps >= options.max_steps) {
      throw NumericalError("ode_solve exceeded max_steps");
    }
    const double target = stops[next_stop];
    const double min_step =
        16 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-300);
    if (h < min_step) {
      throw NumericalError("ode_solve step size underflow at t = " +
                           std::to_string(t));
    }
    bool landing = false;
    double h_try = h;
    if (t + h_try >= target - 4 * std::numeric_limits<double>::epsilon() *
                                  std::abs(target)) {
      h_try = target - t;
      landing = true;
    }

    const double err = st.attempt(t, h_try, y, y_new, options.rtol, options.atol);
    if (!std::isfinite(err)) {
      h = h_try * kFacMin;
      ++traj.rejected_steps;
      last_rejected = true;
      continue;
    }
    const double fac11 = std::pow(std::max(err, 1e-300), kExpo);
    if (err <= 1.0) {
      double fac = fac11 / std::pow(fac_old, kBeta);
      fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
      double h_new = h_try / fac;
      if (last_rejected) h_new = std::min(h_new, h_try);
      fac_old = std::max(err, 1e-4);
      t = landing ? target : t + h_try;
      y.swap(y_new);
      std::swap(st.k_[0], st.k_[6]);
      traj.push(t, y, st.k_[0]);
      ++traj.accepted_steps;
      last_rejected = false;
      if (landing) {
        ++next_stop;
        // A step clipped to land on a stop says nothing about the natural
        // step size, so keep the larger of the two.
        h = std::max(h, h_new);
      } else {
        h = h_new;
      }
    } else {
      h = h_try / std::min(1.0 / kFacMin, fac11 / kSafety);
      ++traj.rejected_steps;
      last_rejected = true;
    }
  }
  return traj;
}

}  // namespace steklov::numerics
