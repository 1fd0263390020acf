#pragma once

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace steklov {

template <class F>
PeriodicExtremum periodic_maximum(const F& g, int grid) {
  const double step = 2 * std::numbers::pi / grid;
  int best = 0;
  double best_value = g(0.0);
  for (int i = 1; i < grid; ++i) {
    const double v = g(i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double centre = best * step;
  auto neg = [&g](double t) { return -g(t); };
  // Half the mantissa locates the argmax to ~1e-8; the extremal value is
  // then quadratic-accurate, far below 1e-10.
  const auto [theta, neg_value] = boost::math::tools::brent_find_minima(
      neg, centre - step, centre + step, std::numeric_limits<double>::digits / 2);
  if (-neg_value > best_value) return {theta, -neg_value};
  return {centre, best_value};
}

}  // namespace steklov
