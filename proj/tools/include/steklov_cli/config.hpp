#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/dtn_solver.hpp"
#include "steklov/errors.hpp"
#include "steklov/geometry.hpp"

namespace steklov::cli {

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Flat key=value run configuration. Every key maps to one member; the
// canonical text written by emit_config lists keys in a fixed order and
// parses back to an equal RunConfig.
struct RunConfig {
  std::string surface_kind = "plane";  // plane | sphere | tanh | spline | paraboloid
  std::optional<double> surface_domain_max;
  std::vector<double> surface_knots;
  std::vector<double> surface_values;

  std::optional<double> domain_radius;
  std::vector<double> domain_cos;
  std::vector<double> domain_sin;

  std::optional<double> ball_R;  // default: R_m of the configured domain
  int ball_n = 2;
  int ball_count = 9;

  int spectrum_l_max = 9;

  int solver_K_init = 16;
  int solver_K_cap = 512;
  double solver_tol = 1e-8;
  double solver_gram_drop = 1e-12;
  double solver_rtol = 1e-11;

  int verify_l_min = 2;
  int verify_l_max = 8;
  std::vector<std::string> verify_formulas;  // empty: every applicable formula
  double verify_rel_slack = 1e-6;
  int verify_random_count = 0;
  int verify_random_max_mode = 3;
  double verify_random_max_eps = 0.1;
  std::uint64_t verify_random_seed = 42;
  double verify_random_R0 = 1.0;

  double sweep_R0 = 1.0;
  std::vector<double> sweep_cos;
  std::vector<double> sweep_sin;
  std::vector<double> sweep_eps;
  int sweep_l = 2;

  int run_jobs = 0;  // 0: hardware concurrency

  std::optional<std::string> output_json;
  std::optional<std::string> output_csv;

  bool operator==(const RunConfig&) const = default;
};

// Lines are `key = value`; `#` starts a comment; lists are `[a, b, c]`.
// Unknown or repeated keys and malformed values throw ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& config);

// Keys accepted by parse_config, in canonical order.
std::vector<std::string_view> config_keys();

// 64-bit FNV-1a of the canonical text, as 16 lowercase hex digits.
std::string config_hash(const RunConfig& config);

SurfaceMetric make_surface(const RunConfig& config);
// Requires exactly one of domain.radius and domain.cos.
StarDomain make_domain(const RunConfig& config);
SolverOptions make_solver(const RunConfig& config);

}  // namespace steklov::cli
