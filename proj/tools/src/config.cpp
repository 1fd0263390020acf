#include "steklov_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "steklov_cli/output.hpp"

namespace steklov::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
  throw ConfigError(std::string(key) + ": cannot read '" + std::string(value) + "' as " +
                    std::string(what));
}

template <class T>
T parse_number(std::string_view key, std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad_value(key, text, what);
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) bad_value(key, text, "a finite number");
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    bad_value(key, text, "a list [a, b, ...]");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<std::string_view> items;
  if (text.empty()) return items;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (item.empty()) bad_value(key, text, "a list without empty items");
    items.push_back(item);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return items;
}

template <class T>
std::string format_list(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(values[i]);
    } else {
      out += values[i];
    }
  }
  return out + "]";
}

std::string parse_word(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.empty() || text.find_first_of(" \t[],=#") != std::string_view::npos) {
    bad_value(key, text, "a single word");
  }
  return std::string(text);
}

struct Field {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> read;
  std::function<std::optional<std::string>(const RunConfig&)> write;
};

Field field(std::string_view key, double RunConfig::*m) {
  return {key, [=](RunConfig& c, std::string_view v) { c.*m = parse_number<double>(key, v, "a number"); },
          [=](const RunConfig& c) -> std::optional<std::string> { return format_double(c.*m); }};
}

Field field(std::string_view key, int RunConfig::*m) {
  return {key, [=](RunConfig& c, std::string_view v) { c.*m = parse_number<int>(key, v, "an integer"); },
          [=](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.*m); }};
}

Field field(std::string_view key, std::uint64_t RunConfig::*m) {
  return {key,
          [=](RunConfig& c, std::string_view v) {
            c.*m = parse_number<std::uint64_t>(key, v, "an unsigned integer");
          },
          [=](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.*m); }};
}

Field field(std::string_view key, std::optional<double> RunConfig::*m) {
  return {key, [=](RunConfig& c, std::string_view v) { c.*m = parse_number<double>(key, v, "a number"); },
          [=](const RunConfig& c) -> std::optional<std::string> {
            if (!(c.*m)) return std::nullopt;
            return format_double(*(c.*m));
          }};
}

Field field(std::string_view key, std::string RunConfig::*m) {
  return {key, [=](RunConfig& c, std::string_view v) { c.*m = parse_word(key, v); },
          [=](const RunConfig& c) -> std::optional<std::string> { return c.*m; }};
}

Field field(std::string_view key, std::optional<std::string> RunConfig::*m) {
  return {key,
          [=](RunConfig& c, std::string_view v) {
            const auto t = trim(v);
            if (t.empty()) bad_value(key, v, "a path");
            c.*m = std::string(t);
          },
          [=](const RunConfig& c) -> std::optional<std::string> { return c.*m; }};
}

Field field(std::string_view key, std::vector<double> RunConfig::*m) {
  return {key,
          [=](RunConfig& c, std::string_view v) {
            std::vector<double> out;
            for (auto item : split_list(key, v)) out.push_back(parse_number<double>(key, item, "a number"));
            c.*m = std::move(out);
          },
          [=](const RunConfig& c) -> std::optional<std::string> {
            if ((c.*m).empty()) return std::nullopt;
            return format_list(c.*m);
          }};
}

Field field(std::string_view key, std::vector<std::string> RunConfig::*m) {
  return {key,
          [=](RunConfig& c, std::string_view v) {
            std::vector<std::string> out;
            for (auto item : split_list(key, v)) out.push_back(parse_word(key, item));
            c.*m = std::move(out);
          },
          [=](const RunConfig& c) -> std::optional<std::string> {
            if ((c.*m).empty()) return std::nullopt;
            return format_list(c.*m);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      field("surface.kind", &RunConfig::surface_kind),
      field("surface.domain_max", &RunConfig::surface_domain_max),
      field("surface.knots", &RunConfig::surface_knots),
      field("surface.values", &RunConfig::surface_values),
      field("domain.radius", &RunConfig::domain_radius),
      field("domain.cos", &RunConfig::domain_cos),
      field("domain.sin", &RunConfig::domain_sin),
      field("ball.R", &RunConfig::ball_R),
      field("ball.n", &RunConfig::ball_n),
      field("ball.count", &RunConfig::ball_count),
      field("spectrum.l_max", &RunConfig::spectrum_l_max),
      field("solver.K_init", &RunConfig::solver_K_init),
      field("solver.K_cap", &RunConfig::solver_K_cap),
      field("solver.tol", &RunConfig::solver_tol),
      field("solver.gram_drop", &RunConfig::solver_gram_drop),
      field("solver.rtol", &RunConfig::solver_rtol),
      field("verify.l_min", &RunConfig::verify_l_min),
      field("verify.l_max", &RunConfig::verify_l_max),
      field("verify.formulas", &RunConfig::verify_formulas),
      field("verify.rel_slack", &RunConfig::verify_rel_slack),
      field("verify.random.count", &RunConfig::verify_random_count),
      field("verify.random.max_mode", &RunConfig::verify_random_max_mode),
      field("verify.random.max_eps", &RunConfig::verify_random_max_eps),
      field("verify.random.seed", &RunConfig::verify_random_seed),
      field("verify.random.R0", &RunConfig::verify_random_R0),
      field("sweep.R0", &RunConfig::sweep_R0),
      field("sweep.cos", &RunConfig::sweep_cos),
      field("sweep.sin", &RunConfig::sweep_sin),
      field("sweep.eps", &RunConfig::sweep_eps),
      field("sweep.l", &RunConfig::sweep_l),
      field("run.jobs", &RunConfig::run_jobs),
      field("output.json", &RunConfig::output_json),
      field("output.csv", &RunConfig::output_csv),
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::map<std::string_view, const Field*> by_key;
  for (const auto& f : fields()) by_key.emplace(f.key, &f);

  RunConfig config;
  std::map<std::string, int> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (auto [pos, fresh] = seen.emplace(key, line_no); !fresh) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' already set on line " + std::to_string(pos->second));
    }
    it->second->read(config, trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    if (auto v = f.write(config)) {
      out += f.key;
      out += " = ";
      out += *v;
      out += '\n';
    }
  }
  return out;
}

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> keys;
  for (const auto& f : fields()) keys.push_back(f.key);
  return keys;
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : emit_config(config)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SurfaceMetric make_surface(const RunConfig& c) {
  const auto& kind = c.surface_kind;
  const bool spline = kind == "spline";
  if (!spline && (!c.surface_knots.empty() || !c.surface_values.empty())) {
    throw ConfigError("surface.knots / surface.values only apply to surface.kind = spline");
  }
  if (kind == "paraboloid") {
    if (c.surface_domain_max) throw ConfigError("the paraboloid takes no surface.domain_max");
    return SurfaceMetric::paraboloid();
  }
  if (spline) {
    if (c.surface_domain_max) {
      throw ConfigError("a spline warp ends at its last knot; drop surface.domain_max");
    }
    return SurfaceMetric(WarpFunction::spline(c.surface_knots, c.surface_values));
  }
  if (kind == "plane") {
    return SurfaceMetric(c.surface_domain_max ? WarpFunction::plane(*c.surface_domain_max)
                                              : WarpFunction::plane());
  }
  if (kind == "sphere") {
    return SurfaceMetric(c.surface_domain_max ? WarpFunction::sphere(*c.surface_domain_max)
                                              : WarpFunction::sphere());
  }
  if (kind == "tanh") {
    return SurfaceMetric(c.surface_domain_max ? WarpFunction::tanh(*c.surface_domain_max)
                                              : WarpFunction::tanh());
  }
  throw ConfigError("unknown surface.kind '" + kind + "'");
}

StarDomain make_domain(const RunConfig& c) {
  if (c.domain_radius && (!c.domain_cos.empty() || !c.domain_sin.empty())) {
    throw ConfigError("give either domain.radius or domain.cos/domain.sin, not both");
  }
  if (c.domain_radius) return StarDomain::constant(*c.domain_radius);
  if (c.domain_cos.empty()) throw ConfigError("missing domain.radius or domain.cos");
  return StarDomain(c.domain_cos, c.domain_sin);
}

SolverOptions make_solver(const RunConfig& c) {
  SolverOptions o;
  o.K_init = c.solver_K_init;
  o.K_cap = c.solver_K_cap;
  o.tol = c.solver_tol;
  o.gram_drop = c.solver_gram_drop;
  o.rtol = c.solver_rtol;
  return o;
}

}  // namespace steklov::cli
