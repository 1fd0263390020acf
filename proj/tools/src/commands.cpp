#include "steklov_cli/commands.hpp"

#include <iostream>

#include "steklov/bounds.hpp"
#include "steklov/radial.hpp"
#include "steklov/verify.hpp"
#include "steklov/version.hpp"

namespace steklov::cli {

namespace {

Json meta(std::string_view command, const RunConfig& config) {
  Json m;
  m["tool"] = "steklov";
  m["version"] = std::string(kVersion);
  m["command"] = std::string(command);
  m["config_hash"] = config_hash(config);
  return m;
}

CsvWriter csv_for(const RunConfig& config, std::vector<std::string> columns) {
  return CsvWriter(kVersion, config_hash(config), std::move(columns));
}

Json surface_json(const SurfaceMetric& surface) {
  Json s;
  s["kind"] = surface.is_warped() ? std::string(to_string(surface.warp().kind())) : "paraboloid";
  s["name"] = surface.name();
  if (surface.is_warped()) s["domain_max"] = surface.warp().domain_max();
  return s;
}

Json domain_json(const StarDomain& domain) {
  Json d;
  d["cos"] = domain.fourier_cos();
  d["sin"] = domain.fourier_sin();
  return d;
}

Json constants_json(const DomainConstants& c) {
  Json j;
  j["R_m"] = c.R_m;
  j["R_M"] = c.R_M;
  j["a"] = c.a;
  j["alpha"] = c.alpha;
  return j;
}

bool has_domain(const RunConfig& c) {
  return c.domain_radius.has_value() || !c.domain_cos.empty() || !c.domain_sin.empty();
}

}  // namespace

RunConfig apply_overrides(RunConfig config, const Overrides& o) {
  if (o.out_json) config.output_json = o.out_json;
  if (o.out_csv) config.output_csv = o.out_csv;
  if (o.jobs) config.run_jobs = *o.jobs;
  if (o.seed) config.verify_random_seed = *o.seed;
  return config;
}

CommandOutput cmd_ball_spectrum(const RunConfig& config) {
  const auto surface = make_surface(config);
  double R = 0;
  if (config.ball_R) {
    R = *config.ball_R;
  } else if (has_domain(config)) {
    R = domain_constants(surface, make_domain(config)).R_m;
  } else {
    throw ConfigError("ball-spectrum needs ball.R or a domain");
  }
  const auto ball = ball_spectrum(surface, R, config.ball_count, config.ball_n, config.solver_rtol);

  CommandOutput out;
  out.json["meta"] = meta("ball-spectrum", config);
  out.json["surface"] = surface_json(surface);
  out.json["R"] = ball.R;
  out.json["n"] = ball.n;
  out.json["eigenvalues"] = ball.eigenvalues;
  out.json["modes"] = ball.modes;

  auto csv = csv_for(config, {"l", "mode", "eigenvalue"});
  for (std::size_t i = 0; i < ball.eigenvalues.size(); ++i) {
    csv.cell(static_cast<long>(i + 1)).cell(ball.modes[i]).cell(ball.eigenvalues[i]).end_row();
  }
  out.csv = csv.text();
  return out;
}

CommandOutput cmd_spectrum(const RunConfig& config) {
  const auto surface = make_surface(config);
  const auto domain = make_domain(config);
  const auto spec = steklov_spectrum(surface, domain, config.spectrum_l_max, make_solver(config));

  CommandOutput out;
  out.exit_code = spec.converged ? kExitOk : kExitNumerical;
  out.json["meta"] = meta("spectrum", config);
  out.json["surface"] = surface_json(surface);
  out.json["domain"] = domain_json(domain);
  out.json["constants"] = constants_json(domain_constants(surface, domain));
  out.json["eigenvalues"] = spec.eigenvalues;
  out.json["clusters"] = eigenvalue_clusters(spec.eigenvalues);
  out.json["K_used"] = spec.K_used;
  out.json["quad_points"] = spec.quad_points;
  out.json["regularization_drop"] = spec.regularization_drop;
  out.json["converged"] = spec.converged;
  out.json["est_error"] = spec.est_error;

  auto csv = csv_for(config, {"l", "mu"});
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    csv.cell(static_cast<long>(i + 1)).cell(spec.eigenvalues[i]).end_row();
  }
  out.csv = csv.text();
  return out;
}

CommandOutput cmd_verify(const RunConfig& config) {
  const auto surface = make_surface(config);
  if (config.verify_l_min < 1 || config.verify_l_max < config.verify_l_min) {
    throw ConfigError("verify needs 1 <= verify.l_min <= verify.l_max");
  }
  std::vector<BoundFormula> formulas;
  for (const auto& name : config.verify_formulas) {
    formulas.push_back(bound_formula_from_string(name));
  }
  std::vector<int> l_range;
  for (int l = config.verify_l_min; l <= config.verify_l_max; ++l) l_range.push_back(l);

  std::vector<StarDomain> domains;
  if (has_domain(config)) domains.push_back(make_domain(config));
  std::optional<DomainSuite> suite;
  if (config.verify_random_count > 0) {
    suite = random_domain_suite(surface, config.verify_random_count,
                                config.verify_random_max_mode, config.verify_random_max_eps,
                                config.verify_random_seed, config.verify_random_R0);
    for (const auto& d : suite->domains) domains.push_back(d);
  }
  if (domains.empty()) {
    throw ConfigError("verify needs a domain or verify.random.count > 0");
  }

  std::vector<VerificationCase> cases;
  for (const auto& d : domains) {
    cases.push_back({surface, d, l_range, formulas, config.verify_rel_slack, make_solver(config)});
  }
  const auto reports = verify_cases(cases, config.run_jobs);

  CommandOutput out;
  out.json["meta"] = meta("verify", config);
  out.json["surface"] = surface_json(surface);
  if (suite) {
    Json s;
    s["count"] = config.verify_random_count;
    s["seed"] = config.verify_random_seed;
    s["attempts"] = suite->attempts;
    s["rejected"] = suite->rejected;
    s["rejection_rate"] = suite->rejection_rate();
    out.json["random_suite"] = s;
  }
  auto csv = csv_for(config, {"case", "formula", "l", "mu", "bound", "ratio", "pass", "est_error"});
  int passed = 0, failed = 0, inconclusive = 0, undefined = 0;
  Json case_list = Json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    passed += r.passed;
    failed += r.failed;
    inconclusive += r.inconclusive;
    undefined += r.undefined;
    Json c;
    c["case"] = i;
    c["domain"] = domain_json(cases[i].domain);
    c["constants"] = constants_json(r.constants);
    c["K_used"] = r.spectrum.K_used;
    c["converged"] = r.spectrum.converged;
    c["est_error"] = r.spectrum.est_error;
    Json entries = Json::array();
    for (const auto& e : r.entries) {
      Json j;
      j["formula"] = std::string(to_string(e.formula));
      j["l"] = e.l;
      j["mu"] = e.mu;
      j["bound"] = e.bound;
      j["ratio"] = e.ratio ? Json(*e.ratio) : Json(nullptr);
      j["pass"] = std::string(to_string(e.status));
      j["est_error"] = e.est_error;
      entries.push_back(std::move(j));

      csv.cell(static_cast<long>(i)).cell(to_string(e.formula)).cell(e.l).cell(e.mu).cell(e.bound);
      if (e.ratio) {
        csv.cell(*e.ratio);
      } else {
        csv.empty();
      }
      csv.cell(to_string(e.status)).cell(e.est_error).end_row();
    }
    c["entries"] = std::move(entries);
    case_list.push_back(std::move(c));
  }
  out.json["cases"] = std::move(case_list);
  Json summary;
  summary["cases"] = reports.size();
  summary["passed"] = passed;
  summary["failed"] = failed;
  summary["inconclusive"] = inconclusive;
  summary["undefined"] = undefined;
  out.json["summary"] = summary;
  out.csv = csv.text();
  out.exit_code = failed > 0 ? kExitVerification : undefined > 0 ? kExitNumerical : kExitOk;
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config) {
  const auto surface = make_surface(config);
  if (config.sweep_cos.empty() && config.sweep_sin.empty()) {
    throw ConfigError("sweep needs a perturbation in sweep.cos / sweep.sin");
  }
  const auto result = sharpness_study(surface, config.sweep_R0, config.sweep_cos,
                                      config.sweep_sin, config.sweep_eps, config.sweep_l,
                                      make_solver(config));
  bool all_converged = true;
  CommandOutput out;
  out.json["meta"] = meta("sweep", config);
  out.json["surface"] = surface_json(surface);
  out.json["l"] = config.sweep_l;
  Json points = Json::array();
  auto csv = csv_for(config, {"eps", "ratio", "mu", "bound", "source"});
  for (const auto& p : result.points) {
    all_converged = all_converged && p.converged;
    Json j;
    j["eps"] = p.eps;
    j["mu"] = p.mu;
    j["bound"] = p.bound;
    j["ratio"] = p.ratio;
    j["converged"] = p.converged;
    points.push_back(std::move(j));
    csv.cell(p.eps).cell(p.ratio).cell(p.mu).cell(p.bound).cell("computed").end_row();
  }
  csv.cell(0.0).cell(result.limit).empty().empty().cell("richardson").end_row();
  out.json["points"] = std::move(points);
  out.json["limit"] = result.limit;
  out.json["monotone"] = result.monotone;
  out.csv = csv.text();
  out.exit_code = all_converged ? kExitOk : kExitNumerical;
  return out;
}

int run_command(std::string_view name, const RunConfig& config) {
  try {
    CommandOutput out;
    if (name == "ball-spectrum") {
      out = cmd_ball_spectrum(config);
    } else if (name == "spectrum") {
      out = cmd_spectrum(config);
    } else if (name == "verify") {
      out = cmd_verify(config);
    } else if (name == "sweep") {
      out = cmd_sweep(config);
    } else {
      std::cerr << "error: unknown command '" << name << "'\n";
      return kExitUsage;
    }
    const std::string json = dump_json(out.json);
    if (config.output_json) {
      write_text_file(*config.output_json, json);
    } else {
      std::cout << json;
    }
    if (config.output_csv) write_text_file(*config.output_csv, out.csv);
    return out.exit_code;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace steklov::cli
