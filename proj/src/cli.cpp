#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "orlicz_lab/errors.hpp"
#include "orlicz_lab/measure.hpp"
#include "orlicz_lab/orlicz.hpp"
#include "orlicz_lab/scenarios.hpp"
#include "orlicz_lab/young.hpp"

namespace orlicz_lab {

namespace {

YoungParams parse_young(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw config_error("--young expects 'p,q'");
  try {
    YoungParams a;
    a.p = std::stod(text.substr(0, comma));
    a.q = std::stod(text.substr(comma + 1));
    validate(a);
    return a;
  } catch (const std::exception& e) {
    throw config_error(std::string("--young: ") + e.what());
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"orlicz-lab: weighted Orlicz norms, degenerate Dirichlet "
               "solves and De Giorgi iteration at desk scale"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_dir, young_spec, field_path;
  double t_value = 0.0;

  CLI::App* run = app.add_subcommand("run", "run a verification scenario");
  run->add_option("--scenario", scenario,
                  "main0|main1|counterexample|expint|degiorgi-sweep")
      ->required();
  run->add_option("--config", config_path, "key=value config file")->required();
  run->add_option("--out", out_dir, "output directory (ORLICZ_LAB_OUT overrides)");

  CLI::App* norm = app.add_subcommand("norm", "Luxemburg norm of a field CSV");
  norm->add_option("--young", young_spec, "Young parameters 'p,q'")->required();
  norm->add_option("--field", field_path, "field CSV (coord,volume,weight,value)")
      ->required();

  CLI::App* conj =
      app.add_subcommand("conjugate", "numeric Legendre conjugate value");
  conj->add_option("--young", young_spec, "Young parameters 'p,q'")->required();
  conj->add_option("--t", t_value, "evaluation point")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      ScenarioConfig cfg = ScenarioConfig::parse_file(config_path);
      cfg.kv["scenario"] = scenario;
      const ScenarioResult res = run_scenario(cfg, out_dir);
      for (const Assertion& a : res.assertions)
        std::printf("[%s] %s  (lhs=%.6g rhs=%.6g)\n", a.pass ? "ok" : "FAIL",
                    a.name.c_str(), a.lhs, a.rhs);
      std::printf("%s: %s (%.2fs, outputs in %s)\n", res.scenario.c_str(),
                  res.pass ? "PASS" : "FAIL", res.runtime_seconds,
                  res.out_dir.c_str());
      return res.pass ? 0 : 1;
    }
    if (norm->parsed()) {
      const YoungParams a = parse_young(young_spec);
      FieldCsv fc;
      try {
        fc = read_field_csv(field_path);
      } catch (const std::exception& e) {
        throw config_error(std::string("--field: ") + e.what());
      }
      std::printf("%.12g\n", luxemburg_norm(fc.domain, fc.field, a).value);
      return 0;
    }
    if (conj->parsed()) {
      const YoungParams a = parse_young(young_spec);
      std::printf("%.12g\n", conjugate_eval(a, t_value));
      return 0;
    }
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const solver_error& e) {
    std::fprintf(stderr, "numerical failure: %s (residual %.3g after %d its)\n",
                 e.what(), e.residual, e.iterations);
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
  return 2;
}

}  // namespace orlicz_lab
