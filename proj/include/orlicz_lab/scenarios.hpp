#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace orlicz_lab {

/// Flat key=value configuration ('#' starts a comment).  Keys are
/// documented in the README; unknown keys are kept but ignored.
struct ScenarioConfig {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const;
  std::string get_str(const std::string& key, const std::string& def) const;
  double get_real(const std::string& key, double def) const;
  int get_int(const std::string& key, int def) const;
  bool get_bool(const std::string& key, bool def) const;
  std::vector<int> get_int_list(const std::string& key,
                                const std::vector<int>& def) const;

  static ScenarioConfig parse_file(const std::string& path);
  static ScenarioConfig parse_string(const std::string& text);
};

/// One machine-checked inequality with its tolerance, as written to the
/// JSON summary.
struct Assertion {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ScenarioResult {
  std::string scenario;
  bool pass = false;
  bool not_applicable = false;
  std::vector<Assertion> assertions;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  /// additional deterministic artifacts (filename, full content)
  std::vector<std::pair<std::string, std::string>> extra_csv;
  double runtime_seconds = 0.0;
  std::string out_dir;
};

ScenarioResult run_main0(const ScenarioConfig& cfg);
ScenarioResult run_main1(const ScenarioConfig& cfg);
ScenarioResult run_counterexample(const ScenarioConfig& cfg);
ScenarioResult run_expint(const ScenarioConfig& cfg);
ScenarioResult run_degiorgi_sweep(const ScenarioConfig& cfg);

/// Dispatch by cfg["scenario"], write <scenario>.csv and
/// <scenario>_summary.json under the resolved output directory
/// (ORLICZ_LAB_OUT env var > out_override > cfg "out" > "./out").
ScenarioResult run_scenario(const ScenarioConfig& cfg,
                            const std::string& out_override = "");

int cli_main(int argc, const char* const* argv);

}  // namespace orlicz_lab
