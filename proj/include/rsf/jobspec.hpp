#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "rsf/ensembles.hpp"
#include "rsf/expression.hpp"

namespace rsf {

/// Malformed job specification; exit code 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExpressionSpec {
  std::string name;
  Expression expr;
};

struct JobSpec {
  ModelMap ensembles;
  std::vector<ExpressionSpec> expressions;
  std::set<std::string> modes{"exact"};
  std::vector<int> N;
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out_path;
  std::string format = "json";
  long double max_terms = 1e8;
};

inline const std::set<std::string>& known_modes() {
  static const std::set<std::string> m{"exact", "asymptotic", "mc", "oracle", "verify"};
  return m;
}

/// Parses a JSON job specification; errors name the line (when text is given) and JSON path.
JobSpec parse_jobspec(const std::string& text);
JobSpec parse_jobspec(const nlohmann::json& j, const std::string& text = "");
JobSpec load_jobspec(const std::string& path);

/// One model descriptor: {"kind":"wishart","c":"1/2"} or {"kind":"wishart","D":{"A":[[1,0],[0,2]]}}.
EnsembleModel parse_model(const nlohmann::json& j);
/// Shorthand: goe, ginibre, wishart, wishart:c=1/2.
EnsembleModel parse_model_shorthand(const std::string& s);

struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

enum ExitCode { kPass = 0, kVerifyFailed = 1, kUsage = 2, kGuard = 3 };

RunResult run_job(const JobSpec& spec);
std::string report_csv(const nlohmann::json& report);
/// Writes the report to spec.out_path (if set) in spec.format; returns the text.
std::string render_report(const JobSpec& spec, const nlohmann::json& report);

}  // namespace rsf
