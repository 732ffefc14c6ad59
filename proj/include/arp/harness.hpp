#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arp/driver.hpp"
#include "arp/problems.hpp"

namespace arp {

inline constexpr int kTraceSchema = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- traces ----

struct TraceFile {
  std::string method;
  std::string problem;
  std::vector<IterationRecord> records;
};

std::string record_to_json(const IterationRecord& r, const std::string& method, const std::string& problem);
void write_trace(std::ostream& os, const std::vector<IterationRecord>& trace, const std::string& method,
                 const std::string& problem);
TraceFile read_trace(std::istream& is);

void write_dots_csv(std::ostream& os, const std::string& method, const std::string& problem,
                    const std::vector<DotRow>& rows, bool header = true);

// ---- metrics ----

enum class CostMetric { FunctionEvals, DerivativeEvals, SubproblemSolves };
std::string to_string(CostMetric m);
CostMetric cost_metric_from_string(const std::string& s);

inline constexpr double kUnsolved = std::numeric_limits<double>::infinity();

// Cumulative metric at the first record whose relative gap is below eps_f.
double cost_to_solution(const std::vector<IterationRecord>& trace, double f_best, double eps_f, CostMetric metric);

struct ProfileTable {
  std::vector<std::string> methods;
  std::vector<double> tau;
  std::vector<std::vector<double>> gamma;  // [method][tau]
  std::vector<double> f_best;              // per problem, when built from traces
  std::vector<std::size_t> dropped;        // problems no method solved
  std::size_t n_problems = 0;              // problems counted in the denominator
};

// costs[method][problem]; kUnsolved marks failure.
ProfileTable performance_profile(const std::vector<std::vector<double>>& costs, const std::vector<double>& tau,
                                 std::vector<std::string> methods = {});

// traces[method][problem]
ProfileTable profile_from_traces(const std::vector<std::string>& methods,
                                 const std::vector<std::vector<std::vector<IterationRecord>>>& traces, double eps_f,
                                 CostMetric metric, const std::vector<double>& tau);

void write_profile_csv(std::ostream& os, const ProfileTable& table, CostMetric metric, double eps_f, bool header = true);

// ---- experiments ----

struct MethodSpec {
  std::string name;
  RunConfig cfg;
  OracleMode mode = OracleMode::Explicit;
};

struct ProblemEntry {
  std::string label;
  std::string name;
  ProblemParams params;
  std::uint64_t seed = 0;
  std::string generation_file;  // rebuild from persisted data when set
};

struct ExperimentConfig {
  std::vector<MethodSpec> methods;
  std::vector<ProblemEntry> problems;
  std::vector<double> eps_f{1e-8};
  std::vector<double> tau{1, 2, 4, 8, 16, 32, 64};
  std::vector<CostMetric> metrics{CostMetric::FunctionEvals};
  std::string output_dir = "arp_out";
  int parallelism = 0;  // 0: runtime default
};

ExperimentConfig parse_experiment(const std::string& json_text);
std::vector<ProblemSpec> build_problems(const ExperimentConfig& cfg);

struct RunSummary {
  std::string method;
  std::string problem;
  std::string status;  // run status or "error"
  int iterations = 0;
  double f_final = 0.0;
  double grad_norm_final = 0.0;
  long n_f = 0;
  long n_deriv = 0;
  long n_subsolves = 0;
  std::string error;
  double wall_seconds = 0.0;
};

struct MatrixResult {
  // row-major over (method, problem)
  std::vector<RunSummary> summaries;
  std::vector<RunResult> results;
  std::size_t n_methods = 0;
  std::size_t n_problems = 0;
  bool partial_failure = false;

  const RunResult& at(std::size_t method, std::size_t problem) const { return results[method * n_problems + problem]; }
};

enum class Execution { Serial, Parallel };

MatrixResult run_matrix(const ExperimentConfig& cfg, const std::vector<ProblemSpec>& problems,
                        Execution exec = Execution::Parallel);

void write_summary_csv(std::ostream& os, const MatrixResult& m);
// Traces, summary, timings, persisted problem data and profile tables.
void write_outputs(const ExperimentConfig& cfg, const std::vector<ProblemSpec>& problems, const MatrixResult& m);

// Empty when the run's counters match its trace; otherwise a description.
std::optional<std::string> check_counters(const RunResult& r);

}  // namespace arp
