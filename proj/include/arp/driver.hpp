#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arp/subsolve.hpp"
#include "arp/update.hpp"

namespace arp {

enum class Strategy { Simple, SimplePlus, Interp, InterpPlus, Bgms };
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct Sigma0Policy {
  bool taylor = true;
  double value = 1.0;

  static Sigma0Policy constant(double v) { return {false, v}; }
  static Sigma0Policy from_taylor() { return {true, 0.0}; }
};

enum class StopVerdict { Continue, Stop, Abort };
using StopRule = std::function<StopVerdict(const Vector& x, double f, const Vector& g)>;

struct RunConfig {
  int p = 3;
  double eps = 1e-8;
  int max_iter = 1000;
  Sigma0Policy sigma0;
  Strategy strategy = Strategy::Simple;
  SimpleParams simple;
  InterpParams interp;
  BgmsParams bgms;
  TerminationCondition tc = TerminationCondition::absolute(1e-9);
  // p = 2: the subproblem solver; p = 3: the solver inside the inner AR2 run.
  Ar2Solver ar2_solver = Ar2Solver::Mcm;
  int max_krylov = 0;
  InnerConfig inner;
  std::uint64_t seed = 0;
  // Replaces the gradient-norm test when set (used by inner runs).
  StopRule stop;

  void validate() const;
};

enum class RunStatus { FirstOrderPoint, IterLimit, NumericalError };
std::string to_string(RunStatus s);
RunStatus run_status_from_string(const std::string& s);

struct IterationRecord {
  int k = 0;
  double sigma = 0.0;
  double f = 0.0;
  double grad_norm = 0.0;
  std::optional<double> step_norm;
  std::optional<double> rho;
  Outcome outcome = Outcome::FinalIterate;
  // counts at the moment x_k was reached (before iteration k's trial)
  long n_f = 0;
  long n_deriv = 0;
  long n_subsolves = 0;
};

struct RunResult {
  RunStatus status = RunStatus::NumericalError;
  Vector x_final;
  double f_final = 0.0;
  double grad_norm_final = 0.0;
  int iterations = 0;
  std::vector<IterationRecord> trace;
  EvalCounters counters;
  long n_subsolves = 0;
  bool used_taylor_sigma0 = false;
  long sigma0_evaluations = 0;
  double sigma0 = 0.0;
  double wall_seconds = 0.0;
};

RunResult minimize(Oracle& oracle, const Vector& x0, const RunConfig& cfg);

struct DotRow {
  int k;
  double gap;
  double sigma;
  std::string marker;  // diamond | circle | empty_circle | triangle
};

std::string marker_for(Outcome o);
std::vector<DotRow> trace_to_dotplot_data(const RunResult& result, double f_star);
std::vector<DotRow> trace_to_dotplot_data(const std::vector<IterationRecord>& trace, double f_star);

}  // namespace arp
