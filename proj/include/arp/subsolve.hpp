#pragma once

#include <functional>
#include <limits>
#include <string>

#include "arp/model.hpp"

namespace arp {

struct TerminationCondition {
  enum class Kind { Absolute, Relative, GeneralizedNorm };
  Kind kind = Kind::Absolute;
  double value = 1e-9;

  static TerminationCondition absolute(double eps) { return {Kind::Absolute, eps}; }
  static TerminationCondition relative(double theta) { return {Kind::Relative, theta}; }
  static TerminationCondition generalized(double theta);
};

std::string to_string(const TerminationCondition& tc);

// grad_m: |grad m(s)|, grad_t: |grad t(s)|.
bool tc_holds(const TerminationCondition& tc, double grad_m, double grad_t, double step_norm, double sigma, int p);
bool tc_holds(const TerminationCondition& tc, const RegularizedModel& m, const Vector& s);

enum class SolveStatus { Converged, IterLimit, Failure };
std::string to_string(SolveStatus s);

struct SolveReport {
  Vector step;
  double model_decrease = 0.0;  // m(0) - m(s)
  double grad_norm = 0.0;       // |grad m(s)|
  int iterations = 0;
  SolveStatus status = SolveStatus::Failure;
  double multiplier = std::numeric_limits<double>::quiet_NaN();  // MCM lambda
  bool hard_case = false;
  int factorizations = 0;
  long products = 0;  // Hessian-vector products (GLRT)
};

// Global minimizer of g.s + s.Hs/2 + sigma/3 |s|^3.
SolveReport solve_mcm(const Vector& g, const Matrix& H, double sigma, const TerminationCondition& tc,
                      int max_iter = 200);

// Lanczos/Krylov solver for the same model using only products with H.
// max_krylov <= 0 means dim(g).
SolveReport solve_glrt(const Vector& g, const std::function<Vector(const Vector&)>& hess_vec, double sigma,
                       const TerminationCondition& tc, int max_krylov = 0);

enum class Ar2Solver { Mcm, Glrt };
std::string to_string(Ar2Solver s);
Ar2Solver ar2_solver_from_string(const std::string& s);

// Dispatch for a quadratic model with cubic regularization, using whichever
// Hessian representation the data carries.
SolveReport solve_ar2_subproblem(const TaylorData& t, double sigma, const TerminationCondition& tc,
                                 Ar2Solver solver, int max_krylov = 0);

struct InnerConfig {
  Ar2Solver solver = Ar2Solver::Mcm;
  TerminationCondition tc = TerminationCondition::absolute(1e-10);
  double sigma0 = 1e-8;
  int max_iter = 1000;
  int max_krylov = 0;
  // Inner runs stop with failure once the step exceeds this length; only
  // reachable when the quartic term vanishes (sigma = 0).
  double max_step = 1e10;
  // Inner starting point; empty means the origin.
  Vector start;
};

// Minimizes the quartic-regularized third-order model by running the AR2
// driver on it, starting from inner.start (the origin by default), until tc
// holds with strict decrease.
SolveReport solve_ar3_subproblem(const TaylorData& t3, double sigma, const TerminationCondition& tc,
                                 const InnerConfig& inner = {});

}  // namespace arp
