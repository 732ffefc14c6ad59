#include <cmath>
#include <sstream>
#include <stdexcept>

#include "arp/subsolve.hpp"

namespace arp {

TerminationCondition TerminationCondition::generalized(double theta) {
  if (theta < 1.0) throw std::invalid_argument("generalized-norm termination requires theta >= 1");
  return {Kind::GeneralizedNorm, theta};
}

std::string to_string(const TerminationCondition& tc) {
  std::ostringstream os;
  switch (tc.kind) {
    case TerminationCondition::Kind::Absolute: os << "absolute(" << tc.value << ")"; break;
    case TerminationCondition::Kind::Relative: os << "relative(" << tc.value << ")"; break;
    case TerminationCondition::Kind::GeneralizedNorm: os << "generalized(" << tc.value << ")"; break;
  }
  return os.str();
}

bool tc_holds(const TerminationCondition& tc, double grad_m, double grad_t, double step_norm, double sigma, int p) {
  switch (tc.kind) {
    case TerminationCondition::Kind::Absolute: return grad_m <= tc.value;
    case TerminationCondition::Kind::Relative: return grad_m <= tc.value * std::pow(step_norm, p);
    case TerminationCondition::Kind::GeneralizedNorm: return grad_t <= tc.value * sigma * std::pow(step_norm, p);
  }
  return false;
}

bool tc_holds(const TerminationCondition& tc, const RegularizedModel& m, const Vector& s) {
  Vector gt = m.taylor_gradient(s);
  Vector gm = gt + m.sigma() * std::pow(s.norm(), m.p() - 1) * s;
  return tc_holds(tc, gm.norm(), gt.norm(), s.norm(), m.sigma(), m.p());
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::IterLimit: return "iter_limit";
    case SolveStatus::Failure: return "failure";
  }
  return "?";
}

std::string to_string(Ar2Solver s) { return s == Ar2Solver::Mcm ? "mcm" : "glrt"; }

Ar2Solver ar2_solver_from_string(const std::string& s) {
  if (s == "mcm") return Ar2Solver::Mcm;
  if (s == "glrt") return Ar2Solver::Glrt;
  throw std::invalid_argument("unknown AR2 solver: " + s);
}

SolveReport solve_ar2_subproblem(const TaylorData& t, double sigma, const TerminationCondition& tc,
                                 Ar2Solver solver, int max_krylov) {
  if (solver == Ar2Solver::Mcm) return solve_mcm(t.g(), t.hessian(), sigma, tc);
  return solve_glrt(t.g(), [&t](const Vector& v) { return t.hess_vec(v); }, sigma, tc, max_krylov);
}

}  // namespace arp
