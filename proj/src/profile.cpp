#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "arp/harness.hpp"

namespace arp {

std::string to_string(CostMetric m) {
  switch (m) {
    case CostMetric::FunctionEvals: return "function_evals";
    case CostMetric::DerivativeEvals: return "derivative_evals";
    case CostMetric::SubproblemSolves: return "subproblem_solves";
  }
  return "?";
}

CostMetric cost_metric_from_string(const std::string& s) {
  if (s == "function_evals") return CostMetric::FunctionEvals;
  if (s == "derivative_evals") return CostMetric::DerivativeEvals;
  if (s == "subproblem_solves") return CostMetric::SubproblemSolves;
  throw std::invalid_argument("unknown cost metric: " + s);
}

namespace {

double metric_of(const IterationRecord& r, CostMetric m) {
  switch (m) {
    case CostMetric::FunctionEvals: return static_cast<double>(r.n_f);
    case CostMetric::DerivativeEvals: return static_cast<double>(r.n_deriv);
    case CostMetric::SubproblemSolves: return static_cast<double>(r.n_subsolves);
  }
  return kUnsolved;
}

}  // namespace

double cost_to_solution(const std::vector<IterationRecord>& trace, double f_best, double eps_f, CostMetric metric) {
  const double scale = std::max(1.0, std::abs(f_best));
  for (const auto& r : trace) {
    if (std::isfinite(r.f) && (r.f - f_best) / scale < eps_f) return metric_of(r, metric);
  }
  return kUnsolved;
}

ProfileTable performance_profile(const std::vector<std::vector<double>>& costs, const std::vector<double>& tau,
                                 std::vector<std::string> methods) {
  const std::size_t nm = costs.size();
  const std::size_t np = nm ? costs[0].size() : 0;
  for (const auto& row : costs)
    if (row.size() != np) throw std::invalid_argument("performance_profile: ragged cost matrix");
  for (double t : tau)
    if (!(t > 0.0)) throw std::invalid_argument("performance_profile: tau must be positive");
  if (methods.empty())
    for (std::size_t i = 0; i < nm; ++i) methods.push_back("method" + std::to_string(i));
  if (methods.size() != nm) throw std::invalid_argument("performance_profile: method names do not match rows");

  ProfileTable out;
  out.methods = std::move(methods);
  out.tau = tau;
  out.gamma.assign(nm, std::vector<double>(tau.size(), 0.0));

  std::vector<std::vector<double>> ratio(nm, std::vector<double>(np, kUnsolved));
  for (std::size_t j = 0; j < np; ++j) {
    double best = kUnsolved;
    for (std::size_t i = 0; i < nm; ++i) best = std::min(best, costs[i][j]);
    if (!std::isfinite(best)) {
      out.dropped.push_back(j);
      continue;
    }
    ++out.n_problems;
    for (std::size_t i = 0; i < nm; ++i) {
      const double c = costs[i][j];
      if (!std::isfinite(c)) continue;
      // a zero best cost only ties with other zeros
      ratio[i][j] = best > 0.0 ? c / best : (c == 0.0 ? 1.0 : kUnsolved);
    }
  }
  if (out.n_problems == 0) return out;
  for (std::size_t i = 0; i < nm; ++i)
    for (std::size_t t = 0; t < tau.size(); ++t) {
      std::size_t hit = 0;
      for (std::size_t j = 0; j < np; ++j) hit += ratio[i][j] <= tau[t];
      out.gamma[i][t] = static_cast<double>(hit) / static_cast<double>(out.n_problems);
    }
  return out;
}

ProfileTable profile_from_traces(const std::vector<std::string>& methods,
                                 const std::vector<std::vector<std::vector<IterationRecord>>>& traces, double eps_f,
                                 CostMetric metric, const std::vector<double>& tau) {
  if (traces.size() != methods.size()) throw std::invalid_argument("profile_from_traces: method count mismatch");
  const std::size_t np = traces.empty() ? 0 : traces[0].size();
  std::vector<double> f_best(np, kUnsolved);
  for (const auto& per_method : traces) {
    if (per_method.size() != np) throw std::invalid_argument("profile_from_traces: ragged trace matrix");
    for (std::size_t j = 0; j < np; ++j)
      for (const auto& r : per_method[j])
        if (std::isfinite(r.f)) f_best[j] = std::min(f_best[j], r.f);
  }
  std::vector<std::vector<double>> costs(methods.size(), std::vector<double>(np, kUnsolved));
  for (std::size_t i = 0; i < methods.size(); ++i)
    for (std::size_t j = 0; j < np; ++j)
      if (std::isfinite(f_best[j]) && !traces[i][j].empty())
        costs[i][j] = cost_to_solution(traces[i][j], f_best[j], eps_f, metric);
  ProfileTable out = performance_profile(costs, tau, methods);
  out.f_best = std::move(f_best);
  return out;
}

void write_profile_csv(std::ostream& os, const ProfileTable& table, CostMetric metric, double eps_f, bool header) {
  auto fmt = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  if (header) os << "metric,eps_f,method,tau,gamma\n";
  for (std::size_t i = 0; i < table.methods.size(); ++i)
    for (std::size_t t = 0; t < table.tau.size(); ++t)
      os << to_string(metric) << ',' << fmt(eps_f) << ',' << table.methods[i] << ',' << fmt(table.tau[t]) << ','
         << fmt(table.gamma[i][t]) << '\n';
}

}  // namespace arp
