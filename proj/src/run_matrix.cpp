#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "arp/harness.hpp"

namespace arp {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

void solve_one(const MethodSpec& method, const ProblemSpec& problem, RunSummary& summary, RunResult& result) {
  summary.method = method.name;
  summary.problem = problem.name;
  try {
    Oracle oracle = problem.make_oracle(method.mode);
    result = minimize(oracle, problem.x0, method.cfg);
    summary.status = to_string(result.status);
    summary.iterations = result.iterations;
    summary.f_final = result.f_final;
    summary.grad_norm_final = result.grad_norm_final;
    summary.n_f = result.counters.n_f;
    summary.n_deriv = result.counters.n_deriv;
    summary.n_subsolves = result.n_subsolves;
    summary.wall_seconds = result.wall_seconds;
  } catch (const std::exception& e) {
    summary.status = "error";
    summary.error = e.what();
    result = RunResult{};
  }
}

}  // namespace

MatrixResult run_matrix(const ExperimentConfig& cfg, const std::vector<ProblemSpec>& problems, Execution exec) {
  MatrixResult m;
  m.n_methods = cfg.methods.size();
  m.n_problems = problems.size();
  const std::size_t n = m.n_methods * m.n_problems;
  m.summaries.resize(n);
  m.results.resize(n);

  if (exec == Execution::Serial) {
    for (std::size_t idx = 0; idx < n; ++idx)
      solve_one(cfg.methods[idx / m.n_problems], problems[idx % m.n_problems], m.summaries[idx], m.results[idx]);
  } else {
#ifdef _OPENMP
    const int threads = cfg.parallelism > 0 ? cfg.parallelism : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long long idx = 0; idx < static_cast<long long>(n); ++idx) {
      const auto i = static_cast<std::size_t>(idx);
      solve_one(cfg.methods[i / m.n_problems], problems[i % m.n_problems], m.summaries[i], m.results[i]);
    }
  }

  for (const auto& s : m.summaries) m.partial_failure = m.partial_failure || s.status == "error" ||
                                                        s.status == to_string(RunStatus::NumericalError);
  return m;
}

void write_summary_csv(std::ostream& os, const MatrixResult& m) {
  os << "method,problem,status,iterations,f_final,grad_norm_final,n_f,n_deriv,n_subsolves,error\n";
  for (const auto& s : m.summaries)
    os << csv_field(s.method) << ',' << csv_field(s.problem) << ',' << s.status << ',' << s.iterations << ','
       << fmt(s.f_final) << ',' << fmt(s.grad_norm_final) << ',' << s.n_f << ',' << s.n_deriv << ',' << s.n_subsolves
       << ',' << csv_field(s.error) << '\n';
}

void write_outputs(const ExperimentConfig& cfg, const std::vector<ProblemSpec>& problems, const MatrixResult& m) {
  const fs::path root(cfg.output_dir);
  fs::create_directories(root / "traces");
  fs::create_directories(root / "problems");
  auto open = [](const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };

  for (std::size_t i = 0; i < m.n_methods; ++i)
    for (std::size_t j = 0; j < m.n_problems; ++j) {
      const auto& r = m.at(i, j);
      if (r.trace.empty()) continue;
      auto f = open(root / "traces" / (cfg.methods[i].name + "__" + problems[j].name + ".jsonl"));
      write_trace(f, r.trace, cfg.methods[i].name, problems[j].name);
    }
  {
    auto f = open(root / "summary.csv");
    write_summary_csv(f, m);
  }
  {
    auto f = open(root / "timings.csv");
    f << "method,problem,wall_seconds\n";
    for (const auto& s : m.summaries) f << csv_field(s.method) << ',' << csv_field(s.problem) << ',' << fmt(s.wall_seconds) << '\n';
  }
  for (const auto& p : problems)
    if (!p.generation.empty()) {
      auto f = open(root / "problems" / (p.name + ".json"));
      f << p.generation << '\n';
    }

  std::vector<std::string> names;
  for (const auto& meth : cfg.methods) names.push_back(meth.name);
  std::vector<std::vector<std::vector<IterationRecord>>> traces(m.n_methods);
  for (std::size_t i = 0; i < m.n_methods; ++i)
    for (std::size_t j = 0; j < m.n_problems; ++j) traces[i].push_back(m.at(i, j).trace);
  auto f = open(root / "profile.csv");
  bool header = true;
  for (CostMetric metric : cfg.metrics)
    for (double eps_f : cfg.eps_f) {
      write_profile_csv(f, profile_from_traces(names, traces, eps_f, metric, cfg.tau), metric, eps_f, header);
      header = false;
    }
}

std::optional<std::string> check_counters(const RunResult& r) {
  if (r.trace.empty()) return "empty trace";
  long accepted = 0, evaluated = 0;
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    const auto& rec = r.trace[k];
    if (rec.k != static_cast<int>(k)) return "record " + std::to_string(k) + " has k = " + std::to_string(rec.k);
    const bool last = k + 1 == r.trace.size();
    if (last != (rec.outcome == Outcome::FinalIterate)) return "final marker misplaced at record " + std::to_string(k);
    if (last) break;
    const bool acc = is_accepted(rec.outcome);
    const bool eval = acc || rec.outcome == Outcome::Unsuccessful || rec.outcome == Outcome::ExtremelyUnsuccessful;
    accepted += acc;
    evaluated += eval;
    const auto& nxt = r.trace[k + 1];
    if (nxt.n_f - rec.n_f != (eval ? 1 : 0)) return "n_f step mismatch at record " + std::to_string(k);
    if (nxt.n_deriv - rec.n_deriv != (acc ? 1 : 0)) return "n_deriv step mismatch at record " + std::to_string(k);
    if (nxt.n_subsolves - rec.n_subsolves != 1) return "subsolve step mismatch at record " + std::to_string(k);
  }
  const long want_f = 1 + evaluated + r.sigma0_evaluations;
  if (r.used_taylor_sigma0 != (r.sigma0_evaluations > 0)) return "sigma0 evaluation bookkeeping mismatch";
  if (r.counters.n_f != want_f)
    return "n_f = " + std::to_string(r.counters.n_f) + ", expected " + std::to_string(want_f);
  if (r.counters.n_deriv != accepted + 1)
    return "n_deriv = " + std::to_string(r.counters.n_deriv) + ", expected " + std::to_string(accepted + 1);
  if (r.n_subsolves != static_cast<long>(r.trace.size()) - 1) return "subsolve total mismatch";
  if (r.trace.back().n_f != r.counters.n_f || r.trace.back().n_deriv != r.counters.n_deriv)
    return "final record counters differ from oracle";
  return std::nullopt;
}

}  // namespace arp
