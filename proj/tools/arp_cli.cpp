#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "arp/harness.hpp"

namespace fs = std::filesystem;
using namespace arp;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<TraceFile> load_traces(const std::string& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".jsonl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<TraceFile> out;
  for (const auto& p : files) {
    std::ifstream in(p);
    TraceFile t = read_trace(in);
    if (t.records.empty()) continue;
    out.push_back(std::move(t));
  }
  if (out.empty()) throw ConfigError("no traces found in " + dir);
  return out;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw ConfigError("cannot write " + path);
  return file;
}

int cmd_run(const std::string& config, const std::string& output, bool serial) {
  ExperimentConfig cfg = parse_experiment(slurp(config));
  if (!output.empty()) cfg.output_dir = output;
  const auto problems = build_problems(cfg);
  const MatrixResult m = run_matrix(cfg, problems, serial ? Execution::Serial : Execution::Parallel);
  write_outputs(cfg, problems, m);
  for (const auto& s : m.summaries)
    if (s.status == "error") std::cerr << "run failed: " << s.method << " on " << s.problem << ": " << s.error << '\n';
  std::cerr << m.summaries.size() << " runs written to " << cfg.output_dir << '\n';
  return m.partial_failure ? kExitPartial : 0;
}

int cmd_profile(const std::string& dir, const std::vector<double>& eps_f, const std::vector<double>& tau,
                const std::vector<std::string>& metrics, const std::string& out) {
  const auto traces = load_traces(dir);
  std::vector<std::string> methods, problems;
  for (const auto& t : traces) {
    if (std::find(methods.begin(), methods.end(), t.method) == methods.end()) methods.push_back(t.method);
    if (std::find(problems.begin(), problems.end(), t.problem) == problems.end()) problems.push_back(t.problem);
  }
  std::vector<std::vector<std::vector<IterationRecord>>> matrix(methods.size(),
                                                                std::vector<std::vector<IterationRecord>>(problems.size()));
  for (const auto& t : traces) {
    const auto i = std::find(methods.begin(), methods.end(), t.method) - methods.begin();
    const auto j = std::find(problems.begin(), problems.end(), t.problem) - problems.begin();
    matrix[i][j] = t.records;
  }
  std::ofstream file;
  std::ostream& os = open_out(out, file);
  bool header = true;
  for (const auto& name : metrics) {
    CostMetric metric;
    try {
      metric = cost_metric_from_string(name);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    for (double e : eps_f) {
      const ProfileTable table = profile_from_traces(methods, matrix, e, metric, tau);
      for (std::size_t j : table.dropped)
        std::cerr << "dropped " << problems[j] << " (no method reached eps_f = " << e << ")\n";
      write_profile_csv(os, table, metric, e, header);
      header = false;
    }
  }
  return 0;
}

std::map<std::string, double> read_fstar(const std::string& path) {
  std::map<std::string, double> out;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    try {
      out[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      // header or malformed line
    }
  }
  return out;
}

int cmd_dots(const std::string& dir, const std::string& fstar_path, const std::string& out) {
  const auto traces = load_traces(dir);
  std::map<std::string, double> fstar;
  if (!fstar_path.empty()) fstar = read_fstar(fstar_path);
  std::map<std::string, double> best;
  for (const auto& t : traces)
    for (const auto& r : t.records)
      if (std::isfinite(r.f)) {
        auto [it, fresh] = best.emplace(t.problem, r.f);
        if (!fresh) it->second = std::min(it->second, r.f);
      }
  std::ofstream file;
  std::ostream& os = open_out(out, file);
  bool header = true;
  for (const auto& t : traces) {
    double f_star;
    if (auto it = fstar.find(t.problem); it != fstar.end()) f_star = it->second;
    else if (auto b = best.find(t.problem); b != best.end()) f_star = b->second;
    else continue;
    write_dots_csv(os, t.method, t.problem, trace_to_dotplot_data(t.records, f_star), header);
    header = false;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive regularization methods: experiment runner and metrics"};
  app.require_subcommand(1);

  std::string config, output;
  bool serial = false;
  auto* run = app.add_subcommand("run", "run a method x problem matrix from a JSON config");
  run->add_option("config", config, "experiment config file")->required();
  run->add_option("-o,--output", output, "output directory (overrides the config)");
  run->add_flag("--serial", serial, "run without threads");

  std::string trace_dir, out;
  std::vector<double> eps_f{1e-8}, tau{1, 2, 4, 8, 16, 32, 64};
  std::vector<std::string> metrics{"function_evals"};
  auto* profile = app.add_subcommand("profile", "performance profiles from a trace directory");
  profile->add_option("traces", trace_dir, "directory of .jsonl traces")->required();
  profile->add_option("--eps-f", eps_f, "accuracy levels")->delimiter(',');
  profile->add_option("--tau", tau, "ratio grid")->delimiter(',');
  profile->add_option("--metric", metrics, "function_evals, derivative_evals, subproblem_solves")->delimiter(',');
  profile->add_option("-o,--output", out, "CSV path (default stdout)");

  std::string fstar;
  auto* dots = app.add_subcommand("dots", "convergence dot-plot tables from a trace directory");
  dots->add_option("traces", trace_dir, "directory of .jsonl traces")->required();
  dots->add_option("--fstar", fstar, "CSV of problem,f_star (default: best f across traces)");
  dots->add_option("-o,--output", out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config, output, serial);
    if (*profile) {
      for (double v : eps_f)
        if (!(v > 0.0)) throw ConfigError("eps_f must be positive");
      for (double v : tau)
        if (!(v > 0.0)) throw ConfigError("tau must be positive");
      return cmd_profile(trace_dir, eps_f, tau, metrics, out);
    }
    if (*dots) return cmd_dots(trace_dir, fstar, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SchemaError& e) {
    std::cerr << "trace error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
