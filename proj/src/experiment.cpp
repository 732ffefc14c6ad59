#include <fstream>
#include <set>
#include <sstream>

#include "arp/harness.hpp"
#include "json.hpp"

namespace arp {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": bad value for '" + key + "'");
  }
}

TerminationCondition parse_tc(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "value"});
  std::string kind = "absolute";
  double value = 0.0;
  read(j, "kind", kind, where);
  if (!j.contains("value")) throw ConfigError(where + ": missing 'value'");
  read(j, "value", value, where);
  try {
    if (kind == "absolute") return TerminationCondition::absolute(value);
    if (kind == "relative") return TerminationCondition::relative(value);
    if (kind == "generalized") return TerminationCondition::generalized(value);
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown termination kind '" + kind + "'");
}

void parse_simple(const json& j, SimpleParams& s, const std::string& where) {
  check_keys(j, where, {"eta1", "eta2", "gamma1", "gamma2", "sigma_min", "nondecreasing"});
  read(j, "eta1", s.eta1, where);
  read(j, "eta2", s.eta2, where);
  read(j, "gamma1", s.gamma1, where);
  read(j, "gamma2", s.gamma2, where);
  read(j, "sigma_min", s.sigma_min, where);
  read(j, "nondecreasing", s.nondecreasing, where);
}

MethodSpec parse_method(const json& j, std::size_t idx, std::uint64_t sigma_seed) {
  const std::string where = "methods[" + std::to_string(idx) + "]";
  check_keys(j, where,
             {"name", "p", "strategy", "sigma0", "tc", "ar2_solver", "max_krylov", "oracle_mode", "eps", "max_iter",
              "simple", "interp", "bgms", "inner"});
  MethodSpec m;
  read(j, "name", m.name, where);
  if (m.name.empty()) throw ConfigError(where + ": missing 'name'");
  RunConfig& c = m.cfg;
  c.seed = sigma_seed;
  read(j, "p", c.p, where);
  read(j, "eps", c.eps, where);
  read(j, "max_iter", c.max_iter, where);
  read(j, "max_krylov", c.max_krylov, where);
  try {
    if (j.contains("strategy")) c.strategy = strategy_from_string(j["strategy"].get<std::string>());
    if (j.contains("ar2_solver")) c.ar2_solver = ar2_solver_from_string(j["ar2_solver"].get<std::string>());
    if (j.contains("oracle_mode")) m.mode = oracle_mode_from_string(j["oracle_mode"].get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (j.contains("sigma0")) {
    const json& s = j["sigma0"];
    if (s.is_string() && s.get<std::string>() == "taylor") c.sigma0 = Sigma0Policy::from_taylor();
    else if (s.is_number()) c.sigma0 = Sigma0Policy::constant(s.get<double>());
    else throw ConfigError(where + ": sigma0 must be \"taylor\" or a number");
  }
  if (j.contains("tc")) c.tc = parse_tc(j["tc"], where + ".tc");
  if (j.contains("simple")) {
    parse_simple(j["simple"], c.simple, where + ".simple");
    c.interp.simple = c.simple;
  }
  if (j.contains("interp")) {
    const json& ij = j["interp"];
    const std::string w = where + ".interp";
    json base = json::object();
    json extra = json::object();
    for (const auto& [k, v] : ij.items()) {
      if (k == "gamma_min" || k == "gamma_max" || k == "beta" || k == "alpha_max" || k == "chi_min") extra[k] = v;
      else base[k] = v;
    }
    parse_simple(base, c.interp.simple, w);
    read(extra, "gamma_min", c.interp.gamma_min, w);
    read(extra, "gamma_max", c.interp.gamma_max, w);
    read(extra, "beta", c.interp.beta, w);
    read(extra, "alpha_max", c.interp.alpha_max, w);
    read(extra, "chi_min", c.interp.chi_min, w);
  }
  if (j.contains("bgms")) {
    const json& b = j["bgms"];
    const std::string w = where + ".bgms";
    check_keys(b, w, {"eta1_hat", "eta2_hat", "J", "alpha_dec", "gamma1", "gamma2", "sigma_min"});
    read(b, "eta1_hat", c.bgms.eta1_hat, w);
    read(b, "eta2_hat", c.bgms.eta2_hat, w);
    read(b, "J", c.bgms.J, w);
    read(b, "alpha_dec", c.bgms.alpha_dec, w);
    read(b, "gamma1", c.bgms.gamma1, w);
    read(b, "gamma2", c.bgms.gamma2, w);
    read(b, "sigma_min", c.bgms.sigma_min, w);
  }
  if (j.contains("inner")) {
    const json& in = j["inner"];
    const std::string w = where + ".inner";
    check_keys(in, w, {"tc", "sigma0", "max_iter", "max_step", "start"});
    if (in.contains("tc")) c.inner.tc = parse_tc(in["tc"], w + ".tc");
    read(in, "sigma0", c.inner.sigma0, w);
    read(in, "max_iter", c.inner.max_iter, w);
    read(in, "max_step", c.inner.max_step, w);
    std::vector<double> start;
    read(in, "start", start, w);
    if (!start.empty()) c.inner.start = Eigen::Map<Vector>(start.data(), static_cast<Eigen::Index>(start.size()));
  }
  try {
    c.validate();
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return m;
}

ProblemEntry parse_problem(const json& j, std::size_t idx, std::uint64_t default_seed) {
  const std::string where = "problems[" + std::to_string(idx) + "]";
  check_keys(j, where, {"name", "label", "d", "variant", "n", "r", "c", "seed", "generation"});
  ProblemEntry p;
  p.seed = default_seed;
  read(j, "name", p.name, where);
  read(j, "label", p.label, where);
  read(j, "d", p.params.d, where);
  read(j, "variant", p.params.variant, where);
  read(j, "n", p.params.n, where);
  read(j, "r", p.params.r, where);
  read(j, "c", p.params.c, where);
  read(j, "seed", p.seed, where);
  read(j, "generation", p.generation_file, where);
  if (p.name.empty() && p.generation_file.empty()) throw ConfigError(where + ": need 'name' or 'generation'");
  if (p.label.empty()) {
    if (p.name == "regcubic") p.label = "regcubic" + std::to_string(p.params.variant);
    else p.label = p.name;
  }
  return p;
}

std::vector<double> positive_grid(const json& j, const char* key, const std::string& where) {
  std::vector<double> v;
  read(j, key, v, where);
  if (v.empty()) throw ConfigError(where + ": '" + key + "' must be a nonempty list");
  for (double x : v)
    if (!(x > 0.0)) throw ConfigError(where + ": '" + key + "' entries must be positive");
  return v;
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "config", {"schema", "output_dir", "parallelism", "seeds", "methods", "problems", "metrics"});
  if (j.value("schema", 1) != 1) throw ConfigError("config: unsupported schema version");
  ExperimentConfig cfg;
  read(j, "output_dir", cfg.output_dir, "config");
  read(j, "parallelism", cfg.parallelism, "config");
  if (cfg.parallelism < 0) throw ConfigError("config: parallelism must be >= 0");

  std::uint64_t problem_seed = 1, sigma_seed = 0;
  if (j.contains("seeds")) {
    check_keys(j["seeds"], "seeds", {"problems", "sigma0"});
    read(j["seeds"], "problems", problem_seed, "seeds");
    read(j["seeds"], "sigma0", sigma_seed, "seeds");
  }

  if (!j.contains("methods") || !j["methods"].is_array() || j["methods"].empty())
    throw ConfigError("config: 'methods' must be a nonempty list");
  std::set<std::string> names;
  for (std::size_t i = 0; i < j["methods"].size(); ++i) {
    cfg.methods.push_back(parse_method(j["methods"][i], i, sigma_seed));
    if (!names.insert(cfg.methods.back().name).second)
      throw ConfigError("config: duplicate method name '" + cfg.methods.back().name + "'");
  }

  if (!j.contains("problems") || !j["problems"].is_array() || j["problems"].empty())
    throw ConfigError("config: 'problems' must be a nonempty list");
  for (std::size_t i = 0; i < j["problems"].size(); ++i)
    cfg.problems.push_back(parse_problem(j["problems"][i], i, problem_seed));

  if (j.contains("metrics")) {
    const json& m = j["metrics"];
    check_keys(m, "metrics", {"eps_f", "tau", "cost"});
    if (m.contains("eps_f")) cfg.eps_f = positive_grid(m, "eps_f", "metrics");
    if (m.contains("tau")) cfg.tau = positive_grid(m, "tau", "metrics");
    if (m.contains("cost")) {
      std::vector<std::string> costs;
      read(m, "cost", costs, "metrics");
      cfg.metrics.clear();
      try {
        for (const auto& c : costs) cfg.metrics.push_back(cost_metric_from_string(c));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("metrics: ") + e.what());
      }
      if (cfg.metrics.empty()) throw ConfigError("metrics: 'cost' must be nonempty");
    }
  }
  return cfg;
}

std::vector<ProblemSpec> build_problems(const ExperimentConfig& cfg) {
  std::vector<ProblemSpec> out;
  std::set<std::string> labels;
  for (const auto& e : cfg.problems) {
    ProblemSpec s;
    try {
      if (!e.generation_file.empty()) {
        std::ifstream in(e.generation_file);
        if (!in) throw ConfigError("cannot read generation file " + e.generation_file);
        std::stringstream buf;
        buf << in.rdbuf();
        s = problem_from_generation(buf.str());
      } else {
        s = make_problem(e.name, e.params, e.seed);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigError("problem '" + e.label + "': " + ex.what());
    }
    const std::string label = e.generation_file.empty() || !e.label.empty() ? e.label : s.name;
    s.name = label.empty() ? s.name : label;
    if (!labels.insert(s.name).second) throw ConfigError("duplicate problem label '" + s.name + "'");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace arp
