#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "arp/harness.hpp"
#include "json.hpp"

namespace arp {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

double read_num(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("trace record missing field '") + key + "'");
  if (it->is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!it->is_number()) throw SchemaError(std::string("trace field '") + key + "' is not a number");
  return it->get<double>();
}

std::optional<double> read_opt(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw SchemaError(std::string("trace field '") + key + "' is not a number");
  return it->get<double>();
}

long read_count(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer()) throw SchemaError(std::string("trace field '") + key + "' must be an integer");
  return it->get<long>();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string record_to_json(const IterationRecord& r, const std::string& method, const std::string& problem) {
  json j;
  j["schema"] = kTraceSchema;
  j["method"] = method;
  j["problem"] = problem;
  j["k"] = r.k;
  j["sigma"] = num(r.sigma);
  j["f"] = num(r.f);
  j["grad_norm"] = num(r.grad_norm);
  j["step_norm"] = opt(r.step_norm);
  j["rho"] = opt(r.rho);
  j["outcome"] = to_string(r.outcome);
  j["n_f"] = r.n_f;
  j["n_deriv"] = r.n_deriv;
  j["n_subsolves"] = r.n_subsolves;
  return j.dump();
}

void write_trace(std::ostream& os, const std::vector<IterationRecord>& trace, const std::string& method,
                 const std::string& problem) {
  for (const auto& r : trace) os << record_to_json(r, method, problem) << '\n';
}

TraceFile read_trace(std::istream& is) {
  TraceFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError("line " + std::to_string(lineno) + ": " + e.what());
    }
    const auto sv = j.find("schema");
    if (sv == j.end() || !sv->is_number_integer())
      throw SchemaError("line " + std::to_string(lineno) + ": missing schema version");
    if (sv->get<int>() != kTraceSchema)
      throw SchemaError("line " + std::to_string(lineno) + ": unsupported schema version " + sv->dump());
    const std::string method = j.value("method", "");
    const std::string problem = j.value("problem", "");
    if (out.records.empty()) {
      out.method = method;
      out.problem = problem;
    } else if (method != out.method || problem != out.problem) {
      throw SchemaError("line " + std::to_string(lineno) + ": mixed method/problem in one trace");
    }
    IterationRecord r;
    r.k = static_cast<int>(read_count(j, "k"));
    r.sigma = read_num(j, "sigma");
    r.f = read_num(j, "f");
    r.grad_norm = read_num(j, "grad_norm");
    r.step_norm = read_opt(j, "step_norm");
    r.rho = read_opt(j, "rho");
    try {
      r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError("line " + std::to_string(lineno) + ": bad outcome");
    }
    r.n_f = read_count(j, "n_f");
    r.n_deriv = read_count(j, "n_deriv");
    r.n_subsolves = read_count(j, "n_subsolves");
    out.records.push_back(r);
  }
  return out;
}

void write_dots_csv(std::ostream& os, const std::string& method, const std::string& problem,
                    const std::vector<DotRow>& rows, bool header) {
  if (header) os << "method,problem,k,gap,sigma,marker\n";
  for (const auto& r : rows)
    os << method << ',' << problem << ',' << r.k << ',' << fmt(r.gap) << ',' << fmt(r.sigma) << ',' << r.marker << '\n';
}

}  // namespace arp
