#include "arp/problems.hpp"

#include <stdexcept>

#include "json.hpp"

namespace arp {

std::shared_ptr<const Objective> beale_objective();
std::shared_ptr<const Objective> powell_singular_objective();
std::shared_ptr<const Objective> hairpin_objective(double r);
std::shared_ptr<const Objective> slalom_objective(double r);

using nlohmann::json;

Oracle ProblemSpec::make_oracle(OracleMode mode) const {
  bool ok = false;
  for (OracleMode m : modes) ok = ok || m == mode;
  if (!ok) throw CapabilityError(name + " does not provide oracle mode " + to_string(mode));
  return Oracle(objective, mode);
}

namespace {

const std::vector<OracleMode> kAllModes{OracleMode::Explicit, OracleMode::TensorFree, OracleMode::HessianTensorFree};

json vec_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

Vector json_vec(const json& j) {
  auto v = j.get<std::vector<double>>();
  return Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Matrix json_mat(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = json_vec(j[static_cast<std::size_t>(i)]).transpose();
  return m;
}

ProblemSpec regcubic_spec(const RegCubicData& data) {
  ProblemSpec s;
  const auto d = static_cast<std::size_t>(data.b.size());
  s.name = "regcubic" + std::to_string(data.variant);
  s.dim = d;
  s.x0 = Vector::Ones(static_cast<Eigen::Index>(d));
  s.objective = reg_cubic_objective(data);
  s.modes = {OracleMode::TensorFree, OracleMode::HessianTensorFree, OracleMode::Explicit};
  s.seed = data.seed;
  json j{{"format", "arp-problem"}, {"version", 1},         {"kind", "regcubic"},
         {"variant", data.variant}, {"seed", data.seed},    {"d", d},
         {"c", data.c},             {"b", vec_json(data.b)}, {"U", mat_json(data.U)},
         {"V", mat_json(data.V)},   {"lambda_h", vec_json(data.lambda_h)},
         {"lambda_t", vec_json(data.lambda_t)}};
  s.generation = j.dump();
  return s;
}

ProblemSpec nls_spec(const NlsData& data) {
  ProblemSpec s;
  const auto d = static_cast<std::size_t>(data.A.cols());
  s.name = "nls";
  s.dim = d;
  s.x0 = Vector::Zero(static_cast<Eigen::Index>(d));
  s.objective = nls_objective(data);
  s.modes = kAllModes;
  s.seed = data.seed;
  json j{{"format", "arp-problem"}, {"version", 1}, {"kind", "nls"}, {"seed", data.seed}, {"d", d},
         {"n", data.A.rows()}, {"A", mat_json(data.A)}, {"b", vec_json(data.b)}};
  s.generation = j.dump();
  return s;
}

}  // namespace

ProblemSpec slalom_hairpin(const std::string& name, double r) {
  ProblemSpec s;
  s.name = name;
  s.dim = 2;
  s.x0 = Vector(2);
  s.x0 << 0.5, 0.0;
  if (name == "hairpin") s.objective = hairpin_objective(r);
  else if (name == "slalom") s.objective = slalom_objective(r);
  else throw std::invalid_argument("unknown turn problem: " + name);
  s.modes = kAllModes;
  return s;
}

std::array<ProblemSpec, 4> reg_cubic_variants(std::size_t d, std::uint64_t seed) {
  return {regcubic_spec(make_reg_cubic_data(1, d, seed)), regcubic_spec(make_reg_cubic_data(2, d, seed)),
          regcubic_spec(make_reg_cubic_data(3, d, seed)), regcubic_spec(make_reg_cubic_data(4, d, seed))};
}

ProblemSpec make_problem(const std::string& name, const ProblemParams& params, std::uint64_t seed) {
  ProblemSpec s;
  s.modes = kAllModes;
  if (name == "beale") {
    s.name = name;
    s.dim = 2;
    s.x0 = Vector::Ones(2);
    s.f_star = 0.0;
    s.x_star = Vector(2);
    *s.x_star << 3.0, 0.5;
    s.objective = beale_objective();
  } else if (name == "powell_singular") {
    s.name = name;
    s.dim = 4;
    s.x0 = Vector(4);
    s.x0 << 3.0, -1.0, 0.0, 1.0;
    s.f_star = 0.0;
    s.x_star = Vector::Zero(4);
    s.objective = powell_singular_objective();
  } else if (name == "rosenbrock") {
    const std::size_t d = params.d ? params.d : 100;
    if (d < 2) throw std::invalid_argument("rosenbrock needs d >= 2");
    s.name = name;
    s.dim = d;
    s.x0 = Vector::Zero(static_cast<Eigen::Index>(d));
    s.f_star = 0.0;
    s.x_star = Vector::Ones(static_cast<Eigen::Index>(d));
    s.objective = rosenbrock_objective(d);
  } else if (name == "nls") {
    return nls_spec(make_nls_data(params.d ? params.d : 100, params.n, seed));
  } else if (name == "regcubic") {
    return regcubic_spec(make_reg_cubic_data(params.variant, params.d ? params.d : 100, seed, params.c));
  } else if (name == "hairpin" || name == "slalom") {
    return slalom_hairpin(name, params.r);
  } else {
    throw std::invalid_argument("unknown problem: " + name);
  }
  return s;
}

ProblemSpec problem_from_generation(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("format") != "arp-problem" || j.at("version") != 1)
    throw std::invalid_argument("not an arp-problem v1 document");
  const std::string kind = j.at("kind");
  if (kind == "regcubic") {
    RegCubicData d;
    d.variant = j.at("variant");
    d.seed = j.at("seed");
    d.c = j.at("c");
    d.b = json_vec(j.at("b"));
    d.U = json_mat(j.at("U"));
    d.V = json_mat(j.at("V"));
    d.lambda_h = json_vec(j.at("lambda_h"));
    d.lambda_t = json_vec(j.at("lambda_t"));
    return regcubic_spec(d);
  }
  if (kind == "nls") {
    NlsData d;
    d.seed = j.at("seed");
    d.A = json_mat(j.at("A"));
    d.b = json_vec(j.at("b"));
    return nls_spec(d);
  }
  throw std::invalid_argument("unknown problem kind: " + kind);
}

}  // namespace arp
