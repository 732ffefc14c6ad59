#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arp/jet.hpp"
#include "arp/oracle.hpp"

namespace arp {

struct ProblemSpec {
  std::string name;
  std::size_t dim = 0;
  Vector x0;
  std::optional<double> f_star;
  std::optional<Vector> x_star;
  std::shared_ptr<const Objective> objective;
  std::vector<OracleMode> modes;
  std::uint64_t seed = 0;
  // Persisted generation data (JSON text) for randomized instances; empty otherwise.
  std::string generation;

  Oracle make_oracle(OracleMode mode) const;
  Oracle make_oracle() const { return make_oracle(modes.front()); }
};

struct ProblemParams {
  std::size_t d = 0;      // 0: problem default
  int variant = 1;        // regcubic 1..4
  std::size_t n = 0;      // nls samples, 0: 2d
  double r = 3e-4;        // hairpin/slalom slope
  int c = 8;              // regcubic regularization exponent
};

// Names: beale, powell_singular, rosenbrock, nls, regcubic, hairpin, slalom.
ProblemSpec make_problem(const std::string& name, const ProblemParams& params = {}, std::uint64_t seed = 0);
std::array<ProblemSpec, 4> reg_cubic_variants(std::size_t d, std::uint64_t seed);
ProblemSpec slalom_hairpin(const std::string& name, double r = 3e-4);
// Rebuilds a randomized problem from its persisted generation data.
ProblemSpec problem_from_generation(const std::string& json_text);

struct RegCubicData {
  int variant = 1;
  std::uint64_t seed = 0;
  int c = 8;
  Vector b;
  Matrix U, V;
  Vector lambda_h, lambda_t;
};

RegCubicData make_reg_cubic_data(int variant, std::size_t d, std::uint64_t seed, int c = 8);
std::shared_ptr<const Objective> reg_cubic_objective(const RegCubicData& data);

struct NlsData {
  std::uint64_t seed = 0;
  Matrix A;  // n x d
  Vector b;
};

NlsData make_nls_data(std::size_t d, std::size_t n, std::uint64_t seed);
std::shared_ptr<const Objective> nls_objective(const NlsData& data);

std::shared_ptr<const Objective> rosenbrock_objective(std::size_t d);

// Building blocks of the hairpin and slalom functions, generic over double
// and Jet so the same code yields values and derivatives.
namespace turn {

template <class T>
T h1(const T& u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }

template <class T>
T h3(const T& u) { return u * u * u * u * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u))); }

template <class T>
T h2(const T& x) {
  const double fl = std::floor(value_of(x) + 0.5);
  return h1(x + (0.5 - fl)) + (fl - 0.5);
}

// Constant 1 outside [-1, 1], which continues the outer pieces smoothly.
template <class T>
T h4(const T& x, const T& y) {
  const double xv = value_of(x);
  if (xv < -1.0 || xv > 1.0) return y * 0.0 + 1.0;
  if (xv < -0.5) return 1.0 - h3(2.0 * x + 2.0) * (1.0 - y);
  if (xv <= 0.5) return y;
  return h3(2.0 * x - 1.0) * (1.0 - y) + y;
}

template <class T>
T g(const T& x, const T& y) { return h2(x) * h4(x, 2.0 * recip(1.0 + exp_(y))); }

template <class T>
T barrier(const T& x, double lo, double hi) {
  const double xv = value_of(x);
  if (xv <= lo) return ipow(x - lo, 4);
  if (xv >= hi) return ipow(x - hi, 4);
  return x * 0.0;
}

}  // namespace turn

}  // namespace arp
