#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "arp/model.hpp"

namespace arp {

struct SimpleParams {
  double eta1 = 0.01;
  double eta2 = 0.95;
  double gamma1 = 0.5;
  double gamma2 = 3.0;
  double sigma_min = 1e-8;
  // Keep sigma on very successful steps instead of shrinking it.
  bool nondecreasing = false;

  void validate() const;
};

struct InterpParams {
  SimpleParams simple;
  double gamma_min = 0.1;
  double gamma_max = 100.0;
  double beta = 1e-2;
  double alpha_max = 2.0;
  double chi_min = 1e-8;

  void validate() const;
};

struct BgmsParams {
  double eta1_hat = 1e3;
  double eta2_hat = 3.0;
  int J = 20;
  double alpha_dec = 1e-8;
  double gamma1 = 0.5;
  double gamma2 = 10.0;
  double sigma_min = 1e-8;

  void validate() const;
};

enum class Outcome {
  ExtremelySuccessful,
  VerySuccessful,
  Successful,
  Unsuccessful,
  ExtremelyUnsuccessful,
  PreRejected,
  ZeroSigmaRetry,
  FinalIterate,
};

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);
bool is_accepted(Outcome o);

struct UpdateDecision {
  bool accept = false;
  double sigma_next = 0.0;
  Outcome outcome = Outcome::Unsuccessful;
  std::optional<double> rho;
  bool evaluated_f = false;
};

// ---- initial regularization ----

// (p+1)|f(x0+y) - t(y)| / |y|^(p+1), floored at sigma_min; f_shift = f(x0+y).
double sigma0_from_offset(const TaylorData& t, const Vector& y, double f_shift, int p, double sigma_min);
// Draws y ~ N(0, I), evaluates f(x0+y) through the oracle (counted) and
// resamples up to 5 times on non-finite values before falling back to 1.
double sigma0_taylor(Oracle& oracle, const Vector& x0, double f0, int p, double sigma_min, std::uint64_t seed);

// ---- simple ----

UpdateDecision simple_update(double rho, double sigma, const SimpleParams& params);

// True when the predicted and the achieved decrease are both below the
// rounding level of f_k; the ratio of the two carries no information there.
bool roundoff_regime(double f_k, double f_trial, double predicted);
// (f_k - f_trial) / predicted; 1 in the roundoff regime, NaN when undefined.
double reduction_ratio(double f_k, double f_trial, double predicted);

// ---- interpolation ----

enum class SearchMode { UnsuccessfulMin, SuccessfulMaxFgeqT, SuccessfulMaxFltT };

struct SearchInputs {
  Poly1d t_ray;
  Poly1d p_f;
  int p = 3;
  double sigma_k = 1.0;
  double step_norm = 1.0;
  double f_trial = 0.0;
  double m_s = 0.0;  // m(s_k)
  double t_s = 0.0;  // t(s_k)
};

struct SearchResult {
  double alpha;
  double sigma;
};

std::optional<SearchResult> interp_search(const SearchInputs& in, SearchMode mode, const InterpParams& params,
                                          double alpha_cap = std::numeric_limits<double>::infinity());

struct InterpContext {
  double f_k = 0.0;
  double f_trial = 0.0;
  Poly1d t_ray;  // along s_k/|s_k|
  double m_s = 0.0;
  double t_s = 0.0;
  double step_norm = 0.0;
  double sigma_k = 1.0;
  int p = 3;
  // f_k - m_s computed without cancellation; f_k - m_s when unset.
  std::optional<double> model_decrease;
};

UpdateDecision interpolation_update(const InterpContext& ctx, const InterpParams& params,
                                    double alpha_cap = std::numeric_limits<double>::infinity());

// ---- pre-rejection ----

double alpha_bar(const Poly1d& t_ray, int p, double xi);

enum class Persistence { Persistent, Transient };

struct PrerejectResult {
  Persistence verdict = Persistence::Transient;
  double alpha_bar = std::numeric_limits<double>::infinity();
  double xi = 0.0;
};

PrerejectResult prereject(const Vector& g, const Vector& s, const Poly1d& t_ray, double sigma, int p);

// ---- BGMS ----

struct BgmsState {
  int j = 0;
  double sigma_ini = 0.0;
};

struct BgmsContext {
  double sigma_k = 0.0;
  bool has_step = false;
  double step_norm = 0.0;
  double step_inf_norm = 0.0;
  double x_inf_norm = 0.0;
  double f_k = 0.0;
  double t_s = 0.0;  // t(s_k); t(0) = f_k
  int p = 3;
  // f_k - t_s computed without cancellation; f_k - t_s when unset.
  std::optional<double> taylor_decrease;

  double predicted() const { return taylor_decrease ? *taylor_decrease : f_k - t_s; }
};

// Whether the trial value must be evaluated before bgms_update.
bool bgms_needs_f(const BgmsContext& ctx, const BgmsParams& params, const BgmsState& state);
UpdateDecision bgms_update(const BgmsContext& ctx, std::optional<double> f_trial, const BgmsParams& params,
                           BgmsState& state);

}  // namespace arp
