#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arp/update.hpp"

namespace arp {

void SimpleParams::validate() const {
  if (!(0.0 < eta1 && eta1 <= eta2 && eta2 < 1.0)) throw std::invalid_argument("simple: need 0 < eta1 <= eta2 < 1");
  if (!(0.0 < gamma1 && gamma1 < 1.0 && 1.0 < gamma2)) throw std::invalid_argument("simple: need 0 < gamma1 < 1 < gamma2");
  if (!(sigma_min > 0.0)) throw std::invalid_argument("simple: sigma_min must be positive");
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::ExtremelySuccessful: return "extremely_successful";
    case Outcome::VerySuccessful: return "very_successful";
    case Outcome::Successful: return "successful";
    case Outcome::Unsuccessful: return "unsuccessful";
    case Outcome::ExtremelyUnsuccessful: return "extremely_unsuccessful";
    case Outcome::PreRejected: return "pre_rejected";
    case Outcome::ZeroSigmaRetry: return "zero_sigma_retry";
    case Outcome::FinalIterate: return "final";
  }
  return "?";
}

Outcome outcome_from_string(const std::string& s) {
  for (Outcome o : {Outcome::ExtremelySuccessful, Outcome::VerySuccessful, Outcome::Successful, Outcome::Unsuccessful,
                    Outcome::ExtremelyUnsuccessful, Outcome::PreRejected, Outcome::ZeroSigmaRetry,
                    Outcome::FinalIterate})
    if (to_string(o) == s) return o;
  throw std::invalid_argument("unknown outcome: " + s);
}

bool is_accepted(Outcome o) {
  return o == Outcome::ExtremelySuccessful || o == Outcome::VerySuccessful || o == Outcome::Successful;
}

bool roundoff_regime(double f_k, double f_trial, double predicted) {
  const double noise = 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f_k));
  return std::isfinite(f_trial) && predicted > 0.0 && predicted <= noise && std::abs(f_k - f_trial) <= noise;
}

double reduction_ratio(double f_k, double f_trial, double predicted) {
  if (!std::isfinite(f_trial) || !(predicted > 0.0)) return std::nan("");
  if (roundoff_regime(f_k, f_trial, predicted)) return 1.0;
  return (f_k - f_trial) / predicted;
}

UpdateDecision simple_update(double rho, double sigma, const SimpleParams& params) {
  UpdateDecision d;
  d.rho = rho;
  d.evaluated_f = true;
  if (rho >= params.eta2) {
    d.accept = true;
    d.outcome = Outcome::VerySuccessful;
    d.sigma_next = params.nondecreasing ? sigma : std::max(params.gamma1 * sigma, params.sigma_min);
  } else if (rho >= params.eta1) {
    d.accept = true;
    d.outcome = Outcome::Successful;
    d.sigma_next = sigma;
  } else {
    d.outcome = Outcome::Unsuccessful;
    d.sigma_next = params.gamma2 * sigma;
  }
  return d;
}

}  // namespace arp
