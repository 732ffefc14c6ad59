#include <cmath>
#include <stdexcept>

#include "arp/update.hpp"

namespace arp {

void BgmsParams::validate() const {
  if (!(eta1_hat > 0.0 && eta2_hat > 0.0)) throw std::invalid_argument("bgms: filter thresholds must be positive");
  if (J < 0) throw std::invalid_argument("bgms: J must be nonnegative");
  if (!(alpha_dec > 0.0)) throw std::invalid_argument("bgms: alpha_dec must be positive");
  if (!(0.0 < gamma1 && gamma1 < 1.0 && 1.0 < gamma2)) throw std::invalid_argument("bgms: need 0 < gamma1 < 1 < gamma2");
  if (!(sigma_min > 0.0)) throw std::invalid_argument("bgms: sigma_min must be positive");
}

namespace {

bool step_filter(const BgmsContext& ctx, const BgmsParams& params) {
  const double dec = ctx.predicted() / std::max(1.0, std::abs(ctx.f_k));
  const double len = ctx.step_inf_norm / std::max(1.0, ctx.x_inf_norm);
  return dec <= params.eta1_hat && len <= params.eta2_hat;
}

}  // namespace

bool bgms_needs_f(const BgmsContext& ctx, const BgmsParams& params, const BgmsState& state) {
  return ctx.has_step && (state.j >= params.J || step_filter(ctx, params));
}

UpdateDecision bgms_update(const BgmsContext& ctx, std::optional<double> f_trial, const BgmsParams& params,
                           BgmsState& state) {
  const double sigma = ctx.sigma_k;
  const double retry = sigma == 0.0 ? state.sigma_ini : params.gamma2 * sigma;
  UpdateDecision d;
  if (!ctx.has_step) {
    d.outcome = sigma == 0.0 ? Outcome::ZeroSigmaRetry : Outcome::PreRejected;
    d.sigma_next = retry;
    ++state.j;
  } else if (bgms_needs_f(ctx, params, state)) {
    if (!f_trial) throw std::logic_error("bgms_update: trial value required");
    d.evaluated_f = true;
    const double pred = ctx.predicted();
    const bool noise = roundoff_regime(ctx.f_k, *f_trial, pred);
    if (pred != 0.0) d.rho = noise ? 1.0 : (ctx.f_k - *f_trial) / pred;
    if (std::isfinite(*f_trial) &&
        (noise || *f_trial <= ctx.f_k - params.alpha_dec * std::pow(ctx.step_norm, ctx.p + 1))) {
      d.accept = true;
      d.outcome = Outcome::Successful;
      d.sigma_next = 0.0;
      state.j = 0;
    } else {
      d.outcome = Outcome::Unsuccessful;
      d.sigma_next = retry;
      ++state.j;
    }
  } else {
    d.outcome = Outcome::PreRejected;
    d.sigma_next = retry;
    ++state.j;
  }
  state.sigma_ini = std::max({params.gamma1 * sigma, params.gamma1 * state.sigma_ini, params.sigma_min});
  return d;
}

}  // namespace arp
