#include <cmath>
#include <stdexcept>
#include <vector>

#include "arp/update.hpp"

namespace arp {

void InterpParams::validate() const {
  simple.validate();
  if (!(0.0 < gamma_min && gamma_min < simple.gamma1 && simple.gamma2 < gamma_max))
    throw std::invalid_argument("interp: need 0 < gamma_min < gamma1 and gamma2 < gamma_max");
  if (!(0.0 < beta && beta < 1.0)) throw std::invalid_argument("interp: need 0 < beta < 1");
  if (!(alpha_max > 1.0)) throw std::invalid_argument("interp: need alpha_max > 1");
}

namespace {

bool le(double v) { return v <= 1e-10 * (1.0 + std::abs(v)); }

}  // namespace

std::optional<SearchResult> interp_search(const SearchInputs& in, SearchMode mode, const InterpParams& params,
                                          double alpha_cap) {
  const int p = in.p;
  const Poly1d& t = in.t_ray;
  const Poly1d dt = t.derivative();
  const Poly1d ddt = dt.derivative();
  const double inv = 1.0 / (p + 1);

  // all written as "<= 0"
  const Poly1d curv = p * dt - ddt.shifted(1);
  const Poly1d slope = dt;
  const Poly1d bound = mode == SearchMode::UnsuccessfulMin ? dt + Poly1d::monomial(p, in.sigma_k)
                                                           : (dt + Poly1d::monomial(p, in.sigma_k)) * -1.0;
  Poly1d c;
  switch (mode) {
    case SearchMode::UnsuccessfulMin:
      c = (Poly1d{t.coeff(0)} - t + dt.shifted(1) * inv) * params.simple.eta1 - Poly1d{in.p_f.coeff(0)} + in.p_f;
      break;
    case SearchMode::SuccessfulMaxFgeqT:
      c = t - dt.shifted(1) * inv - in.p_f - Poly1d{params.beta * (in.m_s - in.f_trial)};
      break;
    case SearchMode::SuccessfulMaxFltT:
      // m - t = -t' alpha / (p+1) once sigma is eliminated
      c = dt.shifted(1) * -inv - Poly1d{params.beta * (in.m_s - in.t_s)};
      break;
  }
  const std::vector<Poly1d> cons{curv, slope, bound, c};

  std::vector<double> cand;
  for (const auto& q : cons) {
    if (q.degree() < 1) continue;
    for (double r : real_roots(q))
      if (r > kPositiveTol) cand.push_back(r);
  }
  if (std::isfinite(alpha_cap) && alpha_cap > kPositiveTol) cand.push_back(alpha_cap);

  std::optional<SearchResult> best;
  for (double a : cand) {
    if (a > alpha_cap * (1.0 + 1e-12)) continue;
    bool ok = true;
    for (const auto& q : cons) ok = ok && le(q(a));
    if (!ok) continue;
    const double s = -dt(a) / std::pow(a, p);
    const bool better = !best || (mode == SearchMode::UnsuccessfulMin ? s < best->sigma : s > best->sigma);
    if (better) best = SearchResult{a, s};
  }
  return best;
}

UpdateDecision interpolation_update(const InterpContext& ctx, const InterpParams& params, double alpha_cap) {
  const SimpleParams& sp = params.simple;
  const double sigma = ctx.sigma_k;
  UpdateDecision d;
  d.evaluated_f = true;
  const double pred = ctx.model_decrease ? *ctx.model_decrease : ctx.f_k - ctx.m_s;
  if (!std::isfinite(ctx.f_trial) || !(std::abs(pred) >= 1e-300)) {
    d.outcome = Outcome::ExtremelyUnsuccessful;
    d.sigma_next = sp.gamma2 * sigma;
    return d;
  }
  if (roundoff_regime(ctx.f_k, ctx.f_trial, pred)) {
    d.rho = 1.0;
    d.accept = true;
    d.outcome = Outcome::VerySuccessful;
    d.sigma_next = std::max(sp.gamma1 * sigma, sp.sigma_min);
    return d;
  }
  const double rho = (ctx.f_k - ctx.f_trial) / pred;
  d.rho = rho;

  SearchInputs in;
  in.t_ray = ctx.t_ray;
  in.p = ctx.p;
  in.sigma_k = sigma;
  in.step_norm = ctx.step_norm;
  in.f_trial = ctx.f_trial;
  in.m_s = ctx.m_s;
  in.t_s = ctx.t_s;

  if (rho >= 1.0) {
    d.accept = true;
    d.outcome = Outcome::ExtremelySuccessful;
    const double chi = ctx.m_s - std::max(ctx.f_trial, ctx.t_s);
    if (chi >= params.chi_min) {
      in.p_f = interpolating_poly(ctx.t_ray, ctx.p, ctx.step_norm, ctx.f_trial);
      auto mode = ctx.f_trial >= ctx.t_s ? SearchMode::SuccessfulMaxFgeqT : SearchMode::SuccessfulMaxFltT;
      auto r = interp_search(in, mode, params, alpha_cap);
      if (r && r->alpha <= params.alpha_max * ctx.step_norm)
        d.sigma_next = std::max(r->sigma, sp.sigma_min);
      else
        d.sigma_next = std::max(params.gamma_min * sigma, sp.sigma_min);
    } else {
      d.sigma_next = std::max(sp.gamma1 * sigma, sp.sigma_min);
    }
  } else if (rho >= sp.eta2) {
    d.accept = true;
    d.outcome = Outcome::VerySuccessful;
    d.sigma_next = std::max(sp.gamma1 * sigma, sp.sigma_min);
  } else if (rho >= sp.eta1) {
    d.accept = true;
    d.outcome = Outcome::Successful;
    d.sigma_next = sigma;
  } else if (rho >= 0.0) {
    d.outcome = Outcome::Unsuccessful;
    d.sigma_next = sp.gamma2 * sigma;
  } else {
    d.outcome = Outcome::ExtremelyUnsuccessful;
    in.p_f = interpolating_poly(ctx.t_ray, ctx.p, ctx.step_norm, ctx.f_trial);
    auto r = interp_search(in, SearchMode::UnsuccessfulMin, params, alpha_cap);
    d.sigma_next = r ? std::min(std::max(r->sigma, sp.gamma2 * sigma), params.gamma_max * sigma) : sp.gamma2 * sigma;
  }
  return d;
}

}  // namespace arp
