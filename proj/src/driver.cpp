#include "arp/driver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace arp {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Simple: return "simple";
    case Strategy::SimplePlus: return "simple+";
    case Strategy::Interp: return "interp";
    case Strategy::InterpPlus: return "interp+";
    case Strategy::Bgms: return "bgms";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& s) {
  for (Strategy v : {Strategy::Simple, Strategy::SimplePlus, Strategy::Interp, Strategy::InterpPlus, Strategy::Bgms})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown strategy: " + s);
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::FirstOrderPoint: return "first_order_point";
    case RunStatus::IterLimit: return "iter_limit";
    case RunStatus::NumericalError: return "numerical_error";
  }
  return "?";
}

RunStatus run_status_from_string(const std::string& s) {
  for (RunStatus v : {RunStatus::FirstOrderPoint, RunStatus::IterLimit, RunStatus::NumericalError})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown run status: " + s);
}

void RunConfig::validate() const {
  if (p < 1 || p > 3) throw std::invalid_argument("p must be 1, 2 or 3");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (max_iter < 0) throw std::invalid_argument("max_iter must be nonnegative");
  if (!sigma0.taylor && !(sigma0.value > 0.0)) throw std::invalid_argument("constant sigma0 must be positive");
  if (!(tc.value > 0.0)) throw std::invalid_argument("termination parameter must be positive");
  switch (strategy) {
    case Strategy::Simple:
    case Strategy::SimplePlus: simple.validate(); break;
    case Strategy::Interp:
    case Strategy::InterpPlus: interp.validate(); break;
    case Strategy::Bgms: bgms.validate(); break;
  }
}

namespace {

double sigma_min_of(const RunConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::Interp:
    case Strategy::InterpPlus: return cfg.interp.simple.sigma_min;
    case Strategy::Bgms: return cfg.bgms.sigma_min;
    default: return cfg.simple.sigma_min;
  }
}

double gamma2_of(const RunConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::Interp:
    case Strategy::InterpPlus: return cfg.interp.simple.gamma2;
    case Strategy::Bgms: return cfg.bgms.gamma2;
    default: return cfg.simple.gamma2;
  }
}

SolveReport fail_report(Eigen::Index d) {
  SolveReport r;
  r.step = Vector::Zero(d);
  r.status = SolveStatus::Failure;
  return r;
}

// sigma = 0 with p = 2: Newton step when the Hessian is positive definite.
SolveReport newton_step(const TaylorData& t) {
  const Eigen::Index d = static_cast<Eigen::Index>(t.dim());
  Matrix H;
  if (t.has_hessian_matrix()) {
    H = t.hessian();
  } else {
    H.resize(d, d);
    for (Eigen::Index j = 0; j < d; ++j) H.col(j) = t.hess_vec(Vector::Unit(d, j));
  }
  Eigen::LLT<Matrix> llt(0.5 * (H + H.transpose()));
  if (llt.info() != Eigen::Success) return fail_report(d);
  SolveReport r;
  r.step = -llt.solve(t.g());
  r.model_decrease = -0.5 * t.g().dot(r.step);
  r.factorizations = 1;
  r.status = SolveStatus::Converged;
  return r;
}

SolveReport solve_step(const TaylorData& t, double sigma, const RunConfig& cfg) {
  const Eigen::Index d = static_cast<Eigen::Index>(t.dim());
  switch (cfg.p) {
    case 1: {
      if (!(sigma > 0.0)) return fail_report(d);
      SolveReport r;
      r.step = -t.g() / sigma;
      r.model_decrease = t.g().squaredNorm() / (2 * sigma);
      r.status = SolveStatus::Converged;
      return r;
    }
    case 2:
      if (sigma == 0.0) return newton_step(t);
      return solve_ar2_subproblem(t, sigma, cfg.tc, cfg.ar2_solver, cfg.max_krylov);
    default: {
      InnerConfig inner = cfg.inner;
      inner.solver = cfg.ar2_solver;
      inner.max_krylov = cfg.max_krylov;
      return solve_ar3_subproblem(t, sigma, cfg.tc, inner);
    }
  }
}

}  // namespace

RunResult minimize(Oracle& oracle, const Vector& x0, const RunConfig& cfg) {
  cfg.validate();
  if (cfg.p > oracle.max_order()) throw CapabilityError("oracle does not provide derivatives of order " +
                                                        std::to_string(cfg.p));
  const auto t_start = std::chrono::steady_clock::now();
  const int p = cfg.p;
  RunResult res;
  Vector x = x0;
  double f = oracle.value(x);
  Vector g = oracle.gradient(x);
  double sigma = 0.0;
  long subsolves = 0;

  auto stamp = [&](IterationRecord& r) {
    r.n_f = oracle.counters().n_f;
    r.n_deriv = oracle.counters().n_deriv;
    r.n_subsolves = subsolves;
  };
  auto finish = [&](RunStatus st, int k) {
    IterationRecord r;
    r.k = k;
    r.sigma = sigma;
    r.f = f;
    r.grad_norm = g.norm();
    r.outcome = Outcome::FinalIterate;
    stamp(r);
    res.trace.push_back(r);
    res.status = st;
    res.x_final = x;
    res.f_final = f;
    res.grad_norm_final = r.grad_norm;
    res.iterations = k;
    res.counters = oracle.counters();
    res.n_subsolves = subsolves;
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
  };

  if (!std::isfinite(f) || !g.allFinite()) return finish(RunStatus::NumericalError, 0);

  const double sigma_min = sigma_min_of(cfg);
  if (cfg.sigma0.taylor) {
    const long before = oracle.counters().n_f;
    sigma = sigma0_taylor(oracle, x, f, p, sigma_min, cfg.seed);
    res.used_taylor_sigma0 = true;
    res.sigma0_evaluations = oracle.counters().n_f - before;
  } else {
    sigma = cfg.sigma0.value;
  }
  res.sigma0 = sigma;
  BgmsState bgms;
  if (cfg.strategy == Strategy::Bgms) {
    bgms.sigma_ini = sigma;
    sigma = 0.0;
  }
  const bool plus = cfg.strategy == Strategy::SimplePlus || cfg.strategy == Strategy::InterpPlus;
  const double gamma2 = gamma2_of(cfg);

  int failures = 0;
  for (int k = 0;; ++k) {
    const double gn = g.norm();
    const StopVerdict verdict = cfg.stop ? cfg.stop(x, f, g) : (gn < cfg.eps ? StopVerdict::Stop : StopVerdict::Continue);
    if (verdict == StopVerdict::Stop) return finish(RunStatus::FirstOrderPoint, k);
    if (verdict == StopVerdict::Abort) return finish(RunStatus::NumericalError, k);
    if (k >= cfg.max_iter) return finish(RunStatus::IterLimit, k);

    IterationRecord rec;
    rec.k = k;
    rec.sigma = sigma;
    rec.f = f;
    rec.grad_norm = gn;
    stamp(rec);

    const TaylorData& t = oracle.taylor(x, f, p);
    ++subsolves;
    SolveReport rep = solve_step(t, sigma, cfg);
    const Vector& s = rep.step;
    const bool have_step = rep.status != SolveStatus::Failure && s.allFinite() && s.norm() > 0.0 &&
                           rep.model_decrease > 0.0;

    UpdateDecision dec;
    double f_trial = f;
    if (!have_step) {
      if (cfg.strategy == Strategy::Bgms) {
        BgmsContext ctx;
        ctx.sigma_k = sigma;
        ctx.f_k = f;
        ctx.p = p;
        dec = bgms_update(ctx, std::nullopt, cfg.bgms, bgms);
      } else {
        dec.outcome = Outcome::PreRejected;
        dec.sigma_next = gamma2 * sigma;
      }
      if (dec.outcome == Outcome::ZeroSigmaRetry) failures = 0; else ++failures;
    } else {
      failures = 0;
      const double ns = s.norm();
      rec.step_norm = ns;
      const double t_dec = t.decrease(s, p);
      const double t_s = f - t_dec;
      const double reg = sigma / (p + 1) * std::pow(ns, p + 1);
      const double m_s = t_s + reg;
      Poly1d t_ray;
      PrerejectResult pr;
      bool transient = false;
      if (plus || cfg.strategy == Strategy::Interp) t_ray = restrict_to_ray(t, s / ns, p);
      if (plus) {
        pr = prereject(g, s, t_ray, sigma, p);
        transient = pr.verdict == Persistence::Transient;
      }
      if (transient) {
        dec.outcome = Outcome::PreRejected;
        dec.sigma_next = gamma2 * sigma;
      } else {
        switch (cfg.strategy) {
          case Strategy::Simple:
          case Strategy::SimplePlus: {
            f_trial = oracle.value(x + s);
            dec = simple_update(reduction_ratio(f, f_trial, t_dec), sigma, cfg.simple);
            break;
          }
          case Strategy::Interp:
          case Strategy::InterpPlus: {
            f_trial = oracle.value(x + s);
            InterpContext ctx;
            ctx.f_k = f;
            ctx.f_trial = f_trial;
            ctx.t_ray = t_ray;
            ctx.m_s = m_s;
            ctx.t_s = t_s;
            ctx.model_decrease = t_dec - reg;
            ctx.step_norm = ns;
            ctx.sigma_k = sigma;
            ctx.p = p;
            dec = interpolation_update(ctx, cfg.interp, plus ? pr.alpha_bar : std::numeric_limits<double>::infinity());
            break;
          }
          case Strategy::Bgms: {
            BgmsContext ctx;
            ctx.sigma_k = sigma;
            ctx.has_step = true;
            ctx.step_norm = ns;
            ctx.step_inf_norm = s.lpNorm<Eigen::Infinity>();
            ctx.x_inf_norm = x.lpNorm<Eigen::Infinity>();
            ctx.f_k = f;
            ctx.t_s = t_s;
            ctx.taylor_decrease = t_dec;
            ctx.p = p;
            std::optional<double> ft;
            if (bgms_needs_f(ctx, cfg.bgms, bgms)) ft = f_trial = oracle.value(x + s);
            dec = bgms_update(ctx, ft, cfg.bgms, bgms);
            break;
          }
        }
      }
    }
    rec.rho = dec.rho;
    rec.outcome = dec.outcome;
    res.trace.push_back(rec);

    if (dec.accept) {
      x = x + s;
      f = f_trial;
      g = oracle.gradient(x);
      if (!std::isfinite(f) || !g.allFinite()) {
        sigma = dec.sigma_next;
        return finish(RunStatus::NumericalError, k + 1);
      }
    }
    sigma = dec.sigma_next;
    if (!std::isfinite(sigma) || sigma > 1e308) return finish(RunStatus::NumericalError, k + 1);
    if (failures >= 3) return finish(RunStatus::NumericalError, k + 1);
  }
}

std::string marker_for(Outcome o) {
  switch (o) {
    case Outcome::ExtremelySuccessful:
    case Outcome::VerySuccessful:
    case Outcome::Successful: return "diamond";
    case Outcome::Unsuccessful:
    case Outcome::ExtremelyUnsuccessful: return "circle";
    case Outcome::PreRejected:
    case Outcome::ZeroSigmaRetry: return "empty_circle";
    case Outcome::FinalIterate: return "triangle";
  }
  return "?";
}

std::vector<DotRow> trace_to_dotplot_data(const std::vector<IterationRecord>& trace, double f_star) {
  std::vector<DotRow> rows;
  rows.reserve(trace.size());
  for (const auto& r : trace)
    rows.push_back({r.k, std::max(r.f - f_star, 1e-25), std::max(r.sigma, 1e-10), marker_for(r.outcome)});
  return rows;
}

std::vector<DotRow> trace_to_dotplot_data(const RunResult& result, double f_star) {
  return trace_to_dotplot_data(result.trace, f_star);
}

}  // namespace arp
