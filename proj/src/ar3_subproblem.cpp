#include <cmath>
#include <memory>
#include <stdexcept>

#include "arp/driver.hpp"

namespace arp {

namespace {

// m(s) - f0 = t(s) - f0 + sigma/4 |s|^4 as a second-order objective in s.
// Dropping f0 keeps small decreases visible when |f0| is large.
class QuarticModel : public Objective {
 public:
  QuarticModel(const TaylorData& t, double sigma) : t_(t), sigma_(sigma) {}

  std::size_t dim() const override { return t_.dim(); }
  int max_order() const override { return 2; }

  double value(const Vector& s) const override {
    const double n2 = s.squaredNorm();
    return 0.25 * sigma_ * n2 * n2 - t_.decrease(s, 3);
  }
  Vector gradient(const Vector& s) const override { return t_.gradient(s, 3) + sigma_ * s.squaredNorm() * s; }
  Matrix hessian(const Vector& s) const override {
    Matrix h = t_.hessian() + t_.tensor_vec(s);
    h.diagonal().array() += sigma_ * s.squaredNorm();
    h += 2.0 * sigma_ * s * s.transpose();
    return h;
  }
  Vector hessian_vec(const Vector& s, const Vector& v) const override {
    return t_.hess_vec(v) + t_.tensor_vec_vec(s, v) + sigma_ * (s.squaredNorm() * v + 2.0 * s.dot(v) * s);
  }
  Vector tensor_vec_vec(const Vector&, const Vector&, const Vector&) const override {
    throw CapabilityError("quartic model is used as a second-order objective");
  }

 private:
  const TaylorData& t_;
  double sigma_;
};

struct NoDelete {
  void operator()(const Objective*) const {}
};

}  // namespace

SolveReport solve_ar3_subproblem(const TaylorData& t3, double sigma, const TerminationCondition& tc,
                                 const InnerConfig& inner) {
  if (t3.order() < 3) throw CapabilityError("solve_ar3_subproblem: third-order data required");
  if (sigma < 0.0) throw std::invalid_argument("solve_ar3_subproblem: sigma must be nonnegative");
  const Eigen::Index d = static_cast<Eigen::Index>(t3.dim());
  SolveReport rep;
  if (t3.g().norm() == 0.0) {
    rep.step = Vector::Zero(d);
    rep.status = SolveStatus::Converged;
    return rep;
  }

  QuarticModel model(t3, sigma);
  const bool dense = t3.has_hessian_matrix() && t3.has_tensor_vec();
  if (inner.solver == Ar2Solver::Mcm && !dense)
    throw CapabilityError("inner MCM needs a Hessian matrix and tensor-vector products");
  Oracle oracle(std::shared_ptr<const Objective>(&model, NoDelete{}),
                dense ? OracleMode::TensorFree : OracleMode::HessianTensorFree);

  RunConfig rc;
  rc.p = 2;
  rc.max_iter = inner.max_iter;
  rc.sigma0 = Sigma0Policy::constant(inner.sigma0);
  rc.strategy = Strategy::Simple;
  rc.tc = inner.tc;
  rc.ar2_solver = inner.solver;
  rc.max_krylov = inner.max_krylov;
  rc.stop = [&](const Vector& s, double m, const Vector& gm) {
    if (s.norm() > inner.max_step) return StopVerdict::Abort;
    if (!(m < 0.0)) return StopVerdict::Continue;
    const double ns = s.norm();
    const Vector gt = gm - sigma * ns * ns * s;
    return tc_holds(tc, gm.norm(), gt.norm(), ns, sigma, 3) ? StopVerdict::Stop : StopVerdict::Continue;
  };
  if (inner.start.size() != 0 && inner.start.size() != d)
    throw std::invalid_argument("solve_ar3_subproblem: inner start has wrong dimension");
  RunResult r = minimize(oracle, inner.start.size() ? inner.start : Vector::Zero(d), rc);

  rep.step = r.x_final;
  rep.model_decrease = -r.f_final;
  rep.grad_norm = r.grad_norm_final;
  rep.iterations = r.iterations;
  if (r.status == RunStatus::FirstOrderPoint)
    rep.status = SolveStatus::Converged;
  else if (r.status == RunStatus::IterLimit && rep.model_decrease > 0.0)
    rep.status = SolveStatus::IterLimit;
  else
    rep.status = SolveStatus::Failure;
  return rep;
}

}  // namespace arp
