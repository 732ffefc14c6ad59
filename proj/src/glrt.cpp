#include <cmath>
#include <vector>

#include "arp/subsolve.hpp"

namespace arp {

SolveReport solve_glrt(const Vector& g, const std::function<Vector(const Vector&)>& hess_vec, double sigma,
                       const TerminationCondition& tc, int max_krylov) {
  if (!(sigma > 0.0)) throw std::invalid_argument("solve_glrt: sigma must be positive");
  const Eigen::Index d = g.size();
  SolveReport rep;
  const double gn = g.norm();
  if (gn == 0.0) {
    rep.step = Vector::Zero(d);
    rep.status = SolveStatus::Converged;
    return rep;
  }
  const int kmax = max_krylov > 0 ? std::min<int>(max_krylov, static_cast<int>(d)) : static_cast<int>(d);

  Matrix Q(d, kmax);
  std::vector<double> alpha, beta;
  Q.col(0) = g / gn;
  const TerminationCondition small_tc = TerminationCondition::absolute(1e-14 * std::max(1.0, gn));
  Vector y;
  double value = 0.0;
  for (int k = 0; k < kmax; ++k) {
    rep.iterations = k + 1;
    Vector w = hess_vec(Q.col(k));
    ++rep.products;
    alpha.push_back(Q.col(k).dot(w));
    w -= alpha[k] * Q.col(k);
    if (k > 0) w -= beta[k - 1] * Q.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).transpose() * w);
    beta.push_back(w.norm());

    const int n = k + 1;
    Matrix T = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < n) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Vector gs = Vector::Zero(n);
    gs[0] = gn;
    SolveReport small = solve_mcm(gs, T, sigma, small_tc);
    rep.factorizations += small.factorizations;
    if (small.status == SolveStatus::Failure) continue;
    y = small.step;
    const double ny = y.norm();
    Vector gt_small = gs + T * y;
    Vector gm_small = gt_small + sigma * ny * y;
    const double tail = beta[k] * y[n - 1];
    const double grad_m = std::sqrt(gm_small.squaredNorm() + tail * tail);
    const double grad_t = std::sqrt(gt_small.squaredNorm() + tail * tail);
    value = gs.dot(y) + 0.5 * y.dot(T * y) + sigma / 3.0 * ny * ny * ny;
    rep.grad_norm = grad_m;
    // an invariant subspace short of the full space; exhausting the space is not a breakdown
    const bool breakdown = n < d && beta[k] <= 1e-14 * std::max(1.0, std::abs(alpha[k]));
    if (value < 0.0 && tc_holds(tc, grad_m, grad_t, ny, sigma, 2)) {
      rep.step = Q.leftCols(n) * y;
      rep.model_decrease = -value;
      rep.status = SolveStatus::Converged;
      return rep;
    }
    if (breakdown) {
      rep.step = Q.leftCols(n) * y;
      rep.model_decrease = -value;
      rep.status = SolveStatus::Failure;
      return rep;
    }
    if (k + 1 < kmax) Q.col(k + 1) = w / beta[k];
  }
  if (y.size() == 0 || !(value < 0.0)) {
    rep.step = Vector::Zero(d);
    rep.status = SolveStatus::Failure;
    return rep;
  }
  rep.step = Q.leftCols(y.size()) * y;
  rep.model_decrease = -value;
  rep.status = SolveStatus::IterLimit;
  return rep;
}

}  // namespace arp
