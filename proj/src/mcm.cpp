#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "arp/subsolve.hpp"

namespace arp {

namespace {

struct Ar2Eval {
  double value;  // m(s) - m(0)
  double grad_m;
  double grad_t;
};

Ar2Eval evaluate(const Vector& g, const Matrix& H, double sigma, const Vector& s) {
  Vector gt = g + H * s;
  const double ns = s.norm();
  Vector gm = gt + sigma * ns * s;
  return {g.dot(s) + 0.5 * s.dot(H * s) + sigma / 3.0 * ns * ns * ns, gm.norm(), gt.norm()};
}

// positive root of x^2 + b x - c = 0 for c >= 0, without cancellation
double quad_root(double b, double c) {
  double disc = std::sqrt(b * b + 4.0 * c);
  return b >= 0.0 ? 2.0 * c / (b + disc) : 0.5 * (disc - b);
}

}  // namespace

SolveReport solve_mcm(const Vector& g, const Matrix& Hin, double sigma, const TerminationCondition& tc,
                      int max_iter) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("solve_mcm: sigma must be positive");
  const Eigen::Index d = g.size();
  if (Hin.rows() != d || Hin.cols() != d) throw std::invalid_argument("solve_mcm: dimension mismatch");
  if (!Hin.allFinite() || !g.allFinite()) throw std::invalid_argument("solve_mcm: non-finite data");
  const Matrix H = 0.5 * (Hin + Hin.transpose());

  SolveReport rep;
  auto finish = [&](Vector s, double lambda, SolveStatus status) {
    Ar2Eval e = evaluate(g, H, sigma, s);
    rep.step = std::move(s);
    rep.model_decrease = -e.value;
    rep.grad_norm = e.grad_m;
    rep.multiplier = lambda;
    rep.status = status;
    return rep;
  };

  Eigen::SelfAdjointEigenSolver<Matrix> eig(H);
  const Vector& ev = eig.eigenvalues();
  const Matrix& Q = eig.eigenvectors();
  const double lmin = ev[0], lmax = ev[d - 1];
  const double lam_low = std::max(0.0, -lmin);
  const double gn = g.norm();

  if (gn == 0.0) {
    if (lmin >= 0.0) return finish(Vector::Zero(d), 0.0, SolveStatus::Converged);
    rep.hard_case = true;
    return finish((lam_low / sigma) * Q.col(0), lam_low, SolveStatus::Converged);
  }

  // Hard case: g has (numerically) no component along the leftmost eigenspace
  // and the step built from the remaining components is too short.
  if (lmin < 0.0) {
    const double scale = std::max({1.0, std::abs(lmin), std::abs(lmax)});
    Vector gamma = Q.transpose() * g;
    double comp = 0.0;
    Eigen::Index nmin = 0;
    while (nmin < d && ev[nmin] <= lmin + 1e-10 * scale) {
      comp += gamma[nmin] * gamma[nmin];
      ++nmin;
    }
    if (std::sqrt(comp) <= 1e-10 * gn) {
      Vector s_perp = Vector::Zero(d);
      for (Eigen::Index i = nmin; i < d; ++i) s_perp -= gamma[i] / (ev[i] + lam_low) * Q.col(i);
      const double target = lam_low / sigma;
      if (s_perp.norm() <= target) {
        const double tau = std::sqrt(std::max(0.0, target * target - s_perp.squaredNorm()));
        rep.hard_case = true;
        Vector s = s_perp + tau * Q.col(0);
        Ar2Eval e = evaluate(g, H, sigma, s);
        return finish(std::move(s), lam_low,
                      tc_holds(tc, e.grad_m, e.grad_t, s.norm(), sigma, 2) ? SolveStatus::Converged
                                                                           : SolveStatus::IterLimit);
      }
    }
  }

  // lambda* = sigma |s*| lies between the roots implied by
  // gn/(lmax+lambda) <= |s*| <= gn/(lmin+lambda).
  double lo = std::max(lam_low, quad_root(lmax, sigma * gn));
  double hi = std::max(lo, quad_root(lmin, sigma * gn));
  hi = std::max(hi, lam_low) * (1.0 + 1e-12) + 1e-300;
  double lambda = lo > lam_low ? lo : hi;

  Vector best;
  double best_lambda = 0.0;
  double best_val = 0.0;
  const Matrix I = Matrix::Identity(d, d);
  for (int it = 0; it < max_iter; ++it) {
    rep.iterations = it + 1;
    Eigen::LLT<Matrix> llt(H + lambda * I);
    ++rep.factorizations;
    if (llt.info() != Eigen::Success || lambda <= 0.0) {
      lo = lambda;
      lambda = 0.5 * (lo + hi);
      continue;
    }
    Vector s = -llt.solve(g);
    const double ns = s.norm();
    Ar2Eval e = evaluate(g, H, sigma, s);
    if (e.value < best_val || best.size() == 0) {
      if (e.value < 0.0) {
        best = s;
        best_lambda = lambda;
        best_val = e.value;
      }
    }
    if (e.value < 0.0 && tc_holds(tc, e.grad_m, e.grad_t, ns, sigma, 2))
      return finish(std::move(s), lambda, SolveStatus::Converged);

    const double phi = 1.0 / ns - sigma / lambda;
    if (phi < 0.0) lo = lambda; else hi = lambda;
    if (phi == 0.0 || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) break;

    Vector w = llt.matrixL().solve(s);
    const double dphi = w.squaredNorm() / (ns * ns * ns) + sigma / (lambda * lambda);
    double next = lambda - phi / dphi;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lambda = next;
  }
  if (best.size() == 0) {
    rep.step = Vector::Zero(d);
    rep.status = SolveStatus::Failure;
    return rep;
  }
  Ar2Eval e = evaluate(g, H, sigma, best);
  const bool ok = tc_holds(tc, e.grad_m, e.grad_t, best.norm(), sigma, 2);
  return finish(std::move(best), best_lambda, ok ? SolveStatus::Converged : SolveStatus::IterLimit);
}

}  // namespace arp
