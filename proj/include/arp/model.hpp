#pragma once

#include <utility>

#include "arp/oracle.hpp"
#include "arp/poly1d.hpp"

namespace arp {

// m(s) = t(s) + sigma/(p+1) |s|^(p+1), t truncated to order p.
class RegularizedModel {
 public:
  RegularizedModel(const TaylorData& taylor, double sigma, int p);

  const TaylorData& taylor() const { return *taylor_; }
  double sigma() const { return sigma_; }
  int p() const { return p_; }

  double value(const Vector& s) const;
  Vector gradient(const Vector& s) const;
  std::pair<double, Vector> value_grad(const Vector& s) const;
  double taylor_value(const Vector& s) const { return taylor_->value(s, p_); }
  Vector taylor_gradient(const Vector& s) const { return taylor_->gradient(s, p_); }
  double regularizer(double step_norm) const;

 private:
  const TaylorData* taylor_;
  double sigma_;
  int p_;
};

std::pair<double, Vector> model_value_grad(const RegularizedModel& m, const Vector& s);

// [f0, g.u, u.Hu/2, T[u]^3/6] truncated to order p; u must be a unit vector.
Poly1d restrict_to_ray(const TaylorData& t, const Vector& u, int p);
inline Poly1d restrict_to_ray(const TaylorData& t, const Vector& u) { return restrict_to_ray(t, u, t.order()); }

// t_ray + sigma/(p+1) alpha^(p+1)
Poly1d model_ray(const Poly1d& t_ray, double sigma, int p);

// Coefficients of t_ray for orders 0..p, plus a top coefficient making the
// polynomial pass through f_trial at step_norm.
Poly1d interpolating_poly(const Poly1d& t_ray, int p, double step_norm, double f_trial);

}  // namespace arp
