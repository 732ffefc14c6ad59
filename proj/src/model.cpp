#include "arp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace arp {

RegularizedModel::RegularizedModel(const TaylorData& taylor, double sigma, int p)
    : taylor_(&taylor), sigma_(sigma), p_(p) {
  if (p < 1 || p > taylor.order()) throw std::invalid_argument("RegularizedModel: order not available");
}

double RegularizedModel::regularizer(double step_norm) const {
  return sigma_ / (p_ + 1) * std::pow(step_norm, p_ + 1);
}

double RegularizedModel::value(const Vector& s) const { return taylor_value(s) + regularizer(s.norm()); }

Vector RegularizedModel::gradient(const Vector& s) const {
  return taylor_gradient(s) + sigma_ * std::pow(s.norm(), p_ - 1) * s;
}

std::pair<double, Vector> RegularizedModel::value_grad(const Vector& s) const { return {value(s), gradient(s)}; }

std::pair<double, Vector> model_value_grad(const RegularizedModel& m, const Vector& s) { return m.value_grad(s); }

Poly1d restrict_to_ray(const TaylorData& t, const Vector& u, int p) {
  const double n = u.norm();
  if (n == 0.0) throw std::invalid_argument("restrict_to_ray: zero direction");
  if (std::abs(n - 1.0) > 1e-12) throw std::invalid_argument("restrict_to_ray: direction is not unit length");
  if (p > t.order()) throw CapabilityError("restrict_to_ray: order not available");
  std::vector<double> c{t.f0(), t.g().dot(u)};
  if (p >= 2) c.push_back(0.5 * u.dot(t.hess_vec(u)));
  if (p >= 3) c.push_back(u.dot(t.tensor_vec_vec(u, u)) / 6.0);
  return Poly1d(std::move(c));
}

Poly1d model_ray(const Poly1d& t_ray, double sigma, int p) {
  Poly1d m = t_ray;
  m.set_coeff(static_cast<std::size_t>(p) + 1, t_ray.coeff(static_cast<std::size_t>(p) + 1) + sigma / (p + 1));
  return m;
}

Poly1d interpolating_poly(const Poly1d& t_ray, int p, double step_norm, double f_trial) {
  if (!(step_norm > 0.0)) throw std::invalid_argument("interpolating_poly: step_norm must be positive");
  std::vector<double> c(static_cast<std::size_t>(p) + 2, 0.0);
  for (int i = 0; i <= p; ++i) c[static_cast<std::size_t>(i)] = t_ray.coeff(static_cast<std::size_t>(i));
  Poly1d base(std::vector<double>(c.begin(), c.end() - 1));
  c.back() = (f_trial - base(step_norm)) / std::pow(step_norm, p + 1);
  return Poly1d(std::move(c));
}

}  // namespace arp
