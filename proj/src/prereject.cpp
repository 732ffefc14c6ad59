#include <stdexcept>

#include "arp/update.hpp"

namespace arp {

double alpha_bar(const Poly1d& t_ray, int p, double xi) {
  if (!(t_ray.coeff(1) < 0.0)) throw std::logic_error("alpha_bar: ray is not a descent direction");
  const Poly1d dt = t_ray.derivative();
  const Poly1d gap = Poly1d{xi} - dt;
  const Poly1d curv = dt.derivative().shifted(1) + gap * static_cast<double>(p);
  return smallest_positive_root({gap, curv});
}

PrerejectResult prereject(const Vector& g, const Vector& s, const Poly1d& t_ray, double sigma, int p) {
  PrerejectResult r;
  if (g.dot(s) >= 0.0) return r;
  const double ns = s.norm();
  const Poly1d m = model_ray(t_ray, sigma, p);
  r.xi = std::max(0.0, m.derivative()(ns));
  r.alpha_bar = alpha_bar(t_ray, p, r.xi);
  r.verdict = ns <= r.alpha_bar ? Persistence::Persistent : Persistence::Transient;
  return r;
}

}  // namespace arp
