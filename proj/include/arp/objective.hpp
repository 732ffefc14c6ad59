#pragma once

#include <cstddef>

#include "arp/types.hpp"

namespace arp {

// Stateless objective with analytic derivatives up to max_order().
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const = 0;
  virtual int max_order() const { return 3; }

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual Matrix hessian(const Vector& x) const = 0;
  virtual Vector hessian_vec(const Vector& x, const Vector& v) const { return hessian(x) * v; }
  // T[v] as a d x d matrix; default builds columns from tensor_vec_vec.
  virtual Matrix tensor_vec(const Vector& x, const Vector& v) const;
  virtual Vector tensor_vec_vec(const Vector& x, const Vector& v, const Vector& w) const = 0;
};

}  // namespace arp
