#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arp/objective.hpp"
#include "arp/types.hpp"

namespace arp {

enum class OracleMode { Explicit, TensorFree, HessianTensorFree };

std::string to_string(OracleMode m);
OracleMode oracle_mode_from_string(const std::string& s);

struct EvalCounters {
  long n_f = 0;
  long n_deriv = 0;
  // auxiliary product counts
  long n_hess_matrix = 0;
  long n_hess_vec = 0;
  long n_tensor_full = 0;
  long n_tensor_vec = 0;
  long n_tensor_vec_vec = 0;
};

class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Derivative data of order <= 3 at one point. Higher-order pieces are either
// stored matrices/tensors or closures, depending on the oracle mode.
class TaylorData {
 public:
  struct Second {
    std::optional<Matrix> matrix;
    std::function<Vector(const Vector&)> apply;
  };
  struct Third {
    std::optional<std::vector<Matrix>> full;  // slice i = T[e_i]
    std::function<Matrix(const Vector&)> vec;
    std::function<Vector(const Vector&, const Vector&)> vec_vec;
  };

  TaylorData(double f0, Vector g) : f0_(f0), g_(std::move(g)), order_(1) {}
  TaylorData(double f0, Vector g, Second h) : f0_(f0), g_(std::move(g)), order_(2), h_(std::move(h)) {}
  TaylorData(double f0, Vector g, Second h, Third t)
      : f0_(f0), g_(std::move(g)), order_(3), h_(std::move(h)), t_(std::move(t)) {}

  // Convenience for dense data (tests, small problems).
  static TaylorData dense(double f0, Vector g);
  static TaylorData dense(double f0, Vector g, Matrix h);
  static TaylorData dense(double f0, Vector g, Matrix h, std::vector<Matrix> t);

  int order() const { return order_; }
  std::size_t dim() const { return static_cast<std::size_t>(g_.size()); }
  double f0() const { return f0_; }
  const Vector& g() const { return g_; }

  bool has_hessian_matrix() const { return order_ >= 2 && h_.matrix.has_value(); }
  const Matrix& hessian() const;
  Vector hess_vec(const Vector& v) const;

  bool has_tensor_vec() const { return order_ >= 3 && (t_.full.has_value() || bool(t_.vec)); }
  Matrix tensor_vec(const Vector& v) const;
  Vector tensor_vec_vec(const Vector& v, const Vector& w) const;

  // t(s) truncated to order p (<= order()).
  double value(const Vector& s, int p) const;
  // t(0) - t(s), summed term by term so it keeps accuracy when |f0| is large.
  double decrease(const Vector& s, int p) const;
  Vector gradient(const Vector& s, int p) const;
  double value(const Vector& s) const { return value(s, order_); }
  Vector gradient(const Vector& s) const { return gradient(s, order_); }

 private:
  void need(int p) const;

  double f0_;
  Vector g_;
  int order_;
  Second h_;
  Third t_;
};

// Owns counters and the derivative cache for one run.
class Oracle {
 public:
  Oracle(std::shared_ptr<const Objective> objective, OracleMode mode);

  std::size_t dim() const { return objective_->dim(); }
  int max_order() const { return objective_->max_order(); }
  OracleMode mode() const { return mode_; }
  const Objective& objective() const { return *objective_; }
  const std::shared_ptr<const Objective>& shared_objective() const { return objective_; }

  double value(const Vector& x);
  // Counts one derivative evaluation per new point.
  const Vector& gradient(const Vector& x);
  // Derivative data of order p at x; reuses the bundle if x was already seen.
  const TaylorData& taylor(const Vector& x, double f0, int p);
  // t_x(s) from cached data; no new objective calls.
  double taylor_value(const Vector& x, const Vector& s, int p) const;

  const EvalCounters& counters() const { return *counters_; }

 private:
  bool at_cached(const Vector& x) const;

  std::shared_ptr<const Objective> objective_;
  OracleMode mode_;
  std::shared_ptr<EvalCounters> counters_;
  std::optional<Vector> cached_x_;
  Vector cached_g_;
  std::optional<TaylorData> cached_taylor_;
};

// Worst relative error (unit floor) between analytic actions of the given
// order and central differences of the next-lower order, over random unit
// directions. Works on a private copy, so the caller's counters and cache
// are untouched.
double fd_check(const Oracle& oracle, const Vector& x, int order, double h = 0.0,
                int directions = 10, std::uint64_t seed = 7);

}  // namespace arp
