#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "arp/objective.hpp"
#include "arp/oracle.hpp"

namespace arp::testing {

// Univariate polynomial objective with hand-written derivatives.
class PolyObjective1d : public Objective {
 public:
  explicit PolyObjective1d(std::vector<double> c) : c_(std::move(c)) {}
  std::size_t dim() const override { return 1; }
  double value(const Vector& x) const override { return eval(x[0], 0); }
  Vector gradient(const Vector& x) const override { return Vector::Constant(1, eval(x[0], 1)); }
  Matrix hessian(const Vector& x) const override { return Matrix::Constant(1, 1, eval(x[0], 2)); }
  Vector tensor_vec_vec(const Vector& x, const Vector& v, const Vector& w) const override {
    return Vector::Constant(1, eval(x[0], 3) * v[0] * w[0]);
  }

 private:
  // k-th derivative of sum c_i x^i
  double eval(double x, int k) const {
    double s = 0.0;
    for (std::size_t i = k; i < c_.size(); ++i) {
      double fall = 1.0;
      for (int j = 0; j < k; ++j) fall *= static_cast<double>(i - j);
      s += c_[i] * fall * std::pow(x, static_cast<double>(i) - k);
    }
    return s;
  }
  std::vector<double> c_;
};

// f(x) = c + b.x + x'Ax/2 + T[x,x,x]/6 with a symmetric dense tensor.
class DenseCubic : public Objective {
 public:
  DenseCubic(double c, Vector b, Matrix A, std::vector<Matrix> T)
      : c_(c), b_(std::move(b)), A_(std::move(A)), T_(std::move(T)) {}
  std::size_t dim() const override { return static_cast<std::size_t>(b_.size()); }
  double value(const Vector& x) const override { return c_ + b_.dot(x) + 0.5 * x.dot(A_ * x) + x.dot(txx(x, x)) / 6.0; }
  Vector gradient(const Vector& x) const override { return b_ + A_ * x + 0.5 * txx(x, x); }
  Matrix hessian(const Vector& x) const override {
    Matrix h = A_;
    for (Eigen::Index i = 0; i < x.size(); ++i) h += x[i] * T_[i];
    return h;
  }
  Vector tensor_vec_vec(const Vector&, const Vector& v, const Vector& w) const override { return txx(v, w); }

 private:
  Vector txx(const Vector& v, const Vector& w) const {
    Vector r(b_.size());
    for (Eigen::Index i = 0; i < b_.size(); ++i) r[i] = v.dot(T_[i] * w);
    return r;
  }
  double c_;
  Vector b_;
  Matrix A_;
  std::vector<Matrix> T_;
};

// f(x) = a.x + c
class Linear : public Objective {
 public:
  explicit Linear(Vector a, double c = 0.0) : a_(std::move(a)), c_(c) {}
  std::size_t dim() const override { return static_cast<std::size_t>(a_.size()); }
  double value(const Vector& x) const override { return a_.dot(x) + c_; }
  Vector gradient(const Vector&) const override { return a_; }
  Matrix hessian(const Vector&) const override { return Matrix::Zero(a_.size(), a_.size()); }
  Vector tensor_vec_vec(const Vector&, const Vector&, const Vector&) const override { return Vector::Zero(a_.size()); }

 private:
  Vector a_;
  double c_;
};

// f(x) = |x|^2 / 2
class HalfSquaredNorm : public Objective {
 public:
  explicit HalfSquaredNorm(std::size_t d) : d_(d) {}
  std::size_t dim() const override { return d_; }
  double value(const Vector& x) const override { return 0.5 * x.squaredNorm(); }
  Vector gradient(const Vector& x) const override { return x; }
  Matrix hessian(const Vector&) const override { return Matrix::Identity(d_, d_); }
  Vector tensor_vec_vec(const Vector&, const Vector&, const Vector&) const override { return Vector::Zero(d_); }

 private:
  std::size_t d_;
};

inline Vector gaussian(std::mt19937_64& rng, Eigen::Index d, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = n(rng);
  return v;
}

inline Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index d, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = n(rng);
  return 0.5 * (m + m.transpose());
}

// Fully symmetric third-order tensor stored as slices T[i](j,k).
inline std::vector<Matrix> random_sym_tensor(std::mt19937_64& rng, Eigen::Index d, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<Matrix> t(d, Matrix::Zero(d, d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i; j < d; ++j)
      for (Eigen::Index k = j; k < d; ++k) {
        const double v = n(rng);
        t[i](j, k) = t[i](k, j) = t[j](i, k) = t[j](k, i) = t[k](i, j) = t[k](j, i) = v;
      }
  return t;
}

// Minimum of a 2-D function over [-r, r]^2: coarse grid, then repeated local
// grid refinement around the best few cells.
inline double grid_min_2d(const std::function<double(double, double)>& fn, double r, int n = 401, int rounds = 12) {
  struct Pt {
    double v, x, y;
  };
  std::vector<Pt> best;
  const double h = 2.0 * r / (n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -r + i * h, y = -r + j * h;
      best.push_back({fn(x, y), x, y});
    }
  std::partial_sort(best.begin(), best.begin() + 8, best.end(), [](const Pt& a, const Pt& b) { return a.v < b.v; });
  best.resize(8);
  double m = best.front().v;
  for (const auto& start : best) {
    double cx = start.x, cy = start.y, w = h;
    for (int k = 0; k < rounds; ++k) {
      double bx = cx, by = cy, bv = fn(cx, cy);
      for (int i = -10; i <= 10; ++i)
        for (int j = -10; j <= 10; ++j) {
          const double x = cx + i * w / 10.0, y = cy + j * w / 10.0;
          const double v = fn(x, y);
          if (v < bv) bv = v, bx = x, by = y;
        }
      cx = bx, cy = by, w /= 4.0;
      m = std::min(m, bv);
    }
  }
  return m;
}

// Minimum of a 1-D function on [lo, hi] by grid plus golden-section polish.
inline double grid_min_1d(const std::function<double(double)>& fn, double lo, double hi, int n = 20001) {
  double bx = lo, bv = fn(lo);
  const double h = (hi - lo) / (n - 1);
  for (int i = 1; i < n; ++i) {
    const double x = lo + i * h;
    const double v = fn(x);
    if (v < bv) bv = v, bx = x;
  }
  double a = std::max(lo, bx - h), b = std::min(hi, bx + h);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; k < 100; ++k) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (fn(c) < fn(d)) b = d; else a = c;
  }
  return std::min(bv, fn(0.5 * (a + b)));
}

}  // namespace arp::testing
