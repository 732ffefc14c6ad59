#include <memory>

#include "arp/problems.hpp"
#include "jet_objective.hpp"

namespace arp {

std::shared_ptr<const Objective> beale_objective() {
  return make_jet_objective<2>([](const auto& x) {
    constexpr double y[3] = {1.5, 2.25, 2.625};
    auto acc = x[0] * 0.0;
    for (int i = 1; i <= 3; ++i) {
      auto r = y[i - 1] - x[0] + x[0] * ipow(x[1], i);
      acc = acc + r * r;
    }
    return acc;
  });
}

std::shared_ptr<const Objective> powell_singular_objective() {
  return make_jet_objective<4>([](const auto& x) {
    auto a = x[0] + 10.0 * x[1];
    auto b = x[2] - x[3];
    return a * a + 5.0 * (b * b) + ipow(x[1] - 2.0 * x[2], 4) + 10.0 * ipow(x[0] - x[3], 4);
  });
}

namespace {

class Rosenbrock : public Objective {
 public:
  explicit Rosenbrock(std::size_t d) : d_(d) {}
  std::size_t dim() const override { return d_; }

  double value(const Vector& x) const override {
    double f = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double u = x[i] * x[i] - x[i + 1];
      f += 100.0 * u * u + (x[i] - 1.0) * (x[i] - 1.0);
    }
    return f;
  }
  Vector gradient(const Vector& x) const override {
    Vector g = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double u = x[i] * x[i] - x[i + 1];
      g[i] += 400.0 * u * x[i] + 2.0 * (x[i] - 1.0);
      g[i + 1] -= 200.0 * u;
    }
    return g;
  }
  Matrix hessian(const Vector& x) const override {
    Matrix h = Matrix::Zero(x.size(), x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      h(i, i) += 400.0 * (3.0 * x[i] * x[i] - x[i + 1]) + 2.0;
      h(i, i + 1) -= 400.0 * x[i];
      h(i + 1, i) -= 400.0 * x[i];
      h(i + 1, i + 1) += 200.0;
    }
    return h;
  }
  Vector hessian_vec(const Vector& x, const Vector& v) const override {
    Vector r = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      r[i] += (400.0 * (3.0 * x[i] * x[i] - x[i + 1]) + 2.0) * v[i] - 400.0 * x[i] * v[i + 1];
      r[i + 1] += -400.0 * x[i] * v[i] + 200.0 * v[i + 1];
    }
    return r;
  }
  Vector tensor_vec_vec(const Vector& x, const Vector& v, const Vector& w) const override {
    Vector r = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      r[i] += 2400.0 * x[i] * v[i] * w[i] - 400.0 * (v[i] * w[i + 1] + v[i + 1] * w[i]);
      r[i + 1] -= 400.0 * v[i] * w[i];
    }
    return r;
  }

 private:
  std::size_t d_;
};

}  // namespace

std::shared_ptr<const Objective> rosenbrock_objective(std::size_t d) { return std::make_shared<Rosenbrock>(d); }

}  // namespace arp
