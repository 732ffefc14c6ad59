#include <cmath>
#include <random>
#include <stdexcept>

#include "arp/problems.hpp"

namespace arp {

namespace {

// f = 1/n sum (psi(a_i.x) - b_i)^2 with the logistic psi.
class Nls : public Objective {
 public:
  explicit Nls(NlsData data) : d_(std::move(data)) {}

  std::size_t dim() const override { return static_cast<std::size_t>(d_.A.cols()); }

  double value(const Vector& x) const override {
    const Vector z = d_.A * x;
    double f = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double r = psi(z[i]) - d_.b[i];
      f += r * r;
    }
    return f / n();
  }
  Vector gradient(const Vector& x) const override { return d_.A.transpose() * derivs(x, 1) / n(); }
  Matrix hessian(const Vector& x) const override {
    return d_.A.transpose() * derivs(x, 2).asDiagonal() * d_.A / n();
  }
  Vector hessian_vec(const Vector& x, const Vector& v) const override {
    return d_.A.transpose() * (derivs(x, 2).array() * (d_.A * v).array()).matrix() / n();
  }
  Matrix tensor_vec(const Vector& x, const Vector& v) const override {
    const Vector w = (derivs(x, 3).array() * (d_.A * v).array()).matrix();
    return d_.A.transpose() * w.asDiagonal() * d_.A / n();
  }
  Vector tensor_vec_vec(const Vector& x, const Vector& v, const Vector& w) const override {
    return d_.A.transpose() * (derivs(x, 3).array() * (d_.A * v).array() * (d_.A * w).array()).matrix() / n();
  }

 private:
  double n() const { return static_cast<double>(d_.A.rows()); }
  static double psi(double z) { return 1.0 / (1.0 + std::exp(-z)); }

  // k-th derivative of (psi(z) - b)^2 at each z_i
  Vector derivs(const Vector& x, int k) const {
    const Vector z = d_.A * x;
    Vector out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double p = psi(z[i]);
      const double p1 = p * (1 - p);
      const double p2 = p1 * (1 - 2 * p);
      const double p3 = p2 * (1 - 2 * p) - 2 * p1 * p1;
      const double r = p - d_.b[i];
      out[i] = k == 1 ? 2 * r * p1 : k == 2 ? 2 * (p1 * p1 + r * p2) : 2 * (3 * p1 * p2 + r * p3);
    }
    return out;
  }

  NlsData d_;
};

}  // namespace

NlsData make_nls_data(std::size_t d, std::size_t n, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("nls needs d >= 1");
  if (n == 0) n = 2 * d;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  NlsData data;
  data.seed = seed;
  data.A.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  data.b.resize(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < data.A.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.A.cols(); ++j) data.A(i, j) = unif(rng);
    data.b[i] = coin(rng) ? 1.0 : 0.0;
  }
  return data;
}

std::shared_ptr<const Objective> nls_objective(const NlsData& data) { return std::make_shared<Nls>(data); }

}  // namespace arp
