#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>

#include "arp/problems.hpp"

namespace arp {

namespace {

Vector linspace(double a, double b, std::size_t d) {
  Vector v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) v[static_cast<Eigen::Index>(i)] = d == 1 ? a : a + (b - a) * i / (d - 1.0);
  return v;
}

Vector logspace(double a, double b, std::size_t d) { return linspace(a, b, d).unaryExpr([](double e) { return std::pow(10.0, e); }); }

Vector permute_and_sign(Vector v, std::mt19937_64& rng) {
  for (Eigen::Index i = v.size() - 1; i > 0; --i) {
    std::uniform_int_distribution<Eigen::Index> pick(0, i);
    std::swap(v[i], v[pick(rng)]);
  }
  std::bernoulli_distribution coin(0.5);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (coin(rng)) v[i] = -v[i];
  return v;
}

Matrix random_orthogonal(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  const auto n = static_cast<Eigen::Index>(d);
  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = nd(rng);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
  return svd.matrixU();
}

// |x|^c with c = 2a
struct PowerNorm {
  double a;
  double value(const Vector& x) const { return std::pow(x.squaredNorm(), a); }
  double k1(double r) const { return 2 * a * std::pow(r, a - 1); }
  double k2(double r) const { return a >= 2 ? 4 * a * (a - 1) * std::pow(r, a - 2) : 0.0; }
  double k3(double r) const { return a >= 3 ? 8 * a * (a - 1) * (a - 2) * std::pow(r, a - 3) : 0.0; }
};

class RegCubic : public Objective {
 public:
  explicit RegCubic(RegCubicData data) : d_(std::move(data)), reg_{d_.c / 2.0} {}

  std::size_t dim() const override { return static_cast<std::size_t>(d_.b.size()); }

  double value(const Vector& x) const override {
    const Vector u = d_.U.transpose() * x;
    const Vector v = d_.V.transpose() * x;
    return d_.b.dot(x) + 0.5 * (d_.lambda_h.array() * u.array().square()).sum() +
           (d_.lambda_t.array() * v.array().cube()).sum() / 6.0 + reg_.value(x);
  }
  Vector gradient(const Vector& x) const override {
    const Vector u = d_.U.transpose() * x;
    const Vector v = d_.V.transpose() * x;
    return d_.b + d_.U * (d_.lambda_h.array() * u.array()).matrix() +
           0.5 * d_.V * (d_.lambda_t.array() * v.array().square()).matrix() + reg_.k1(x.squaredNorm()) * x;
  }
  Matrix hessian(const Vector& x) const override {
    const Vector v = d_.V.transpose() * x;
    const double r = x.squaredNorm();
    Matrix h = d_.U * d_.lambda_h.asDiagonal() * d_.U.transpose() +
               d_.V * (d_.lambda_t.array() * v.array()).matrix().asDiagonal() * d_.V.transpose();
    h.diagonal().array() += reg_.k1(r);
    h += reg_.k2(r) * x * x.transpose();
    return h;
  }
  Vector hessian_vec(const Vector& x, const Vector& w) const override {
    const Vector v = d_.V.transpose() * x;
    const double r = x.squaredNorm();
    return d_.U * (d_.lambda_h.array() * (d_.U.transpose() * w).array()).matrix() +
           d_.V * (d_.lambda_t.array() * v.array() * (d_.V.transpose() * w).array()).matrix() + reg_.k1(r) * w +
           reg_.k2(r) * x.dot(w) * x;
  }
  Matrix tensor_vec(const Vector& x, const Vector& s) const override {
    const Vector vs = d_.V.transpose() * s;
    const double r = x.squaredNorm();
    const double xs = x.dot(s);
    Matrix m = d_.V * (d_.lambda_t.array() * vs.array()).matrix().asDiagonal() * d_.V.transpose();
    m.diagonal().array() += reg_.k2(r) * xs;
    m += reg_.k2(r) * (s * x.transpose() + x * s.transpose()) + reg_.k3(r) * xs * x * x.transpose();
    return m;
  }
  Vector tensor_vec_vec(const Vector& x, const Vector& s, const Vector& w) const override {
    const double r = x.squaredNorm();
    const double xs = x.dot(s), xw = x.dot(w);
    return d_.V * (d_.lambda_t.array() * (d_.V.transpose() * s).array() * (d_.V.transpose() * w).array()).matrix() +
           reg_.k2(r) * (xs * w + xw * s + s.dot(w) * x) + reg_.k3(r) * xs * xw * x;
  }

 private:
  RegCubicData d_;
  PowerNorm reg_;
};

}  // namespace

RegCubicData make_reg_cubic_data(int variant, std::size_t d, std::uint64_t seed, int c) {
  if (variant < 1 || variant > 4) throw std::invalid_argument("regcubic variant must be 1..4");
  if (d < 2) throw std::invalid_argument("regcubic needs d >= 2");
  if (c < 4 || c % 2 != 0) throw std::invalid_argument("regcubic exponent must be an even integer >= 4");
  std::mt19937_64 rng(seed);
  RegCubicData data;
  data.variant = variant;
  data.seed = seed;
  data.c = c;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  data.b.resize(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < data.b.size(); ++i) data.b[i] = unif(rng);
  data.U = random_orthogonal(d, rng);
  data.V = random_orthogonal(d, rng);
  const bool log_h = variant == 2 || variant == 4;
  const bool log_t = variant == 3 || variant == 4;
  data.lambda_h = log_h ? permute_and_sign(logspace(-6, 6, d), rng) : linspace(1, 10, d);
  data.lambda_t = log_t ? permute_and_sign(logspace(-6, 2, d), rng) : linspace(1, 10, d);
  return data;
}

std::shared_ptr<const Objective> reg_cubic_objective(const RegCubicData& data) {
  return std::make_shared<RegCubic>(data);
}

}  // namespace arp
