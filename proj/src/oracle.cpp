#include "arp/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace arp {

Matrix Objective::tensor_vec(const Vector& x, const Vector& v) const {
  const auto d = static_cast<Eigen::Index>(dim());
  Matrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) m.col(j) = tensor_vec_vec(x, v, Vector::Unit(d, j));
  return m;
}

std::string to_string(OracleMode m) {
  switch (m) {
    case OracleMode::Explicit: return "explicit";
    case OracleMode::TensorFree: return "tensor_free";
    case OracleMode::HessianTensorFree: return "hessian_tensor_free";
  }
  return "?";
}

OracleMode oracle_mode_from_string(const std::string& s) {
  if (s == "explicit") return OracleMode::Explicit;
  if (s == "tensor_free") return OracleMode::TensorFree;
  if (s == "hessian_tensor_free") return OracleMode::HessianTensorFree;
  throw std::invalid_argument("unknown oracle mode: " + s);
}

// ---- TaylorData ----

TaylorData TaylorData::dense(double f0, Vector g) { return TaylorData(f0, std::move(g)); }

TaylorData TaylorData::dense(double f0, Vector g, Matrix h) {
  Second s;
  s.matrix = std::move(h);
  return TaylorData(f0, std::move(g), std::move(s));
}

TaylorData TaylorData::dense(double f0, Vector g, Matrix h, std::vector<Matrix> t) {
  Second s;
  s.matrix = std::move(h);
  Third th;
  th.full = std::move(t);
  return TaylorData(f0, std::move(g), std::move(s), std::move(th));
}

void TaylorData::need(int p) const {
  if (p > order_) throw CapabilityError("taylor data of order " + std::to_string(order_) +
                                        " cannot supply order " + std::to_string(p));
}

const Matrix& TaylorData::hessian() const {
  need(2);
  if (!h_.matrix) throw CapabilityError("hessian matrix not available in this oracle mode");
  return *h_.matrix;
}

Vector TaylorData::hess_vec(const Vector& v) const {
  need(2);
  if (h_.matrix) return *h_.matrix * v;
  return h_.apply(v);
}

Matrix TaylorData::tensor_vec(const Vector& v) const {
  need(3);
  if (t_.full) {
    const auto& sl = *t_.full;
    Matrix m = Matrix::Zero(g_.size(), g_.size());
    for (std::size_t i = 0; i < sl.size(); ++i)
      if (v[static_cast<Eigen::Index>(i)] != 0.0) m += v[static_cast<Eigen::Index>(i)] * sl[i];
    return m;
  }
  if (t_.vec) return t_.vec(v);
  throw CapabilityError("tensor-vector matrix not available in this oracle mode");
}

Vector TaylorData::tensor_vec_vec(const Vector& v, const Vector& w) const {
  need(3);
  if (t_.full || t_.vec) return tensor_vec(v) * w;
  return t_.vec_vec(v, w);
}

double TaylorData::decrease(const Vector& s, int p) const {
  need(p);
  double v = g_.dot(s);
  if (p >= 2) {
    Vector hs = hess_vec(s);
    v += 0.5 * s.dot(hs);
  }
  if (p >= 3) v += s.dot(tensor_vec_vec(s, s)) / 6.0;
  return -v;
}

double TaylorData::value(const Vector& s, int p) const { return f0_ - decrease(s, p); }

Vector TaylorData::gradient(const Vector& s, int p) const {
  need(p);
  Vector r = g_;
  if (p >= 2) r += hess_vec(s);
  if (p >= 3) r += 0.5 * tensor_vec_vec(s, s);
  return r;
}

// ---- Oracle ----

Oracle::Oracle(std::shared_ptr<const Objective> objective, OracleMode mode)
    : objective_(std::move(objective)), mode_(mode), counters_(std::make_shared<EvalCounters>()) {}

bool Oracle::at_cached(const Vector& x) const {
  return cached_x_ && cached_x_->size() == x.size() && *cached_x_ == x;
}

double Oracle::value(const Vector& x) {
  ++counters_->n_f;
  return objective_->value(x);
}

const Vector& Oracle::gradient(const Vector& x) {
  if (!at_cached(x)) {
    ++counters_->n_deriv;
    cached_x_ = x;
    cached_g_ = objective_->gradient(x);
    cached_taylor_.reset();
  }
  return cached_g_;
}

const TaylorData& Oracle::taylor(const Vector& x, double f0, int p) {
  if (p > max_order()) throw CapabilityError("objective supports derivatives up to order " +
                                             std::to_string(max_order()));
  gradient(x);
  if (cached_taylor_ && cached_taylor_->order() >= p && cached_taylor_->f0() == f0) return *cached_taylor_;

  auto obj = objective_;
  auto cnt = counters_;
  Vector xc = x;
  if (p <= 1) {
    cached_taylor_.emplace(f0, cached_g_);
    return *cached_taylor_;
  }
  TaylorData::Second h;
  if (mode_ == OracleMode::HessianTensorFree) {
    h.apply = [obj, cnt, xc](const Vector& v) {
      ++cnt->n_hess_vec;
      return obj->hessian_vec(xc, v);
    };
  } else {
    ++cnt->n_hess_matrix;
    h.matrix = obj->hessian(xc);
  }
  if (p == 2) {
    cached_taylor_.emplace(f0, cached_g_, std::move(h));
    return *cached_taylor_;
  }
  TaylorData::Third t;
  switch (mode_) {
    case OracleMode::Explicit: {
      ++cnt->n_tensor_full;
      const auto d = static_cast<Eigen::Index>(dim());
      std::vector<Matrix> slices;
      slices.reserve(static_cast<std::size_t>(d));
      for (Eigen::Index i = 0; i < d; ++i) slices.push_back(obj->tensor_vec(xc, Vector::Unit(d, i)));
      t.full = std::move(slices);
      break;
    }
    case OracleMode::TensorFree:
      t.vec = [obj, cnt, xc](const Vector& v) {
        ++cnt->n_tensor_vec;
        return obj->tensor_vec(xc, v);
      };
      break;
    case OracleMode::HessianTensorFree:
      t.vec_vec = [obj, cnt, xc](const Vector& v, const Vector& w) {
        ++cnt->n_tensor_vec_vec;
        return obj->tensor_vec_vec(xc, v, w);
      };
      break;
  }
  cached_taylor_.emplace(f0, cached_g_, std::move(h), std::move(t));
  return *cached_taylor_;
}

double Oracle::taylor_value(const Vector& x, const Vector& s, int p) const {
  if (p > max_order()) throw CapabilityError("objective supports derivatives up to order " +
                                             std::to_string(max_order()));
  if (!at_cached(x) || !cached_taylor_ || cached_taylor_->order() < p)
    throw std::logic_error("taylor_value: derivatives not fetched at x");
  return cached_taylor_->value(s, p);
}

// ---- finite-difference check ----

double fd_check(const Oracle& original, const Vector& x, int order, double h, int directions, std::uint64_t seed) {
  if (order < 1 || order > 3) throw std::invalid_argument("fd_check: order must be 1, 2 or 3");
  Oracle oracle(original.shared_objective(), original.mode());
  if (h <= 0.0) h = order == 1 ? 1e-6 : order == 2 ? 1e-5 : 1e-4;
  const auto d = static_cast<Eigen::Index>(oracle.dim());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  auto unit = [&] {
    Vector u(d);
    for (Eigen::Index i = 0; i < d; ++i) u[i] = nd(rng);
    return Vector(u / u.norm());
  };
  auto rel = [](const Vector& a, const Vector& b) { return (a - b).norm() / std::max(1.0, b.norm()); };

  double worst = 0.0;
  for (int k = 0; k < directions; ++k) {
    Vector u = unit();
    Vector xp = x + h * u, xm = x - h * u;
    if (order == 1) {
      double f0 = oracle.value(x);
      double a = oracle.taylor(x, f0, 1).g().dot(u);
      double fd = (oracle.value(xp) - oracle.value(xm)) / (2 * h);
      worst = std::max(worst, std::abs(a - fd) / std::max(1.0, std::abs(fd)));
    } else if (order == 2) {
      Vector a = oracle.taylor(x, 0.0, 2).hess_vec(u);
      Vector gp = oracle.gradient(xp);
      Vector gm = oracle.gradient(xm);
      worst = std::max(worst, rel(a, (gp - gm) / (2 * h)));
    } else {
      Vector w = unit();
      Vector a = oracle.taylor(x, 0.0, 3).tensor_vec_vec(u, w);
      Vector hp = oracle.taylor(xp, 0.0, 2).hess_vec(w);
      Vector hm = oracle.taylor(xm, 0.0, 2).hess_vec(w);
      worst = std::max(worst, rel(a, (hp - hm) / (2 * h)));
    }
  }
  return worst;
}

}  // namespace arp
