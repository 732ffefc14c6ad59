#pragma once

#include <array>

#include "arp/jet.hpp"
#include "arp/objective.hpp"

namespace arp {

// Objective from a generic function of std::array<T, N>; derivatives via Jet.
template <int N, class F>
class JetObjective : public Objective {
 public:
  explicit JetObjective(F f) : f_(std::move(f)) {}

  std::size_t dim() const override { return N; }

  double value(const Vector& x) const override {
    std::array<double, N> a;
    for (int i = 0; i < N; ++i) a[i] = x[i];
    return f_(a);
  }
  Vector gradient(const Vector& x) const override {
    const Jet<N> j = jet(x);
    Vector g(N);
    for (int i = 0; i < N; ++i) g[i] = j.g[i];
    return g;
  }
  Matrix hessian(const Vector& x) const override {
    const Jet<N> j = jet(x);
    Matrix h(N, N);
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) h(i, k) = j.H(i, k);
    return h;
  }
  Matrix tensor_vec(const Vector& x, const Vector& v) const override {
    const Jet<N> j = jet(x);
    Matrix m = Matrix::Zero(N, N);
    for (int i = 0; i < N; ++i)
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) m(a, b) += v[i] * j.T(i, a, b);
    return m;
  }
  Vector tensor_vec_vec(const Vector& x, const Vector& v, const Vector& w) const override {
    return tensor_vec(x, v) * w;
  }

 private:
  Jet<N> jet(const Vector& x) const {
    std::array<Jet<N>, N> a;
    for (int i = 0; i < N; ++i) a[i] = Jet<N>::variable(i, x[i]);
    return f_(a);
  }

  F f_;
};

template <int N, class F>
std::shared_ptr<const Objective> make_jet_objective(F f) {
  return std::make_shared<JetObjective<N, F>>(std::move(f));
}

}  // namespace arp
