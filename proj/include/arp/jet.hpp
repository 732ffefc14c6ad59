#pragma once

#include <array>
#include <cmath>

#include "arp/types.hpp"

namespace arp {

// Value plus all partial derivatives up to order 3 in N variables.
template <int N>
struct Jet {
  double v = 0.0;
  std::array<double, N> g{};
  std::array<double, N * N> h{};
  std::array<double, N * N * N> t{};

  static Jet constant(double c) {
    Jet j;
    j.v = c;
    return j;
  }
  static Jet variable(int i, double x) {
    Jet j;
    j.v = x;
    j.g[i] = 1.0;
    return j;
  }
  double H(int i, int j) const { return h[i * N + j]; }
  double T(int i, int j, int k) const { return t[(i * N + j) * N + k]; }
};

template <int N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) {
  a.v += b.v;
  for (int i = 0; i < N; ++i) a.g[i] += b.g[i];
  for (int i = 0; i < N * N; ++i) a.h[i] += b.h[i];
  for (int i = 0; i < N * N * N; ++i) a.t[i] += b.t[i];
  return a;
}

template <int N>
Jet<N> operator*(double s, Jet<N> a) {
  a.v *= s;
  for (auto& x : a.g) x *= s;
  for (auto& x : a.h) x *= s;
  for (auto& x : a.t) x *= s;
  return a;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, double s) { return s * a; }
template <int N>
Jet<N> operator-(const Jet<N>& a) { return -1.0 * a; }
template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) { return a + (-b); }
template <int N>
Jet<N> operator+(Jet<N> a, double c) { a.v += c; return a; }
template <int N>
Jet<N> operator+(double c, Jet<N> a) { a.v += c; return a; }
template <int N>
Jet<N> operator-(Jet<N> a, double c) { a.v -= c; return a; }
template <int N>
Jet<N> operator-(double c, const Jet<N>& a) { return c + (-a); }

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < N; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      r.h[i * N + j] = a.H(i, j) * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.H(i, j);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        r.t[(i * N + j) * N + k] = a.T(i, j, k) * b.v + a.H(i, j) * b.g[k] + a.H(i, k) * b.g[j] +
                                   a.H(j, k) * b.g[i] + a.g[i] * b.H(j, k) + a.g[j] * b.H(i, k) +
                                   a.g[k] * b.H(i, j) + a.v * b.T(i, j, k);
  return r;
}

// phi(u) given phi and its first three derivatives at u.v
template <int N>
Jet<N> chain(const Jet<N>& u, double d0, double d1, double d2, double d3) {
  Jet<N> r;
  r.v = d0;
  for (int i = 0; i < N; ++i) r.g[i] = d1 * u.g[i];
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.h[i * N + j] = d2 * u.g[i] * u.g[j] + d1 * u.H(i, j);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        r.t[(i * N + j) * N + k] = d3 * u.g[i] * u.g[j] * u.g[k] +
                                   d2 * (u.H(i, j) * u.g[k] + u.H(i, k) * u.g[j] + u.H(j, k) * u.g[i]) +
                                   d1 * u.T(i, j, k);
  return r;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& x) { return x.v; }

inline double ipow(double x, int n) { return std::pow(x, n); }
template <int N>
Jet<N> ipow(const Jet<N>& u, int n) {
  const double x = u.v;
  auto pw = [x](int k) { return k < 0 ? 0.0 : std::pow(x, k); };
  const double n1 = n, n2 = n * (n - 1.0), n3 = n * (n - 1.0) * (n - 2.0);
  return chain(u, pw(n), n1 * pw(n - 1), n2 * pw(n - 2), n3 * pw(n - 3));
}

inline double exp_(double x) { return std::exp(x); }
template <int N>
Jet<N> exp_(const Jet<N>& u) {
  const double e = std::exp(u.v);
  return chain(u, e, e, e, e);
}

// 1 / u
inline double recip(double x) { return 1.0 / x; }
template <int N>
Jet<N> recip(const Jet<N>& u) {
  const double x = u.v;
  return chain(u, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x));
}

}  // namespace arp
