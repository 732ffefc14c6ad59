#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace arp {

inline constexpr double kImagTol = 1e-8;
inline constexpr double kRootMergeTol = 1e-10;
inline constexpr double kPositiveTol = 1e-12;
inline constexpr double kTrimTol = 1e-14;

// Dense polynomial, ascending powers. Stored coefficients are kept as given
// (a ray Taylor polynomial of order p keeps p+1 slots even if the top is zero).
class Poly1d {
 public:
  Poly1d() = default;
  explicit Poly1d(std::vector<double> coeffs) : c_(std::move(coeffs)) {}
  Poly1d(std::initializer_list<double> coeffs) : c_(coeffs) {}

  static Poly1d monomial(int power, double coeff = 1.0);

  const std::vector<double>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  double coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
  void set_coeff(std::size_t i, double v);

  // -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  double operator()(double a) const;
  Poly1d derivative() const;

  Poly1d operator+(const Poly1d& o) const;
  Poly1d operator-(const Poly1d& o) const;
  Poly1d operator*(double s) const;
  // multiply by alpha^k
  Poly1d shifted(int k) const;

 private:
  std::vector<double> c_;
};

inline Poly1d operator*(double s, const Poly1d& p) { return p * s; }

double eval(const Poly1d& p, double a);
Poly1d derivative(const Poly1d& p);

// Distinct real roots, ascending. Throws std::invalid_argument for the zero
// polynomial; constants give an empty list.
std::vector<double> real_roots(const Poly1d& p, double imag_tol = kImagTol);

// +inf when no root exceeds kPositiveTol.
double smallest_positive_root(std::span<const Poly1d> polys);
double smallest_positive_root(std::initializer_list<Poly1d> polys);

}  // namespace arp
