#include "arp/poly1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace arp {

Poly1d Poly1d::monomial(int power, double coeff) {
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = coeff;
  return Poly1d(std::move(c));
}

void Poly1d::set_coeff(std::size_t i, double v) {
  if (i >= c_.size()) c_.resize(i + 1, 0.0);
  c_[i] = v;
}

int Poly1d::degree() const {
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
    if (c_[i] != 0.0) return i;
  return -1;
}

double Poly1d::operator()(double a) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * a + *it;
  return r;
}

Poly1d Poly1d::derivative() const {
  if (c_.size() <= 1) return Poly1d{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Poly1d(std::move(d));
}

Poly1d Poly1d::operator+(const Poly1d& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return Poly1d(std::move(r));
}

Poly1d Poly1d::operator-(const Poly1d& o) const { return *this + o * -1.0; }

Poly1d Poly1d::operator*(double s) const {
  std::vector<double> r(c_);
  for (double& v : r) v *= s;
  return Poly1d(std::move(r));
}

Poly1d Poly1d::shifted(int k) const {
  std::vector<double> r(static_cast<std::size_t>(k), 0.0);
  r.insert(r.end(), c_.begin(), c_.end());
  return Poly1d(std::move(r));
}

double eval(const Poly1d& p, double a) { return p(a); }
Poly1d derivative(const Poly1d& p) { return p.derivative(); }

namespace {

// |p(a)| relative to the magnitude of its terms; ~1e-16 at a root.
double relative_residual(const std::vector<double>& c, double a) {
  double v = 0.0, scale = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    v = v * a + *it;
    scale = scale * std::abs(a) + std::abs(*it);
  }
  return scale > 0.0 ? std::abs(v) / scale : 0.0;
}

double polish(const std::vector<double>& c, double a) {
  Poly1d p(c);
  Poly1d dp = p.derivative();
  double best = a, best_res = relative_residual(c, a);
  for (int it = 0; it < 8 && best_res > 0.0; ++it) {
    double d = dp(best);
    if (d == 0.0) break;
    double cand = best - p(best) / d;
    double res = relative_residual(c, cand);
    if (!(res < best_res)) break;
    best = cand;
    best_res = res;
  }
  return best;
}

}  // namespace

std::vector<double> real_roots(const Poly1d& p, double imag_tol) {
  const auto& raw = p.coeffs();
  double cmax = 0.0;
  for (double v : raw) cmax = std::max(cmax, std::abs(v));
  if (cmax == 0.0) throw std::invalid_argument("real_roots: polynomial is identically zero");

  std::vector<double> c(raw);
  while (!c.empty() && std::abs(c.back()) < kTrimTol * cmax) c.pop_back();
  // roots at zero
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == 0.0) ++zeros;
  std::vector<double> out;
  if (zeros > 0) {
    out.push_back(0.0);
    c.erase(c.begin(), c.begin() + static_cast<long>(zeros));
  }
  const int n = static_cast<int>(c.size()) - 1;
  if (n >= 1) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    const auto& ev = es.eigenvalues();
    for (int i = 0; i < n; ++i) {
      double re = ev[i].real(), im = std::abs(ev[i].imag());
      double scale = std::max(1.0, std::abs(re));
      bool keep = im <= imag_tol * scale;
      // a multiple root splits into a conjugate pair of size ~sqrt(eps)
      if (!keep && im <= 1e-6 * scale) keep = relative_residual(c, re) <= 64 * std::numeric_limits<double>::epsilon();
      if (keep) out.push_back(polish(c, re));
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  for (double r : out) {
    if (!merged.empty()) {
      double prev = merged.back();
      double mid = 0.5 * (prev + r);
      bool same = r - prev <= kRootMergeTol ||
                  (r - prev <= 1e-6 * std::max(1.0, std::abs(mid)) &&
                   relative_residual(c, mid) <= 64 * std::numeric_limits<double>::epsilon());
      if (same) {
        merged.back() = mid;
        continue;
      }
    }
    merged.push_back(r);
  }
  return merged;
}

double smallest_positive_root(std::span<const Poly1d> polys) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : polys) {
    if (p.degree() < 1) continue;
    for (double r : real_roots(p))
      if (r > kPositiveTol && r < best) best = r;
  }
  return best;
}

double smallest_positive_root(std::initializer_list<Poly1d> polys) {
  return smallest_positive_root(std::span<const Poly1d>(polys.begin(), polys.size()));
}

}  // namespace arp
