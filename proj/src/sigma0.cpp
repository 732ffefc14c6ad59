#include <cmath>

#include "arp/update.hpp"

namespace arp {

double sigma0_from_offset(const TaylorData& t, const Vector& y, double f_shift, int p, double sigma_min) {
  const double r = (p + 1) * std::abs(f_shift - t.value(y, p)) / std::pow(y.norm(), p + 1);
  return std::max(r, sigma_min);
}

double sigma0_taylor(Oracle& oracle, const Vector& x0, double f0, int p, double sigma_min, std::uint64_t seed) {
  const TaylorData& t = oracle.taylor(x0, f0, p);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const auto d = static_cast<Eigen::Index>(oracle.dim());
  for (int attempt = 0; attempt < 6; ++attempt) {
    Vector y(d);
    for (Eigen::Index i = 0; i < d; ++i) y[i] = nd(rng);
    if (y.norm() == 0.0) continue;
    const double fs = oracle.value(x0 + y);
    if (!std::isfinite(fs)) continue;
    const double s0 = sigma0_from_offset(t, y, fs, p, sigma_min);
    if (std::isfinite(s0)) return s0;
  }
  return 1.0;
}

}  // namespace arp
