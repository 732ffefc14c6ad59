#include <cmath>
#include <stdexcept>

#include "arp/problems.hpp"
#include "jet_objective.hpp"

namespace arp {

std::shared_ptr<const Objective> hairpin_objective(double r) {
  return make_jet_objective<2>([r](const auto& z) {
    const auto& x = z[0];
    const auto& y = z[1];
    return turn::g(x, y) + r * x + 50.0 * turn::barrier(x, -0.4, 0.5) + 50.0 * turn::barrier(y, 0.0, 5.0);
  });
}

// Copies of g centred on even integers below y = 0 and on odd integers above,
// so both halves agree along y = 0.
std::shared_ptr<const Objective> slalom_objective(double r) {
  return make_jet_objective<2>([r](const auto& z) {
    const auto& x = z[0];
    const auto& y = z[1];
    const double xv = value_of(x);
    if (value_of(y) < 0.0) {
      const double k = std::floor((xv + 1.0) / 2.0);
      return r * x + turn::g(x - 2.0 * k, y) + 2.0 * k;
    }
    const double k = std::floor(xv / 2.0);
    return r * x + turn::g(x - 2.0 * k - 1.0, y) + (2.0 * k + 1.0);
  });
}

}  // namespace arp
