#pragma once

#include <Eigen/Dense>

namespace arp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace arp
