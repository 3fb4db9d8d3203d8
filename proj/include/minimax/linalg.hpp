#pragma once

#include <Eigen/Dense>

namespace minimax {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace minimax
