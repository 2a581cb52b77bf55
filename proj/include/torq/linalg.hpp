#pragma once

#include <Eigen/Dense>

namespace torq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace torq
