#pragma once

#include <Eigen/Core>

namespace chebsub {

/// Dense row-major storage used for node sets and design matrices.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace chebsub
