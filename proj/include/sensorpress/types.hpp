#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace sensorpress {

using Eigen::Index;

template <class Scalar>
using VecX = Eigen::Vector<Scalar, Eigen::Dynamic>;

template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Eigen::VectorXd;
using VectorXf = Eigen::VectorXf;
using MatrixXd = Eigen::MatrixXd;
using MaskXb = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

using VectorList = std::vector<VectorXd>;

}  // namespace sensorpress
