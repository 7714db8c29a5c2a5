#pragma once

#include <Eigen/Dense>

namespace galikit {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec10 = Eigen::Matrix<double, 10, 1>;

using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat10 = Eigen::Matrix<double, 10, 10>;
using Mat4x10 = Eigen::Matrix<double, 4, 10>;
using Mat5x4 = Eigen::Matrix<double, 5, 4>;

}  // namespace galikit
