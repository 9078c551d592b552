#pragma once

#include <complex>

#include <Eigen/Core>

namespace vasclab {

// State dimension is n + 1 with n <= 2; fixed upper bounds keep these on the stack.
inline constexpr int kMaxStateDim = 3;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxStateDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxStateDim, kMaxStateDim>;
using CVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1, 0, kMaxStateDim, 1>;
using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxStateDim,
                           kMaxStateDim>;

}  // namespace vasclab
