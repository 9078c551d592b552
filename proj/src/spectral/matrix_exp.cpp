#include "vasclab/spectral/matrix_exp.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace vasclab::spectral {
namespace {

double condition_2(const CMat& V) {
  Eigen::JacobiSVD<CMat> svd(V);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return INFINITY;
  return sv(0) / smin;
}

}  // namespace

CMat expm_pade(const CMat& M) { return detail::pade13_exp(M); }

CMat expm(const CMat& M, ExpmInfo* info, double cond_limit) {
  Eigen::ComplexEigenSolver<CMat> es(M);
  ExpmInfo local;
  if (es.info() == Eigen::Success) {
    const CMat& V = es.eigenvectors();
    local.eigenvector_condition = condition_2(V);
    if (local.eigenvector_condition <= cond_limit) {
      if (info) *info = local;
      const CVec d = es.eigenvalues().array().exp();
      return V * d.asDiagonal() * V.inverse();
    }
  } else {
    local.eigenvector_condition = INFINITY;
  }
  local.used_fallback = true;
  if (info) *info = local;
  return expm_pade(M);
}

}  // namespace vasclab::spectral
