#pragma once

#include <cmath>

#include <Eigen/LU>

#include "vasclab/linalg.hpp"

namespace vasclab::spectral {

struct ExpmInfo {
  bool used_fallback = false;
  double eigenvector_condition = 1.0;  // 2-norm condition of the eigenbasis
};

/// exp(M) by eigendecomposition, falling back to scaling-and-squaring when
/// the eigenvector basis has condition number above cond_limit.
CMat expm(const CMat& M, ExpmInfo* info = nullptr, double cond_limit = 1e8);

/// exp(M) by scaling-and-squaring with the degree-13 Pade approximant.
CMat expm_pade(const CMat& M);

namespace detail {

// Higham's degree-13 scaling-and-squaring for any square Eigen matrix type.
template <class M>
M pade13_exp(const M& A0) {
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const double norm1 = A0.cwiseAbs().colwise().sum().maxCoeff();
  const int s = norm1 > theta13 ? static_cast<int>(std::ceil(std::log2(norm1 / theta13))) : 0;
  const M A = A0 / std::ldexp(1.0, s);
  const M I = M::Identity(A.rows(), A.cols());
  const M A2 = A * A;
  const M A4 = A2 * A2;
  const M A6 = A4 * A2;
  const M U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  const M V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  M R = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < s; ++k) R = R * R;
  return R;
}

}  // namespace detail

}  // namespace vasclab::spectral
