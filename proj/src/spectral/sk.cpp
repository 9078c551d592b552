#include "vasclab/spectral/sk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "vasclab/errors.hpp"

namespace vasclab::spectral {

double sk_margin(const SymbolSet& symbols, const Vec& xi) {
  const Mat a = symbols.symbol(xi);
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigensolver failed at xi = (" << xi.transpose() << ")";
    throw NumericalError(msg.str());
  }
  const Vec& lam = es.eigenvalues();
  const Mat& X = es.eigenvectors();
  const int m = static_cast<int>(lam.size());
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  double worst = INFINITY;
  int start = 0;
  while (start < m) {
    int end = start + 1;
    while (end < m && lam(end) - lam(end - 1) <= 1e-10 * scale) ++end;
    // Smallest |L_- X| over unit X in the eigenspace = smallest singular
    // value of the dissipated rows of its orthonormal basis.
    const Mat q = X.block(1, start, m - 1, end - start);
    Eigen::JacobiSVD<Mat> svd(q);
    const double smin = (end - start) > (m - 1) ? 0.0 : svd.singularValues()(end - start - 1);
    worst = std::min(worst, smin);
    start = end;
  }
  return worst;
}

SkResult check_sk(const SymbolSet& symbols, int directions, double tolerance) {
  if (directions < 100) throw DomainError("check_sk needs at least 100 directions");
  SkResult r;
  r.directions = directions;
  r.worst_margin = INFINITY;
  for (const Vec& xi : sphere_directions(symbols.dim, directions)) {
    const double m = sk_margin(symbols, xi);
    if (m < r.worst_margin) {
      r.worst_margin = m;
      r.worst_direction = xi;
    }
  }
  r.holds = r.worst_margin > tolerance;
  return r;
}

}  // namespace vasclab::spectral
