#include "vasclab/spectral/compensator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "vasclab/errors.hpp"

namespace vasclab::spectral {

Mat compensator_matrix(int dim, const Vec& xi, double eta) {
  Mat k = Mat::Zero(dim + 1, dim + 1);
  for (int j = 0; j < dim; ++j) {
    k(0, j + 1) = eta * xi(j);
    k(j + 1, 0) = -eta * xi(j);
  }
  return k;
}

double compensator_margin(const SymbolSet& symbols, const Vec& xi, double eta) {
  const Mat ka = compensator_matrix(symbols.dim, xi, eta) * symbols.symbol(xi);
  Mat s = 0.5 * (ka + ka.transpose());
  for (int j = 1; j <= symbols.dim; ++j) s(j, j) += 1.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double compensator_margin(const SymbolSet& symbols, const std::vector<Vec>& directions, double eta) {
  double m = INFINITY;
  for (const Vec& xi : directions) m = std::min(m, compensator_margin(symbols, xi, eta));
  return m;
}

CompensatorReport find_compensator(const SymbolSet& symbols, const std::vector<double>& eta_grid,
                                   int directions) {
  if (directions < 500) throw DomainError("find_compensator needs at least 500 directions");
  if (eta_grid.empty()) throw DomainError("eta grid is empty");
  const auto dirs = sphere_directions(symbols.dim, directions);
  CompensatorReport r;
  r.directions = directions;
  r.eta_grid = eta_grid;
  r.min_margin = -INFINITY;
  for (double eta : eta_grid) {
    const double m = compensator_margin(symbols, dirs, eta);
    r.grid_margins.push_back(m);
    if (m > r.min_margin) {
      r.min_margin = m;
      r.eta = eta;
    }
  }
  r.c_star = r.min_margin;
  if (!(r.min_margin > 0.0))
    throw SearchFailure("no compensator gain in the grid gives a positive margin (best " +
                        std::to_string(r.min_margin) + ")");
  return r;
}

double verify_compensator(const SymbolSet& symbols, const CompensatorReport& report, int directions,
                          std::uint64_t seed) {
  return compensator_margin(symbols, random_directions(symbols.dim, directions, seed), report.eta);
}

std::vector<double> default_eta_grid(const SymbolSet& symbols, int count) {
  // The margin of this ansatz vanishes beyond eta = 1/c.
  const double hi = symbols.sound_speed > 0.0 ? 1.0 / symbols.sound_speed : 1.0;
  std::vector<double> g;
  for (int k = 1; k <= count; ++k) g.push_back(hi * k / count);
  return g;
}

}  // namespace vasclab::spectral
