#pragma once

#include <cstdint>
#include <vector>

#include "vasclab/linalg.hpp"
#include "vasclab/spectral/symbols.hpp"

namespace vasclab::spectral {

/// K(xi) = eta (e_1 (0, xi)^T - (0, xi) e_1^T): skew-symmetric and odd in xi.
Mat compensator_matrix(int dim, const Vec& xi, double eta);

/// lambda_min( sym(K(xi) A(xi)) + diag(0, I_n) ) at one unit direction.
double compensator_margin(const SymbolSet& symbols, const Vec& xi, double eta);

/// Minimum of compensator_margin over a direction sample.
double compensator_margin(const SymbolSet& symbols, const std::vector<Vec>& directions, double eta);

struct CompensatorReport {
  double eta = 0.0;
  double min_margin = 0.0;
  double c_star = 0.0;  // certified constant, equal to min_margin
  int directions = 0;
  std::vector<double> eta_grid;
  std::vector<double> grid_margins;
  bool valid() const { return min_margin > 0.0; }
};

/// Scans eta over the grid on `directions` quasi-uniform directions (>= 500)
/// and keeps the best. Throws SearchFailure when no eta gives a positive margin.
CompensatorReport find_compensator(const SymbolSet& symbols, const std::vector<double>& eta_grid,
                                   int directions = 500);

/// Re-evaluates a report on a fresh random sample; returns the margin found.
double verify_compensator(const SymbolSet& symbols, const CompensatorReport& report, int directions,
                          std::uint64_t seed);

/// Uniform grid of `count` points on (0, hi].
std::vector<double> default_eta_grid(const SymbolSet& symbols, int count = 200);

}  // namespace vasclab::spectral
