#pragma once

#include "vasclab/linalg.hpp"
#include "vasclab/spectral/symbols.hpp"

namespace vasclab::spectral {

struct SkResult {
  bool holds = false;
  /// min over sampled xi and over unit vectors X of each eigenspace of A(xi)
  /// of |L_- X|; zero iff some eigenvector lies in ker B.
  double worst_margin = 0.0;
  Vec worst_direction;
  int directions = 0;
};

/// Shizuta-Kawashima check on quasi-uniform directions (count >= 100).
/// Eigenvalues closer than 1e-10 (relative) are treated as one eigenspace so
/// degenerate spectra are measured basis-independently.
SkResult check_sk(const SymbolSet& symbols, int directions, double tolerance = 1e-8);

/// Same measurement at a single direction.
double sk_margin(const SymbolSet& symbols, const Vec& xi);

}  // namespace vasclab::spectral
