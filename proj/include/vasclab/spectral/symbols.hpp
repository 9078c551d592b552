#pragma once

#include <cstdint>
#include <vector>

#include "vasclab/linalg.hpp"
#include "vasclab/model/params.hpp"

namespace vasclab::spectral {

/// Constant-state symbols of the linearised system in conservative-dissipative
/// variables w = (rho, v / c), c = sqrt(P'(rho_bar)):
///   A_j = c (e_1 e_{j+1}^T + e_{j+1} e_1^T),  B = diag(0, -alpha I_n).
struct SymbolSet {
  int dim = 1;
  double sound_speed = 1.0;
  double alpha = 1.0;
  std::vector<Mat> jacobians;
  Mat dissipation;

  int state_dim() const { return dim + 1; }
  /// A(xi) = sum_j xi_j A_j.
  Mat symbol(const Vec& xi) const;
  /// -i A(xi) + B, the Fourier generator of the linearised evolution.
  CMat generator(const Vec& xi) const;
};

SymbolSet build_symbols(const model::ModelParams& params, int dim);

/// Symbols from raw constants; allows P'(rho_bar) = 0 and alpha = 0, which
/// model parameters reject, for degenerate-case studies.
SymbolSet raw_symbols(int dim, double pressure_derivative, double alpha);

/// L_0 (conserved) and L_- (dissipated) coordinate blocks.
inline constexpr int kConservedBlock = 0;
inline constexpr int kDissipatedBlock = 1;

/// Row range [offset, offset + size) of a block.
inline int block_offset(int block) { return block == kConservedBlock ? 0 : 1; }
inline int block_size(int block, int dim) { return block == kConservedBlock ? 1 : dim; }

/// Deterministic quasi-uniform unit vectors: alternating +-1 for n = 1,
/// equally spaced angles (half-step offset) for n = 2.
std::vector<Vec> sphere_directions(int dim, int count);

/// Seeded random unit vectors, used for fresh certification samples.
std::vector<Vec> random_directions(int dim, int count, std::uint64_t seed);

}  // namespace vasclab::spectral
