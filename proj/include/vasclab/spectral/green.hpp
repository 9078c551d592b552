#pragma once

#include <complex>
#include <vector>

#include "vasclab/linalg.hpp"
#include "vasclab/spectral/matrix_exp.hpp"
#include "vasclab/spectral/symbols.hpp"

namespace vasclab::spectral {

/// Fourier symbol of the linearised Green function, exp(t (-i A(xi) + B)).
/// Exact at t = 0 and xi = 0; throws DomainError for t < 0.
CMat green_symbol(const SymbolSet& symbols, const Vec& xi, double t, ExpmInfo* info = nullptr);

/// Spectral projector onto the slow (diffusive) eigenvalue of -iA(xi) + B,
/// i.e. the eigenvalue with the largest real part. Throws ProjectorError when
/// that eigenvalue is not real or not separated from the rest of the spectrum.
CMat diffusive_projector(const SymbolSet& symbols, const Vec& xi, std::complex<double>* eigenvalue = nullptr);

/// Radius where the two 1D branches -alpha/2 +- sqrt(alpha^2/4 - c^2 |xi|^2) meet.
double branch_crossing_radius(const SymbolSet& symbols);

/// Half the branch-crossing radius.
double default_xi_cutoff(const SymbolSet& symbols);

/// Quadrature for integrals over xi in R^n restricted to |xi| < xi_max:
/// geometric radial nodes from 2 pi / domain_length, trapezoidal in log r,
/// plus the disc |xi| < r_min lumped onto the innermost node.
struct FrequencyGrid {
  double domain_length = 1.0e5;
  int radial = 400;
  int angular = 64;  // n = 2 only; n = 1 uses the two directions +-1
};

struct ModeSplit {
  Vec xi;
  double weight = 0.0;  // quadrature weight for d xi
  std::complex<double> slow_eigenvalue;
  CMat projector;
};

/// Diffusive part K(t) (slow branch, |xi| < xi_cutoff) of the Green function
/// on a frequency quadrature; the remainder is exponential() - diffusive().
struct GreenModeReport {
  SymbolSet symbols;
  double xi_cutoff = 0.0;
  std::vector<ModeSplit> modes;

  CMat exponential(std::size_t mode, double t) const;
  CMat diffusive(std::size_t mode, double t) const;
  CMat remainder(std::size_t mode, double t) const;
};

/// Throws ProjectorError when xi_cutoff reaches the branch crossing or any
/// in-window projector is ill-defined.
GreenModeReport decompose_green(const SymbolSet& symbols, double xi_cutoff, const FrequencyGrid& grid = {});

}  // namespace vasclab::spectral
