#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vasclab/cli/config.hpp"
#include "vasclab/model/grid.hpp"
#include "vasclab/model/params.hpp"

namespace vasclab::cli {

/// Builds the initial perturbation described by spec:
///  - gaussian: centred density bump of the given width, zero velocity;
///  - band_limited: seeded random density and velocity with modes
///    |index| <= kmax_fraction * Nyquist on each axis, zero mean;
///  - zero: the equilibrium itself.
/// With hs_norm > 0 the (rho, v) pair is rescaled to H^s norm hs_norm * rho_bar,
/// s = sobolev_order. phi_0 = phi_scale (a/b) rho_0.
model::FieldState make_initial_state(const InitialDataSpec& spec, const model::GridSpec& grid,
                                     const model::ModelParams& params, int sobolev_order, std::uint64_t seed);

/// Seeded random real field with zero mean and modes limited as above,
/// normalised to unit L^2 norm.
std::vector<double> band_limited_field(const model::GridSpec& grid, double kmax_fraction, std::mt19937_64& gen);

}  // namespace vasclab::cli
