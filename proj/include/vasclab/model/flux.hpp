#pragma once

#include "vasclab/linalg.hpp"
#include "vasclab/model/params.hpp"

namespace vasclab::model {

/// f_j(U + Ubar) = (v_j, v v_j / rho_tot + P(rho_tot) e_j).
Vec total_flux(const Vec& U, const ModelParams& params, int axis);

/// f_j(U + Ubar) - f_j(Ubar); vanishes exactly at U = 0.
Vec perturbed_flux(const Vec& U, const ModelParams& params, int axis);

/// d f_j / d U at U + Ubar.
Mat flux_jacobian(const Vec& U, const ModelParams& params, int axis);

/// g = (0, -alpha v).
Vec source_damping(const Vec& U, const ModelParams& params);

/// h = (0, mu (rho + rho_bar) grad phi).
Vec source_chemo(const Vec& U, const Vec& grad_phi, const ModelParams& params);

/// Conservative-dissipative scaling (rho, v) -> (rho, v / sqrt(P'(rho_bar))).
Vec cd_transform(const Vec& U, const ModelParams& params);
Vec cd_inverse(const Vec& U_cd, const ModelParams& params);

}  // namespace vasclab::model
