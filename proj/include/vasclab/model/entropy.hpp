#pragma once

#include <cstdint>
#include <vector>

#include "vasclab/linalg.hpp"
#include "vasclab/model/grid.hpp"
#include "vasclab/model/params.hpp"

namespace vasclab::model {

/// Cell states are (rho, v_1..v_n) perturbations; index 0 is the density.

/// Canonical entropy E(rho, v) = |v|^2 / (2 rho) + rho * int P(tau)/tau^2 dtau
/// at a total density. Throws DomainError for rho_tot <= 0.
double entropy_density(double rho_tot, const Vec& v, const PressureLaw& pressure);

/// Gradient and Hessian of E with respect to (rho, v) at a total state.
Vec entropy_gradient(double rho_tot, const Vec& v, const PressureLaw& pressure);
Mat entropy_hessian(double rho_tot, const Vec& v, const PressureLaw& pressure);

/// E(U + Ubar) - E(Ubar) - grad E(Ubar) . U, evaluated without cancellation.
double shifted_entropy(const Vec& U, const ModelParams& params);

/// W = grad E(U + Ubar) - grad E(Ubar); W = 0 exactly at U = 0.
Vec to_entropy_vars(const Vec& U, const ModelParams& params);

struct InversionOptions {
  double tolerance = 1e-13;  // absolute, on the W residual (max norm)
  int max_iterations = 50;
};

/// Inverse of to_entropy_vars by damped Newton iteration with the analytic
/// Hessian. Throws InversionError when the iteration stalls.
Vec from_entropy_vars(const Vec& W, const ModelParams& params, const InversionOptions& opts = {});

/// Radius of the entropy-variable ball (max norm) inside which inversion is used.
inline double entropy_ball_radius(const ModelParams& params) { return 0.1 * params.rho_bar; }

/// Field-level entropy variables: w1 scalar field, w2 one field per axis.
struct EntropyVars {
  std::vector<double> w1;
  std::vector<std::vector<double>> w2;
};

EntropyVars entropy_variables(const FieldState& state, const ModelParams& params);

/// Sum of shifted entropy over cells times cell volume.
double total_shifted_entropy(const FieldState& state, const ModelParams& params);

/// Empirical c in (1/c)|W|^2 <= E~(U) <= c|W|^2, sampled uniformly over the
/// max-norm ball |W| <= radius.
double entropy_equivalence_constant(const ModelParams& params, int dim, double radius,
                                    int samples, std::uint64_t seed);

}  // namespace vasclab::model
