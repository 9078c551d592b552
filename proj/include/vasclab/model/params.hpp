#pragma once

#include <string>
#include <vector>

namespace vasclab::model {

/// Power-law pressure P(rho) = kappa * rho^gamma_exp.
///
/// The entropy potential h(rho) = rho * int_{rho_*}^{rho} P(tau)/tau^2 dtau is
/// integrated from 0 when gamma_exp > 1 (the integral converges there) and from
/// rho_floor when gamma_exp == 1, where it diverges at 0. The two choices differ
/// by a linear function of rho, which drops out of every shifted quantity.
struct PressureLaw {
  double kappa = 1.0;
  double gamma_exp = 2.0;
  double rho_floor = 0.01;

  double pressure(double rho) const;
  double derivative(double rho) const;
  /// P(rho_bar + rho) - P(rho_bar) without cancellation for small rho.
  double increment(double rho_bar, double rho) const;

  /// Entropy potential h(rho) and its first two derivatives (h'' = P'/rho).
  double potential(double rho) const;
  double potential_d1(double rho) const;
  double potential_d2(double rho) const;
  /// h'(rho_bar + rho) - h'(rho_bar).
  double potential_d1_increment(double rho_bar, double rho) const;
  /// Bregman remainder h(rho_bar + rho) - h(rho_bar) - h'(rho_bar) rho.
  double potential_bregman(double rho_bar, double rho) const;

  bool isothermal() const { return gamma_exp == 1.0; }
  std::vector<std::string> violations() const;
};

/// Physical constants of the hyperbolic-parabolic vasculogenesis system.
struct ModelParams {
  double alpha = 1.0;    // friction rate
  double mu = 0.5;       // chemotactic strength (0 decouples the chemoattractant)
  double D = 1.0;        // chemoattractant diffusivity
  double a = 1.0;        // release rate
  double b = 1.0;        // degradation rate
  double rho_bar = 1.0;  // background density
  PressureLaw pressure{};

  std::vector<std::string> violations() const;
  /// Throws ValidationError listing every violated invariant.
  void validate() const;

  double phi_bar() const { return a / b * rho_bar; }
  double sound_speed_bar() const;  // sqrt(P'(rho_bar))
};

/// Constant stationary state (rho_bar, 0, phi_bar) of the full system.
struct Equilibrium {
  double rho_bar;
  std::vector<double> velocity;
  double phi_bar;
};

Equilibrium equilibrium(const ModelParams& params, int dim = 1);

/// Right-hand side of the full (total-variable) model at a spatially constant
/// state: the divergence terms vanish, leaving (0, -alpha v + 0, a rho - b phi).
std::vector<double> constant_state_residual(const ModelParams& params, double rho,
                                            const std::vector<double>& v, double phi);

}  // namespace vasclab::model
