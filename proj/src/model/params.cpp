#include "vasclab/model/params.hpp"

#include <cmath>

#include "vasclab/errors.hpp"

namespace vasclab::model {
namespace {

// (1+x)^g - 1 - g x, accurate for small |x|.
double binomial_tail2(double g, double x) {
  if (std::abs(x) < 0.1) {
    double term = 0.5 * g * (g - 1.0) * x * x;
    double sum = term;
    for (int k = 3; k < 80 && term != 0.0; ++k) {
      term *= (g - k + 1.0) / k * x;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::expm1(g * std::log1p(x)) - g * x;
}

// (1+x) log(1+x) - x, accurate for small |x|.
double xlog_tail(double x) {
  if (std::abs(x) < 0.1) {
    double sum = 0.0;
    double xk = x;
    for (int k = 2; k < 80; ++k) {
      xk *= x;
      const double term = ((k % 2 == 0) ? 1.0 : -1.0) * xk / (k * (k - 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (1.0 + x) * std::log1p(x) - x;
}

}  // namespace

double PressureLaw::pressure(double rho) const { return kappa * std::pow(rho, gamma_exp); }

double PressureLaw::derivative(double rho) const {
  return kappa * gamma_exp * std::pow(rho, gamma_exp - 1.0);
}

double PressureLaw::increment(double rho_bar, double rho) const {
  return kappa * std::pow(rho_bar, gamma_exp) * std::expm1(gamma_exp * std::log1p(rho / rho_bar));
}

double PressureLaw::potential(double rho) const {
  if (isothermal()) return kappa * rho * std::log(rho / rho_floor);
  return kappa * std::pow(rho, gamma_exp) / (gamma_exp - 1.0);
}

double PressureLaw::potential_d1(double rho) const {
  if (isothermal()) return kappa * (std::log(rho / rho_floor) + 1.0);
  return kappa * gamma_exp * std::pow(rho, gamma_exp - 1.0) / (gamma_exp - 1.0);
}

double PressureLaw::potential_d2(double rho) const { return derivative(rho) / rho; }

double PressureLaw::potential_d1_increment(double rho_bar, double rho) const {
  const double x = rho / rho_bar;
  if (isothermal()) return kappa * std::log1p(x);
  const double g1 = gamma_exp - 1.0;
  return kappa * gamma_exp * std::pow(rho_bar, g1) / g1 * std::expm1(g1 * std::log1p(x));
}

double PressureLaw::potential_bregman(double rho_bar, double rho) const {
  const double x = rho / rho_bar;
  if (isothermal()) return kappa * rho_bar * xlog_tail(x);
  return kappa * std::pow(rho_bar, gamma_exp) / (gamma_exp - 1.0) * binomial_tail2(gamma_exp, x);
}

std::vector<std::string> PressureLaw::violations() const {
  std::vector<std::string> out;
  if (!(kappa > 0.0) || !std::isfinite(kappa)) out.emplace_back("kappa must be > 0");
  if (!(gamma_exp >= 1.0) || !std::isfinite(gamma_exp)) out.emplace_back("gamma must be >= 1");
  if (!(rho_floor > 0.0) || !std::isfinite(rho_floor)) out.emplace_back("rho_floor must be > 0");
  return out;
}

std::vector<std::string> ModelParams::violations() const {
  std::vector<std::string> out;
  auto positive = [&](double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) out.push_back(std::string(name) + " must be > 0");
  };
  positive(alpha, "alpha");
  if (!(mu >= 0.0) || !std::isfinite(mu)) out.emplace_back("mu must be >= 0");
  positive(D, "D");
  positive(a, "a");
  positive(b, "b");
  positive(rho_bar, "rho_bar");
  auto p = pressure.violations();
  out.insert(out.end(), p.begin(), p.end());
  if (out.empty()) {
    if (!(pressure.derivative(rho_bar) > 0.0))
      out.emplace_back("pressure derivative at rho_bar must be > 0");
    const double pb = phi_bar();
    if (!std::isfinite(pb) || !(pb > 0.0)) out.emplace_back("phi_bar = (a/b) rho_bar must be finite and > 0");
  }
  return out;
}

void ModelParams::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

double ModelParams::sound_speed_bar() const { return std::sqrt(pressure.derivative(rho_bar)); }

Equilibrium equilibrium(const ModelParams& params, int dim) {
  params.validate();
  return Equilibrium{params.rho_bar, std::vector<double>(static_cast<std::size_t>(dim), 0.0),
                     params.phi_bar()};
}

std::vector<double> constant_state_residual(const ModelParams& params, double rho,
                                            const std::vector<double>& v, double phi) {
  std::vector<double> r;
  r.reserve(v.size() + 2);
  r.push_back(0.0);
  for (double vj : v) r.push_back(-params.alpha * vj);
  r.push_back(params.a * rho - params.b * phi);
  return r;
}

}  // namespace vasclab::model
