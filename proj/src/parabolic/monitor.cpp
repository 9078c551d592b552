#include "vasclab/parabolic/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vasclab/errors.hpp"

namespace vasclab::parabolic {

PhiBoundsReport monitor_phi_bounds(const diagnostics::NormSeries& series, const model::ModelParams& params, int dim,
                                   int s, double rel_tol, double abs_tol) {
  const std::string hs1 = "phi:H" + std::to_string(s + 1);
  std::string missing;
  for (const std::string& k : {std::string("phi:L1"), std::string("rho:L1"), std::string("rho:Linf"),
                               std::string("grad_phi:Linf"), hs1})
    if (!series.has(k)) missing += " " + k;
  if (!missing.empty()) throw InputError("monitor_phi_bounds: missing components" + missing);

  PhiBoundsReport r;
  const auto& t = series.times();
  if (t.empty()) return r;
  const auto& phi_l1 = series.get("phi:L1");
  const auto& rho_l1 = series.get("rho:L1");
  const auto& rho_inf = series.get("rho:Linf");
  const auto& grad = series.get("grad_phi:Linf");
  const auto& phi_h = series.get(hs1);
  const double a = params.a, b = params.b, D = params.D;
  const double t0 = t.front();
  r.c0 = phi_h[0] > 0.0 ? grad[0] / phi_h[0] : 0.0;
  double sup_l1 = 0.0, sup_inf = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sup_l1 = std::max(sup_l1, rho_l1[i]);
    sup_inf = std::max(sup_inf, rho_inf[i]);
    const double tau = t[i] - t0;
    const double decay = std::exp(-b * tau);
    const double l1b = decay * phi_l1[0] + a / b * sup_l1;
    const double env = r.c0 * decay * phi_h[0] + dim * a * sup_inf * std::erf(std::sqrt(b * tau)) / std::sqrt(b * D);
    r.times.push_back(t[i]);
    r.phi_l1.push_back(phi_l1[i]);
    r.l1_bound.push_back(l1b);
    r.grad_linf.push_back(grad[i]);
    r.grad_envelope.push_back(env);
    if (phi_l1[i] > l1b * (1.0 + rel_tol) + abs_tol) ++r.l1_violations;
    if (grad[i] > env * (1.0 + rel_tol) + abs_tol) ++r.grad_violations;
    if (l1b > 0.0) r.worst_l1_ratio = std::max(r.worst_l1_ratio, phi_l1[i] / l1b);
    if (env > 0.0) r.worst_grad_ratio = std::max(r.worst_grad_ratio, grad[i] / env);
  }
  return r;
}

}  // namespace vasclab::parabolic
