#include "vasclab/diagnostics/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "vasclab/linalg.hpp"
#include "vasclab/model/entropy.hpp"
#include "vasclab/model/flux.hpp"

namespace vasclab::diagnostics {

ConservationReport monitor_conservation(const solver::RunRecord& run, const model::ModelParams& params,
                                        double entropy_tolerance) {
  ConservationReport r;
  if (!run.mass.empty() && run.total_mass != 0.0) {
    for (double m : run.mass) r.max_mass_drift = std::max(r.max_mass_drift, std::abs(m - run.mass.front()));
    r.max_mass_drift /= std::abs(run.total_mass);
  }

  const auto& e = run.step_entropy.empty() ? run.entropy : run.step_entropy;
  if (e.size() >= 2) {
    const double e0 = e.front();
    const double scale = e0 > 0.0 ? e0 : 1.0;
    r.max_entropy_increment = -INFINITY;
    for (std::size_t i = 1; i < e.size(); ++i) {
      const double inc = (e[i] - e[i - 1]) / scale;
      r.entropy_increments.push_back(inc);
      r.max_entropy_increment = std::max(r.max_entropy_increment, inc);
      if (params.mu == 0.0 && inc > entropy_tolerance) ++r.flagged_increments;
    }
    r.entropy_checked = params.mu == 0.0;
  }

  r.min_dissipation_ratio = INFINITY;
  for (const auto& s : run.snapshots) {
    const int dim = s.dim();
    Vec U(dim + 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      U(0) = s.rho[i];
      double v2 = 0.0;
      for (int d = 0; d < dim; ++d) {
        U(d + 1) = s.v[d][i];
        v2 += s.v[d][i] * s.v[d][i];
      }
      if (v2 == 0.0) continue;
      const Vec W = model::to_entropy_vars(U, params);
      const Vec g = model::source_damping(U, params);
      const double w2 = W.tail(dim).squaredNorm();
      const double ratio = -W.tail(dim).dot(g.tail(dim)) / w2;
      r.min_dissipation_ratio = std::min(r.min_dissipation_ratio, ratio);
    }
  }
  if (std::isinf(r.min_dissipation_ratio)) r.min_dissipation_ratio = params.alpha * params.rho_bar;
  r.dissipation_ok = r.min_dissipation_ratio > 0.0;
  return r;
}

}  // namespace vasclab::diagnostics
