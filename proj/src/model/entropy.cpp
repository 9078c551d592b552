#include "vasclab/model/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "vasclab/errors.hpp"
#include "vasclab/random.hpp"

namespace vasclab::model {
namespace {

void require_positive(double rho_tot) {
  if (!(rho_tot > 0.0)) throw DomainError("total density must be > 0, got " + std::to_string(rho_tot));
}

Vec velocity_part(const Vec& U) { return U.tail(U.size() - 1); }

}  // namespace

double entropy_density(double rho_tot, const Vec& v, const PressureLaw& pressure) {
  require_positive(rho_tot);
  return 0.5 * v.squaredNorm() / rho_tot + pressure.potential(rho_tot);
}

Vec entropy_gradient(double rho_tot, const Vec& v, const PressureLaw& pressure) {
  require_positive(rho_tot);
  Vec g(v.size() + 1);
  g(0) = -0.5 * v.squaredNorm() / (rho_tot * rho_tot) + pressure.potential_d1(rho_tot);
  g.tail(v.size()) = v / rho_tot;
  return g;
}

Mat entropy_hessian(double rho_tot, const Vec& v, const PressureLaw& pressure) {
  require_positive(rho_tot);
  const auto n = v.size();
  Mat h = Mat::Zero(n + 1, n + 1);
  const double r2 = rho_tot * rho_tot;
  h(0, 0) = v.squaredNorm() / (r2 * rho_tot) + pressure.potential_d2(rho_tot);
  for (Eigen::Index j = 0; j < n; ++j) {
    h(0, j + 1) = -v(j) / r2;
    h(j + 1, 0) = -v(j) / r2;
    h(j + 1, j + 1) = 1.0 / rho_tot;
  }
  return h;
}

double shifted_entropy(const Vec& U, const ModelParams& params) {
  const double rho_tot = U(0) + params.rho_bar;
  require_positive(rho_tot);
  const Vec v = velocity_part(U);
  return 0.5 * v.squaredNorm() / rho_tot + params.pressure.potential_bregman(params.rho_bar, U(0));
}

Vec to_entropy_vars(const Vec& U, const ModelParams& params) {
  const double rho_tot = U(0) + params.rho_bar;
  require_positive(rho_tot);
  const Vec v = velocity_part(U);
  Vec W(U.size());
  W(0) = -0.5 * v.squaredNorm() / (rho_tot * rho_tot) +
         params.pressure.potential_d1_increment(params.rho_bar, U(0));
  W.tail(v.size()) = v / rho_tot;
  return W;
}

Vec from_entropy_vars(const Vec& W, const ModelParams& params, const InversionOptions& opts) {
  const auto n = W.size() - 1;
  // Linearised guess: E''(Ubar) = diag(P'(rho_bar)/rho_bar, I/rho_bar).
  Vec U(W.size());
  U(0) = W(0) * params.rho_bar / params.pressure.derivative(params.rho_bar);
  U.tail(n) = W.tail(n) * params.rho_bar;
  if (U(0) + params.rho_bar <= 0.0) U(0) = 0.0;

  auto residual = [&](const Vec& u) { return Vec(to_entropy_vars(u, params) - W); };
  Vec r = residual(U);
  double rnorm = r.lpNorm<Eigen::Infinity>();
  bool converged = rnorm <= opts.tolerance;
  for (int it = 0; it < opts.max_iterations && !converged; ++it) {
    const Mat J = entropy_hessian(U(0) + params.rho_bar, U.tail(n), params.pressure);
    const Vec step = -J.partialPivLu().solve(r);
    double lambda = 1.0;
    Vec trial;
    Vec trial_r;
    double trial_norm = 0.0;
    for (;;) {
      trial = U + lambda * step;
      if (trial(0) + params.rho_bar > 0.0) {
        trial_r = residual(trial);
        trial_norm = trial_r.lpNorm<Eigen::Infinity>();
        if (trial_norm < rnorm || trial_norm <= opts.tolerance) break;
      }
      lambda *= 0.5;
      if (lambda < 1e-6) throw InversionError("entropy-variable inversion stalled (W outside the invertibility ball?)");
    }
    U = trial;
    r = trial_r;
    rnorm = trial_norm;
    converged = rnorm <= opts.tolerance;
  }
  if (!converged)
    throw InversionError("entropy-variable inversion did not converge in " +
                         std::to_string(opts.max_iterations) + " iterations");
  // One undamped polishing step removes the residual left at the tolerance.
  const Mat J = entropy_hessian(U(0) + params.rho_bar, U.tail(n), params.pressure);
  const Vec polished = U - J.partialPivLu().solve(r);
  if (polished(0) + params.rho_bar > 0.0 &&
      residual(polished).lpNorm<Eigen::Infinity>() <= rnorm)
    U = polished;
  return U;
}

EntropyVars entropy_variables(const FieldState& state, const ModelParams& params) {
  const std::size_t cells = state.size();
  const int dim = state.dim();
  EntropyVars w;
  w.w1.resize(cells);
  w.w2.assign(static_cast<std::size_t>(dim), std::vector<double>(cells));
  Vec U(dim + 1);
  for (std::size_t i = 0; i < cells; ++i) {
    U(0) = state.rho[i];
    for (int d = 0; d < dim; ++d) U(d + 1) = state.v[d][i];
    const Vec W = to_entropy_vars(U, params);
    w.w1[i] = W(0);
    for (int d = 0; d < dim; ++d) w.w2[d][i] = W(d + 1);
  }
  return w;
}

double total_shifted_entropy(const FieldState& state, const ModelParams& params) {
  const std::size_t cells = state.size();
  const int dim = state.dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double rho_tot = state.rho[i] + params.rho_bar;
    require_positive(rho_tot);
    double v2 = 0.0;
    for (int d = 0; d < dim; ++d) v2 += state.v[d][i] * state.v[d][i];
    sum += 0.5 * v2 / rho_tot + params.pressure.potential_bregman(params.rho_bar, state.rho[i]);
  }
  return sum * state.grid.cell_volume();
}

double entropy_equivalence_constant(const ModelParams& params, int dim, double radius, int samples,
                                    std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  double c = 1.0;
  Vec W(dim + 1);
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k <= dim; ++k) W(k) = uniform(gen, -radius, radius);
    const double w2 = W.squaredNorm();
    if (w2 == 0.0) continue;
    const Vec U = from_entropy_vars(W, params);
    const double e = shifted_entropy(U, params);
    c = std::max({c, e / w2, w2 / e});
  }
  return c;
}

}  // namespace vasclab::model
