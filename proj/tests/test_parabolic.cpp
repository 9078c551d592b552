#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vasclab/diagnostics/series.hpp"
#include "vasclab/errors.hpp"
#include "vasclab/model/params.hpp"
#include "vasclab/parabolic/heat.hpp"
#include "vasclab/parabolic/monitor.hpp"

using namespace vasclab;
using namespace vasclab::parabolic;

namespace {

std::vector<double> mode(const model::GridSpec& g, int m, double amp) {
  std::vector<double> f(g.size());
  const double k = 2 * M_PI * m / g.lengths[0];
  for (int i = 0; i < g.nx(); ++i) f[i] = amp * std::cos(k * g.center(0, i));
  return f;
}

// Closed-form phi for one cosine mode: phi' = -lam phi + a r(t).
double lambda_of(const HeatKernelSpec& s, const model::GridSpec& g, int m) {
  const double k = 2 * M_PI * m / g.lengths[0];
  return s.D * k * k + s.b;
}

}  // namespace

TEST_CASE("heat kernel normalisation and errors") {
  HeatKernelSpec s{0.7, 1.0, 1, 1.0};
  double mass = 0.0;
  const double h = 0.01;
  for (int i = -2000; i <= 2000; ++i) {
    const double x[1] = {i * h};
    mass += heat_kernel(x, 0.5, s) * h;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  const double at0[1] = {0.0};
  CHECK(heat_kernel(at0, 0.5, s) == doctest::Approx(1.0 / std::sqrt(4 * M_PI * 0.7 * 0.5)));
  CHECK_THROWS_AS(heat_kernel(at0, 0.0, s), DomainError);
  HeatKernelSpec s2{1.0, 1.0, 2, 1.0};
  const double x2[2] = {1.0, 1.0};
  CHECK(heat_kernel(x2, 1.0, s2) == doctest::Approx(std::exp(-0.5) / (4 * M_PI)));
  HeatKernelSpec bad{0.0, 1.0, 1, 1.0};
  CHECK_FALSE(bad.violations().empty());
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("spectral step is exact for frozen density") {
  const auto g = model::GridSpec::line(64, 32.0);
  HeatKernelSpec s{0.8, 0.6, 1, 1.5};
  const auto phi = mode(g, 3, 0.2);
  const auto rho = mode(g, 3, 0.1);
  const double lam = lambda_of(s, g, 3), dt = 0.7;
  const double amp = std::exp(-lam * dt) * 0.2 + s.a * 0.1 * -std::expm1(-lam * dt) / lam;
  const auto out = spectral_phi_step(phi, rho, s, g, dt);
  const auto ref = mode(g, 3, amp);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(ref[i]).scale(1.0).epsilon(1e-13));

  PhiIntegrator integ(s, g);
  auto p2 = phi;
  integ.step(p2, rho, dt);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(p2[i] == doctest::Approx(out[i]).scale(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(spectral_phi_step(phi, rho, s, g, -1.0), DomainError);
}

TEST_CASE("Duhamel with a linear-in-time density is exact") {
  // rho(t) = (r0 + r1 t) cos(kx): phi(T) = e^{-lam T} p0
  //   + a [r0 (1 - e^{-lam T})/lam + r1 (T/lam - (1 - e^{-lam T})/lam^2)].
  const auto g = model::GridSpec::line(32, 16.0);
  HeatKernelSpec s{1.0, 1.0, 1, 1.0};
  const double r0 = 0.3, r1 = -0.2, p0 = 0.1, T = 2.0;
  const double lam = lambda_of(s, g, 2);
  RhoPath path;
  const int n = 40;
  for (int i = 0; i <= n; ++i) {
    const double t = T * i / n;
    path.times.push_back(t);
    path.fields.push_back(mode(g, 2, r0 + r1 * t));
  }
  const double e = -std::expm1(-lam * T);
  const double amp = std::exp(-lam * T) * p0 + s.a * (r0 * e / lam + r1 * (T / lam - e / (lam * lam)));
  const auto res = duhamel_phi(mode(g, 2, p0), path, s, g, T);
  const auto ref = mode(g, 2, amp);
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(res.phi[i] == doctest::Approx(ref[i]).scale(1.0).epsilon(1e-13));
  CHECK(res.error_estimate < 1e-12);
}

TEST_CASE("Duhamel accuracy control and domain checks") {
  const auto g = model::GridSpec::line(32, 16.0);
  HeatKernelSpec s;
  RhoPath path;
  for (int i = 0; i <= 4; ++i) {
    path.times.push_back(i * 0.5);
    path.fields.push_back(mode(g, 1, std::sin(3.0 * i * 0.5)));
  }
  const auto phi0 = mode(g, 1, 0.0);
  CHECK_THROWS_AS(duhamel_phi(phi0, path, s, g, 2.0), AccuracyError);
  DuhamelOptions loose;
  loose.tolerance = 1.0;
  CHECK_NOTHROW(duhamel_phi(phi0, path, s, g, 2.0, loose));
  CHECK_THROWS_AS(duhamel_phi(phi0, path, s, g, 0.75, loose), DomainError);
  path.times[0] = 0.1;
  CHECK_THROWS_AS(duhamel_phi(phi0, path, s, g, 2.0, loose), DomainError);
}

TEST_CASE("Duhamel matches repeated spectral steps for slowly varying data") {
  const auto g = model::GridSpec::square(16, 16, 8.0, 8.0);
  HeatKernelSpec s{1.0, 1.0, 2, 1.0};
  std::vector<double> r0(g.size()), p0(g.size());
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i) {
      r0[j * 16 + i] = std::sin(2 * M_PI * i / 16.0) + 0.5 * std::cos(2 * M_PI * 2 * j / 16.0);
      p0[j * 16 + i] = 0.3 * std::cos(2 * M_PI * (i + j) / 16.0);
    }
  const int n = 400;
  const double T = 1.0, dt = T / n;
  RhoPath path;
  for (int i = 0; i <= n; ++i) {
    path.times.push_back(i * dt);
    std::vector<double> r = r0;
    for (double& x : r) x *= std::cos(i * dt);
    path.fields.push_back(r);
  }
  DuhamelOptions o;
  o.tolerance = 1e-5;
  const auto d = duhamel_phi(p0, path, s, g, T, o);
  std::vector<double> phi = p0, mid(g.size());
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (path.fields[i][k] + path.fields[i + 1][k]);
    phi = spectral_phi_step(phi, mid, s, g, dt);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) num += std::pow(phi[k] - d.phi[k], 2), den += phi[k] * phi[k];
  CHECK(std::sqrt(num / den) < 1e-6);
}

TEST_CASE("phi bound monitor flags violations") {
  model::ModelParams p;
  diagnostics::NormSeries s;
  auto sample = [&](double t, double phi_l1, double grad) {
    s.append(t, {{"phi:L1", phi_l1}, {"rho:L1", 1.0}, {"rho:Linf", 0.1}, {"grad_phi:Linf", grad}, {"phi:H3", 1.0}});
  };
  sample(0.0, 0.5, 0.2);
  sample(1.0, 0.9, 0.1);
  sample(2.0, 1.5, 0.1);  // above (a/b) sup |rho|_1 + e^{-2} 0.5
  sample(3.0, 0.5, 5.0);  // above the gradient envelope
  const auto r = monitor_phi_bounds(s, p, 1, 2);
  CHECK(r.c0 == doctest::Approx(0.2));
  CHECK(r.l1_bound[1] == doctest::Approx(std::exp(-1.0) * 0.5 + 1.0));
  CHECK(r.grad_envelope[1] == doctest::Approx(0.2 * std::exp(-1.0) + 0.1 * std::erf(1.0)));
  CHECK(r.l1_violations == 1);
  CHECK(r.grad_violations == 1);
  CHECK_FALSE(r.ok());
  diagnostics::NormSeries empty_keys;
  empty_keys.append(0.0, {{"phi:L1", 1.0}});
  CHECK_THROWS_AS(monitor_phi_bounds(empty_keys, p, 1, 2), InputError);
}
