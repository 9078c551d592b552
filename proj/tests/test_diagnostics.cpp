#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vasclab/diagnostics/conservation.hpp"
#include "vasclab/diagnostics/fit.hpp"
#include "vasclab/diagnostics/norms.hpp"
#include "vasclab/diagnostics/series.hpp"
#include "vasclab/errors.hpp"

using namespace vasclab;
using namespace vasclab::diagnostics;

TEST_CASE("L^p norms of simple fields") {
  const auto g = model::GridSpec::line(16, 8.0);
  std::vector<double> c(16, -2.0);
  CHECK(lp_norm(c, g, 1.0) == doctest::Approx(16.0));
  CHECK(lp_norm(c, g, 2.0) == doctest::Approx(std::sqrt(32.0)));
  CHECK(lp_norm(c, g, INFINITY) == 2.0);
  std::vector<double> a(16, 3.0), b(16, 4.0);
  CHECK(lp_norm(FieldGroup{&a, &b}, g, INFINITY) == doctest::Approx(5.0));
  CHECK(lp_norm(FieldGroup{&a, &b}, g, 2.0) == doctest::Approx(5.0 * std::sqrt(8.0)));
  CHECK_THROWS_AS(lp_norm(c, g, 0.5), DomainError);
  CHECK_THROWS_AS(lp_norm(std::vector<double>(3), g, 2.0), InputError);
}

TEST_CASE("gradient Sobolev norm of a single mode") {
  const auto g = model::GridSpec::line(64, 2 * M_PI);
  NormEvaluator ev(g);
  std::vector<double> f(64);
  for (int i = 0; i < 64; ++i) f[i] = std::sin(4 * g.center(0, i));
  // |d/dx sin 4x|_{H^1} = 4 (1 + 16)^{1/2} |sin 4x|_{L^2}.
  CHECK(ev.gradient_sobolev(FieldGroup{&f}, 1) == doctest::Approx(4 * std::sqrt(17.0) * lp_norm(f, g, 2.0)));
  CHECK(ev.sobolev(f, 0) == doctest::Approx(lp_norm(f, g, 2.0)).epsilon(1e-12));
}

TEST_CASE("power-law fit recovers the exponent") {
  std::vector<double> t, v;
  for (int i = 1; i <= 40; ++i) {
    t.push_back(10.0 * i);
    v.push_back(3.0 * std::pow(10.0 * i, -0.37));
  }
  const auto f = fit_decay(t, v, 0.37, 0.0, 1e9);
  CHECK(f.exponent == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(f.log_prefactor == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.pass);
  CHECK(f.samples == 40);

  const auto two = fit_decay(t, v, 0.6, 0.0, 1e9);
  CHECK_FALSE(two.pass);
  FitOptions lb;
  lb.mode = FitMode::lower_bound;
  CHECK(fit_decay(t, v, 0.2, 0.0, 1e9, lb).pass);
  CHECK_FALSE(fit_decay(t, v, 0.6, 0.0, 1e9, lb).pass);

  const auto w = fit_decay(t, v, 0.37, 50.0, 200.0);
  CHECK(w.t_min == doctest::Approx(50.0));
  CHECK(w.t_max == doctest::Approx(200.0));
  CHECK(w.samples == 16);
  CHECK_THROWS_AS(fit_decay(t, v, 0.37, 50.0, 100.0), FitError);
  v[20] = 0.0;
  CHECK_THROWS_AS(fit_decay(t, v, 0.37, 0.0, 1e9), FitError);
  CHECK(fit_mode_name(FitMode::lower_bound) == "lower_bound");
}

TEST_CASE("noisy fit reports a low r2") {
  std::vector<double> t, v;
  for (int i = 1; i <= 30; ++i) {
    t.push_back(i);
    v.push_back(i % 2 ? 1.0 : 10.0);
  }
  const auto f = fit_decay(t, v, 0.0, 0.0, 100.0);
  CHECK(f.r2 < 0.5);
  CHECK_FALSE(f.pass);
}

TEST_CASE("norm series bookkeeping") {
  NormSeries s;
  s.append(0.0, {{"U:L2", 1.0}, {"phi:L2", 0.0}});
  s.append(1.0, {{"U:L2", 0.5}, {"phi:L2", 0.1}});
  CHECK(s.size() == 2);
  CHECK(s.get("U:L2")[1] == 0.5);
  CHECK(s.has("phi:L2"));
  CHECK_THROWS_AS(s.get("v:L2"), InputError);
  CHECK_THROWS_AS(s.append(1.0, {{"U:L2", 0.5}, {"phi:L2", 0.1}}), InputError);
  CHECK_THROWS_AS(s.append(2.0, {{"U:L2", 0.5}}), InputError);
  CHECK_THROWS_AS(s.append(2.0, {{"U:L2", -1.0}, {"phi:L2", 0.1}}), InputError);

  const auto path = std::filesystem::temp_directory_path() / "vasclab_series_test.csv";
  s.write_csv(path);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "time,field,norm_kind,value");
  CHECK(row.rfind("0,", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("trapezoid and functionals") {
  CHECK(trapezoid({0.0, 1.0, 3.0}, {0.0, 1.0, 3.0}) == doctest::Approx(4.5));
  NormSeries s;
  // W:H2 = 1, W2:H2 = 1, gradW:H1 = 0: N^2 = 1 + t.
  for (int i = 0; i <= 4; ++i) s.append(i, {{"W:H2", 1.0}, {"W2:H2", 1.0}, {"gradW:H1", 0.0}, {"u:Linf", 1.0 / (1 + i)}});
  const auto N = functional_Ns(s, 2);
  for (int i = 0; i <= 4; ++i) CHECK(N[i] == doctest::Approx(std::sqrt(1.0 + i)));
  CHECK_THROWS_AS(functional_Ns(s, 3), InputError);
  // sup max{1, tau} / (1 + tau) stays below 1.
  const auto R = functional_R(s, "u", 1.0);
  CHECK(R[0] == 1.0);
  CHECK(R[4] == doctest::Approx(1.0));
  CHECK(R[2] == doctest::Approx(1.0));
  const auto S = functional_S(s, "W", 2, 0.5);
  CHECK(S[4] == doctest::Approx(2.0));
}

TEST_CASE("fit report layout") {
  DecayFit f;
  f.exponent = 0.25;
  f.reference = 0.25;
  f.r2 = 0.99;
  f.pass = true;
  const auto path = std::filesystem::temp_directory_path() / "vasclab_fit_test.csv";
  write_fit_report(path, {{"U", "L2", f}});
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "field,norm,exponent,reference,r2,verdict");
  CHECK(row.find("pass") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("conservation monitor on a synthetic record") {
  model::ModelParams p;
  p.mu = 0.0;
  solver::RunRecord r;
  r.total_mass = 100.0;
  r.mass = {1.0, 1.0 + 1e-10, 1.0 - 2e-10};
  r.step_entropy = {1.0, 0.9, 0.95, 0.8};
  auto s = model::FieldState::zeros(model::GridSpec::line(16, 16.0));
  s.v[0][0] = 0.1;
  s.v[0][1] = -0.2;
  s.v[0][3] = 0.05;
  r.snapshots = {s};
  const auto c = monitor_conservation(r, p);
  CHECK(c.max_mass_drift == doctest::Approx(2e-12));
  CHECK(c.entropy_checked);
  CHECK(c.flagged_increments == 1);
  CHECK(c.max_entropy_increment == doctest::Approx(0.05));
  // -W_2 . g / |W_2|^2 = alpha (rho_bar + rho) = 1 at rho = 0.
  CHECK(c.min_dissipation_ratio == doctest::Approx(1.0));
  CHECK(c.dissipation_ok);
}
