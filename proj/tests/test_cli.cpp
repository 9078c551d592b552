#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vasclab/cli/config.hpp"
#include "vasclab/cli/experiments.hpp"
#include "vasclab/cli/initial_data.hpp"
#include "vasclab/diagnostics/norms.hpp"
#include "vasclab/errors.hpp"

using namespace vasclab;
using namespace vasclab::cli;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& x : v)
    if (x.find(s) != std::string::npos) return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("vasclab_cli_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("minimal sk_check config takes documented defaults") {
  const auto c = parse_config("experiment = sk_check\n");
  CHECK(c.experiment == Experiment::sk_check);
  CHECK(c.seed == 1);
  CHECK(c.params.alpha == 1.0);
  CHECK(c.params.pressure.gamma_exp == 2.0);
  CHECK(c.sk.directions == 1000);
  CHECK(c.solver.cfl == 0.45);
  CHECK(c.solver.smallness == 0.05);
}

TEST_CASE("values, comments and sections") {
  const auto c = parse_config(
      "# header\nexperiment = nonlinear_decay\nseed = 7\n\n[model]\nalpha = 2.5 ; inline\nkappa=3\n"
      "[grid]\ndim = 2\nnx = 32\nny = 16\nlx = 8\nly = 4\n[solver]\nsplitting = lie\n[sk]\ndims = 2\n");
  CHECK(c.seed == 7);
  CHECK(c.params.alpha == 2.5);
  CHECK(c.params.pressure.kappa == 3.0);
  CHECK(c.grid.dim == 2);
  CHECK(c.grid.cells[1] == 16);
  CHECK(c.solver.splitting == solver::Splitting::lie);
  CHECK(c.sk.dims == std::vector<int>{2});
}

TEST_CASE("every violation is reported") {
  CHECK(mentions(violations_of("experiment = sk_check\n[model]\nalpha = -1\n"), "alpha must be > 0"));
  const auto v = violations_of("experiment = sk_check\nseed = 1\nseed = 2\n[model]\nbogus = 1\nD = 0\n[nothing]\n");
  CHECK(mentions(v, "duplicate key 'seed'"));
  CHECK(mentions(v, "unknown key 'model.bogus'"));
  CHECK(mentions(v, "D must be > 0"));
  CHECK(mentions(v, "unknown section [nothing]"));
  CHECK(v.size() >= 4);
  CHECK(mentions(violations_of("seed = 3\n"), "experiment"));
  CHECK(mentions(violations_of("experiment = nonlinear_decay\n[grid]\nnx = 64\n"), "missing required block [solver]"));
  CHECK(mentions(violations_of("experiment = sk_check\n[model]\nalpha = abc\n"), "model.alpha"));
  CHECK(mentions(violations_of("experiment = sk_check\nnot a pair\n"), "expected key = value"));
}

TEST_CASE("resolved config text round-trips") {
  const auto c = parse_config("experiment = linear_decay\nseed = 9\n[grid]\nnx = 128\nlx = 64\n[blocks]\ndims = 1\n");
  const auto text = c.to_text();
  const auto d = parse_config(text);
  CHECK(d.to_text() == text);
  CHECK(d.seed == 9);
  CHECK(d.grid.cells[0] == 128);
  CHECK(d.blocks.dims == std::vector<int>{1});
}

TEST_CASE("band-limited initial data") {
  const auto g = model::GridSpec::square(32, 32, 32.0, 32.0);
  model::ModelParams p;
  InitialDataSpec spec;
  spec.preset = "band_limited";
  spec.hs_norm = 0.02;
  const auto s = make_initial_state(spec, g, p, 2, 5);
  double mean = 0.0;
  for (double r : s.rho) mean += r;
  CHECK(std::abs(mean / g.size()) < 1e-15);
  diagnostics::FieldGroup U{&s.rho, &s.v[0], &s.v[1]};
  CHECK(diagnostics::sobolev_norm(U, 2, g) == doctest::Approx(0.02));
  // Only |index| <= 4 modes on each axis: the field is reproduced by a
  // spectral filter that removes everything above that.
  const auto t = make_initial_state(spec, g, p, 2, 5);
  CHECK(t.rho == s.rho);
  const auto u = make_initial_state(spec, g, p, 2, 6);
  CHECK(u.rho != s.rho);
  std::mt19937_64 gen(1);
  const auto f = band_limited_field(model::GridSpec::line(64, 64.0), 0.25, gen);
  CHECK(diagnostics::lp_norm(f, model::GridSpec::line(64, 64.0), 2.0) == doctest::Approx(1.0));
  InitialDataSpec bad;
  bad.preset = "nope";
  CHECK_THROWS(make_initial_state(bad, g, p, 2, 1));
}

TEST_CASE("gaussian initial data and phi scaling") {
  const auto g = model::GridSpec::line(256, 256.0);
  model::ModelParams p;
  p.a = 3.0;
  InitialDataSpec spec;
  spec.hs_norm = 0.0;
  spec.phi_scale = 1.0;
  const auto s = make_initial_state(spec, g, p, 2, 1);
  CHECK(*std::max_element(s.rho.begin(), s.rho.end()) == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(s.phi[128] == doctest::Approx(3.0 * s.rho[128]));
}

TEST_CASE("sk_check experiment writes artifacts and passes") {
  auto cfg = parse_config("experiment = sk_check\n");
  const auto dir = scratch("sk");
  const auto out = run_experiment(cfg, dir);
  CHECK(out.exit_code == exit_pass);
  CHECK(out.criteria.size() == 2);
  CHECK(fs::exists(dir / "config.resolved.ini"));
  CHECK(fs::exists(dir / "sk_margins.csv"));
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["status"] == "pass");
  CHECK(j["criteria"][0]["pass"] == true);
  CHECK(parse_config(slurp(dir / "config.resolved.ini")).to_text() == cfg.to_text());
  fs::remove_all(dir);
}

TEST_CASE("experiment outputs are reproducible") {
  auto cfg = parse_config(
      "experiment = nonlinear_decay\nseed = 4\n[grid]\nnx = 64\nlx = 64\n[solver]\nt_final = 20\n"
      "[initial]\npreset = band_limited\n[fit]\nmin_r2 = 0\ntolerance = 10\n");
  const auto a = scratch("det_a"), b = scratch("det_b");
  run_experiment(cfg, a);
  run_experiment(cfg, b);
  for (const char* f : {"norms.csv", "final_state.csv", "summary.json", "phi_bounds.csv"})
    CHECK(slurp(a / f) == slurp(b / f));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("errors map to exit codes and are serialised") {
  auto cfg = parse_config("experiment = sk_check\n");
  cfg.params.D = 0.0;
  const auto dir = scratch("bad");
  const auto out = run_experiment(cfg, dir);
  CHECK(out.exit_code == exit_config);
  CHECK(out.error_kind == "ValidationError");
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["status"] == "error");
  CHECK(j["exit_code"] == 2);
  CHECK(j["error"]["violations"][0] == "D must be > 0");
  fs::remove_all(dir);

  // A frequency cutoff past the branch crossing has no diffusive projector.
  auto lin = parse_config("experiment = linear_decay\n[grid]\nnx = 64\nlx = 64\n[blocks]\ndims = 1\nxi_cutoff = 0.5\n"
                          "[linear]\nenabled = false\n");
  const auto o2 = evaluate_experiment(lin);
  CHECK(o2.exit_code == exit_numerical);
  CHECK(o2.error_kind == "ProjectorError");

  // A criterion failure: an unattainable SK margin threshold.
  auto sk = parse_config("experiment = sk_check\n[sk]\nmin_margin = 0.9\n");
  CHECK(evaluate_experiment(sk).exit_code == exit_criterion);
}
