#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vasclab/kernels/kernels.hpp"
#include "vasclab/model/grid.hpp"
#include "vasclab/model/params.hpp"
#include "vasclab/random.hpp"
#include "vasclab/solver/solver.hpp"

using namespace vasclab;
using kernels::Backend;

namespace {

std::vector<double> randv(std::size_t n, double lo, double hi, std::mt19937_64& g) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(g, lo, hi);
  return v;
}

// FMA contraction in the SIMD path allows a few ulps of disagreement.
void check_close(const std::vector<double>& a, const std::vector<double>& b, double scale = 1.0) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14 * scale + 1e-15 * std::abs(b[i]));
}

const std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 33, 1000};

}  // namespace

TEST_CASE("scalar kernels match their formulas") {
  const auto& k = kernels::table(Backend::scalar);
  std::vector<double> r{1.5, 0.8}, vn{0.3, -0.4}, vt{0.1, 0.2}, dp{0.05, -0.1}, c{1.2, 1.1};
  std::vector<double> fr(2), fv(2), ft(2), s(2);
  k.euler_cell_flux(2, r.data(), vn.data(), vt.data(), dp.data(), c.data(), fr.data(), fv.data(), ft.data(), s.data());
  CHECK(fr[1] == -0.4);
  CHECK(fv[0] == doctest::Approx(0.09 / 1.5 + 0.05));
  CHECK(ft[1] == doctest::Approx(0.2 * -0.4 / 0.8));
  CHECK(s[1] == doctest::Approx(0.5 + 1.1));

  std::vector<double> fl{1.0}, frr{3.0}, ul{0.0}, ur{1.0}, sl{0.5}, sr{2.0}, out(1);
  k.rusanov_face(1, fl.data(), frr.data(), ul.data(), ur.data(), sl.data(), sr.data(), out.data());
  CHECK(out[0] == doctest::Approx(2.0 - 1.0));

  std::vector<double> x{1.0, 5.0, -2.0};
  CHECK(k.max_value(3, x.data()) == 5.0);
  CHECK(std::isinf(k.max_value(0, x.data())));
}

TEST_CASE("backend selection") {
  CHECK(kernels::available(Backend::scalar));
  CHECK(kernels::backend_name(Backend::avx2) == "avx2");
  {
    kernels::ScopedBackend s(Backend::scalar);
    CHECK(kernels::active().backend == Backend::scalar);
  }
  if (!kernels::available(Backend::avx2)) CHECK_THROWS_AS(kernels::table(Backend::avx2), std::invalid_argument);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::available(Backend::avx2)) {
    MESSAGE("AVX2 not available on this machine; equivalence not exercised");
    return;
  }
  const auto& S = kernels::table(Backend::scalar);
  const auto& A = kernels::table(Backend::avx2);
  std::mt19937_64 g(42);
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto r = randv(n, 0.5, 1.5, g), vn = randv(n, -0.3, 0.3, g), vt = randv(n, -0.3, 0.3, g);
    const auto dp = randv(n, -0.1, 0.1, g), c = randv(n, 1.0, 1.5, g);
    for (bool two_d : {false, true}) {
      std::vector<double> a[4], b[4];
      for (int q = 0; q < 4; ++q) a[q].assign(n, 0.0), b[q].assign(n, 0.0);
      S.euler_cell_flux(n, r.data(), vn.data(), two_d ? vt.data() : nullptr, dp.data(), c.data(), a[0].data(),
                        a[1].data(), two_d ? a[2].data() : nullptr, a[3].data());
      A.euler_cell_flux(n, r.data(), vn.data(), two_d ? vt.data() : nullptr, dp.data(), c.data(), b[0].data(),
                        b[1].data(), two_d ? b[2].data() : nullptr, b[3].data());
      for (int q = 0; q < 4; ++q) check_close(a[q], b[q]);
    }

    const auto fl = randv(n, -1, 1, g), fr = randv(n, -1, 1, g), ul = randv(n, -1, 1, g), ur = randv(n, -1, 1, g);
    const auto sl = randv(n, 0, 2, g), sr = randv(n, 0, 2, g);
    std::vector<double> o1(n), o2(n);
    S.rusanov_face(n, fl.data(), fr.data(), ul.data(), ur.data(), sl.data(), sr.data(), o1.data());
    A.rusanov_face(n, fl.data(), fr.data(), ul.data(), ur.data(), sl.data(), sr.data(), o2.data());
    check_close(o1, o2, 4.0);

    auto u1 = randv(n, -1, 1, g);
    auto u2 = u1;
    S.flux_divergence(n, u1.data(), fl.data(), fr.data(), 0.37);
    A.flux_divergence(n, u2.data(), fl.data(), fr.data(), 0.37);
    check_close(u1, u2, 2.0);

    auto v1 = randv(n, -1, 1, g);
    auto v2 = v1;
    S.relax_source(n, v1.data(), r.data(), fl.data(), 0.9, 0.05);
    A.relax_source(n, v2.data(), r.data(), fl.data(), 0.9, 0.05);
    check_close(v1, v2);

    auto p1 = randv(2 * n, -1, 1, g);
    auto p2 = p1;
    const auto rh = randv(2 * n, -1, 1, g), dec = randv(n, 0, 1, g), gain = randv(n, 0, 1, g);
    S.spectral_relax(n, p1.data(), rh.data(), dec.data(), gain.data());
    A.spectral_relax(n, p2.data(), rh.data(), dec.data(), gain.data());
    check_close(p1, p2);

    std::vector<double> l1(n), l2(n);
    S.lincomb(n, 0.3, ul.data(), -1.7, ur.data(), l1.data());
    A.lincomb(n, 0.3, ul.data(), -1.7, ur.data(), l2.data());
    check_close(l1, l2, 2.0);
    auto alias = ul;
    A.lincomb(n, 0.3, alias.data(), -1.7, ur.data(), alias.data());
    check_close(alias, l1, 2.0);

    CHECK(S.max_value(n, fl.data()) == A.max_value(n, fl.data()));
  }
}

TEST_CASE("solver trajectories agree across backends") {
  if (!kernels::available(Backend::avx2)) return;
  model::ModelParams p;
  const auto grid = model::GridSpec::square(32, 16, 32.0, 16.0);
  auto s0 = model::FieldState::zeros(grid);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 32; ++i) {
      const std::size_t c = j * 32 + i;
      s0.rho[c] = 0.01 * std::sin(2 * M_PI * i / 32) * std::cos(2 * M_PI * j / 16);
      s0.v[0][c] = 0.005 * std::cos(2 * M_PI * (i + j) / 16);
      s0.phi[c] = 0.002 * std::sin(2 * M_PI * j / 16);
    }
  solver::SolverConfig cfg;
  cfg.t_final = 5.0;
  cfg.smallness = 0.0;
  solver::RunRecord a, b;
  {
    kernels::ScopedBackend s(Backend::scalar);
    a = solver::run(s0, p, cfg);
  }
  {
    kernels::ScopedBackend s(Backend::avx2);
    b = solver::run(s0, p, cfg);
  }
  REQUIRE(a.steps == b.steps);
  const auto& fa = a.snapshots.back();
  const auto& fb = b.snapshots.back();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    CHECK(fa.rho[i] == doctest::Approx(fb.rho[i]).epsilon(1e-10).scale(1e-6));
    CHECK(fa.v[1][i] == doctest::Approx(fb.v[1][i]).epsilon(1e-10).scale(1e-6));
    CHECK(fa.phi[i] == doctest::Approx(fb.phi[i]).epsilon(1e-10).scale(1e-6));
  }
}
