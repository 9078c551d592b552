#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "vasclab/diagnostics/norms.hpp"
#include "vasclab/errors.hpp"
#include "vasclab/fft/periodic_fft.hpp"
#include "vasclab/random.hpp"

using namespace vasclab;

namespace {

std::vector<double> random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<double> f(n);
  for (double& x : f) x = uniform(g, -1, 1);
  return f;
}

}  // namespace

TEST_CASE("forward then inverse is the identity") {
  for (auto grid : {model::GridSpec::line(64, 10.0), model::GridSpec::square(16, 32, 3.0, 2.0)}) {
    fft::PeriodicFFT f(grid);
    const auto x = random_field(grid.size(), 1);
    std::vector<std::complex<double>> spec(f.modes());
    std::vector<double> y(grid.size());
    f.forward(x.data(), spec.data());
    f.inverse(spec.data(), y.data());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-13));
  }
}

TEST_CASE("spectral energy reproduces the sum of squares") {
  auto grid = model::GridSpec::square(16, 32, 1.0, 1.0);
  fft::PeriodicFFT f(grid);
  const auto x = random_field(grid.size(), 2);
  std::vector<std::complex<double>> spec(f.modes());
  f.forward(x.data(), spec.data());
  std::vector<double> one(f.modes(), 1.0);
  double direct = 0.0;
  for (double v : x) direct += v * v;
  CHECK(f.spectral_energy(spec.data(), one.data()) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("wavenumbers and weights") {
  auto grid = model::GridSpec::line(16, 2 * M_PI);
  fft::PeriodicFFT f(grid);
  REQUIRE(f.modes() == 9);
  CHECK(f.kx()[3] == doctest::Approx(3.0));
  CHECK(f.weights()[0] == 1.0);
  CHECK(f.weights()[2] == 2.0);
  CHECK(f.weights()[8] == 1.0);
  CHECK(f.nyquist(0)[8]);
  CHECK_FALSE(f.nyquist(0)[7]);
}

TEST_CASE("spectral gradient of a trigonometric field") {
  auto grid = model::GridSpec::square(32, 16, 4.0, 2.0);
  fft::PeriodicFFT f(grid);
  std::vector<double> u(grid.size()), gx(grid.size()), gy(grid.size());
  const double kx = 2 * M_PI * 3 / 4.0, ky = 2 * M_PI * 2 / 2.0;
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 32; ++i) u[j * 32 + i] = std::sin(kx * grid.center(0, i)) * std::cos(ky * grid.center(1, j));
  f.gradient(u.data(), 0, gx.data());
  f.gradient(u.data(), 1, gy.data());
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 32; ++i) {
      const double x = grid.center(0, i), y = grid.center(1, j);
      CHECK(gx[j * 32 + i] == doctest::Approx(kx * std::cos(kx * x) * std::cos(ky * y)).scale(1.0).epsilon(1e-12));
      CHECK(gy[j * 32 + i] == doctest::Approx(-ky * std::sin(kx * x) * std::sin(ky * y)).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gradient drops the Nyquist mode") {
  auto grid = model::GridSpec::line(16, 16.0);
  fft::PeriodicFFT f(grid);
  std::vector<double> u(16), g(16);
  for (int i = 0; i < 16; ++i) u[i] = (i % 2 ? -1.0 : 1.0);
  f.gradient(u.data(), 0, g.data());
  for (double x : g) CHECK(std::abs(x) < 1e-14);
}

TEST_CASE("Sobolev norm: s = 0 is L2 and a single mode scales by (1 + k^2)^{s/2}") {
  auto grid = model::GridSpec::line(64, 16.0);
  const auto x = random_field(64, 3);
  CHECK(diagnostics::sobolev_norm(x, 0, grid) ==
        doctest::Approx(diagnostics::lp_norm(x, grid, 2.0)).epsilon(1e-12));
  std::vector<double> m(64);
  const double k = 2 * M_PI * 5 / 16.0;
  for (int i = 0; i < 64; ++i) m[i] = std::cos(k * grid.center(0, i));
  for (int s : {1, 2, 3})
    CHECK(diagnostics::sobolev_norm(m, s, grid) ==
          doctest::Approx(std::pow(1 + k * k, s / 2.0) * diagnostics::lp_norm(m, grid, 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(diagnostics::sobolev_norm(m, -1, grid), DomainError);
}
