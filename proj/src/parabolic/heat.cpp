#include "vasclab/parabolic/heat.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "vasclab/errors.hpp"
#include "vasclab/kernels/kernels.hpp"

namespace vasclab::parabolic {
namespace {

using cd = std::complex<double>;

// (1 - e^{-z}) / z
double phi1(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - 0.5 * z;
  return -std::expm1(-z) / z;
}

// (1 - e^{-z}(1 + z)) / z^2
double phi2(double z) {
  if (std::abs(z) < 0.1) {
    // sum_k (-1)^k (k + 1) z^k / (k + 2)!
    double sum = 0.0, zk = 1.0, fact = 2.0;
    for (int k = 0; k < 20; ++k) {
      sum += ((k % 2) ? -1.0 : 1.0) * (k + 1) * zk / fact;
      zk *= z;
      fact *= (k + 3);
    }
    return sum;
  }
  return (-std::expm1(-z) - z * std::exp(-z)) / (z * z);
}

void check_field(const std::vector<double>& f, const model::GridSpec& grid, const char* name) {
  if (f.size() != grid.size()) throw DomainError(std::string(name) + " size does not match grid");
}

// Product-trapezoid Duhamel sum over the path nodes listed in idx (increasing,
// idx.back() is the evaluation node).
std::vector<cd> duhamel_spectrum(const std::vector<cd>& phi0_hat, const std::vector<std::vector<cd>>& rho_hat,
                                 const std::vector<double>& times, const std::vector<std::size_t>& idx,
                                 const std::vector<double>& k2, const HeatKernelSpec& spec) {
  const std::size_t nm = phi0_hat.size();
  const double t = times[idx.back()];
  std::vector<cd> out(nm);
  for (std::size_t m = 0; m < nm; ++m) {
    const double lam = spec.D * k2[m] + spec.b;
    cd acc = std::exp(-lam * t) * phi0_hat[m];
    for (std::size_t q = 0; q + 1 < idx.size(); ++q) {
      const double tl = times[idx[q]], tr = times[idx[q + 1]];
      const double h = tr - tl;
      const double z = lam * h;
      const double e_s = std::exp(-lam * (t - tr));
      const double e0 = h * phi1(z);
      const double e1_over_h = h * phi2(z);
      acc += spec.a * e_s * (e1_over_h * rho_hat[idx[q]][m] + (e0 - e1_over_h) * rho_hat[idx[q + 1]][m]);
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace

HeatKernelSpec HeatKernelSpec::from_params(const model::ModelParams& params, int n) {
  return HeatKernelSpec{params.D, params.b, n, params.a};
}

std::vector<std::string> HeatKernelSpec::violations() const {
  std::vector<std::string> out;
  if (!(D > 0.0)) out.emplace_back("D must be > 0");
  if (!(b > 0.0)) out.emplace_back("b must be > 0");
  if (n != 1 && n != 2) out.emplace_back("heat kernel dimension must be 1 or 2");
  if (!std::isfinite(a)) out.emplace_back("a must be finite");
  return out;
}

void HeatKernelSpec::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

double heat_kernel(std::span<const double> x, double t, const HeatKernelSpec& spec) {
  if (!(t > 0.0)) throw DomainError("heat_kernel needs t > 0");
  if (static_cast<int>(x.size()) != spec.n) throw DomainError("heat_kernel point dimension mismatch");
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double s = 4.0 * spec.D * t;
  return std::exp(-r2 / s) / std::pow(std::numbers::pi * s, 0.5 * spec.n);
}

PhiIntegrator::PhiIntegrator(const HeatKernelSpec& spec, const model::GridSpec& grid)
    : spec_(spec), fft_(grid), decay_(fft_.modes()), gain_(fft_.modes()), phi_hat_(fft_.modes()),
      rho_hat_(fft_.modes()) {
  spec_.validate();
}

void PhiIntegrator::prepare(double dt) {
  if (dt == cached_dt_) return;
  const auto& k2 = fft_.k2();
  for (std::size_t m = 0; m < decay_.size(); ++m) {
    const double lam = spec_.D * k2[m] + spec_.b;
    decay_[m] = std::exp(-lam * dt);
    gain_[m] = spec_.a * dt * phi1(lam * dt);
  }
  cached_dt_ = dt;
}

void PhiIntegrator::step(std::vector<double>& phi, const std::vector<double>& rho, double dt) {
  if (!(dt >= 0.0)) throw DomainError("parabolic step needs dt >= 0");
  check_field(phi, fft_.grid(), "phi");
  check_field(rho, fft_.grid(), "rho");
  prepare(dt);
  fft_.forward(phi.data(), phi_hat_.data());
  fft_.forward(rho.data(), rho_hat_.data());
  kernels::active().spectral_relax(phi_hat_.size(), reinterpret_cast<double*>(phi_hat_.data()),
                                   reinterpret_cast<const double*>(rho_hat_.data()), decay_.data(), gain_.data());
  fft_.inverse(phi_hat_.data(), phi.data());
}

std::vector<double> spectral_phi_step(const std::vector<double>& phi, const std::vector<double>& rho,
                                      const HeatKernelSpec& spec, const model::GridSpec& grid, double dt) {
  PhiIntegrator integ(spec, grid);
  std::vector<double> out = phi;
  integ.step(out, rho, dt);
  return out;
}

DuhamelResult duhamel_phi(const std::vector<double>& phi0, const RhoPath& path, const HeatKernelSpec& spec,
                          const model::GridSpec& grid, double t, const DuhamelOptions& options) {
  spec.validate();
  check_field(phi0, grid, "phi0");
  const auto& times = path.times;
  if (times.size() != path.fields.size()) throw DomainError("rho path times and fields differ in length");
  if (times.empty() || times.front() != 0.0) throw DomainError("rho path must start at t = 0");
  if (t < 0.0) throw DomainError("duhamel_phi needs t >= 0");
  std::size_t last = times.size();
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, t)) last = i;
  if (last == times.size()) throw DomainError("duhamel_phi: t is not a node of the rho path");
  if (times.size() > 2) {
    const double h = times[1] - times[0];
    for (std::size_t i = 2; i < times.size(); ++i)
      if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * h) throw DomainError("rho path time grid must be uniform");
  }
  for (const auto& f : path.fields) check_field(f, grid, "rho path field");

  fft::PeriodicFFT fft(grid);
  const std::size_t nm = fft.modes();
  std::vector<cd> phi0_hat(nm);
  fft.forward(phi0.data(), phi0_hat.data());
  std::vector<std::vector<cd>> rho_hat(last + 1, std::vector<cd>(nm));
  for (std::size_t i = 0; i <= last; ++i) fft.forward(path.fields[i].data(), rho_hat[i].data());

  std::vector<std::size_t> fine(last + 1);
  for (std::size_t i = 0; i <= last; ++i) fine[i] = i;
  const std::vector<cd> fine_hat = duhamel_spectrum(phi0_hat, rho_hat, times, fine, fft.k2(), spec);

  DuhamelResult res;
  if (last >= 2) {
    std::vector<std::size_t> coarse;
    for (std::size_t i = 0; i <= last; i += 2) coarse.push_back(i);
    if (coarse.back() != last) coarse.push_back(last);
    const std::vector<cd> coarse_hat = duhamel_spectrum(phi0_hat, rho_hat, times, coarse, fft.k2(), spec);
    double diff = 0.0, ref = 0.0;
    for (std::size_t m = 0; m < nm; ++m) {
      const double w = fft.weights()[m];
      diff += w * std::norm(fine_hat[m] - coarse_hat[m]);
      ref += w * std::norm(fine_hat[m]);
    }
    // Second-order rule: halving the step divides the error by about 4.
    res.error_estimate = ref > 0.0 ? std::sqrt(diff / ref) / 3.0 : std::sqrt(diff) / 3.0;
  } else if (last == 1) {
    res.error_estimate = INFINITY;
  }
  if (res.error_estimate > options.tolerance)
    throw AccuracyError("duhamel_phi: estimated quadrature error " + std::to_string(res.error_estimate) +
                        " exceeds tolerance; refine the rho path time grid");
  res.phi.resize(grid.size());
  std::vector<cd> tmp = fine_hat;
  fft.inverse(tmp.data(), res.phi.data());
  return res;
}

}  // namespace vasclab::parabolic
