#include "vasclab/spectral/block_decay.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "vasclab/errors.hpp"

namespace vasclab::spectral {
namespace {

using cd = std::complex<double>;

std::string block_name(int b) { return b == kConservedBlock ? "L0" : "L-"; }

std::string beta_label(const std::vector<int>& beta) {
  std::string s;
  for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? ":" : "") + std::to_string(beta[i]);
  return s;
}

std::vector<double> default_times(double alpha) {
  std::vector<double> t;
  const double lo = 200.0 / alpha, hi = 20000.0 / alpha;
  for (int k = 0; k < 24; ++k) t.push_back(lo * std::pow(hi / lo, k / 23.0));
  return t;
}

// (i xi)^beta
cd derivative_factor(const Vec& xi, const std::vector<int>& beta) {
  cd f = 1.0;
  for (std::size_t j = 0; j < beta.size(); ++j) f *= std::pow(cd(0.0, xi(static_cast<Eigen::Index>(j))), beta[j]);
  return f;
}

}  // namespace

double reference_block_exponent(int dim, double p, int beta_order, int out_block, int in_block) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  double e = 0.5 * dim * (1.0 - inv_p) + 0.5 * beta_order;
  if (out_block == kDissipatedBlock) e += 0.5;
  if (in_block == kDissipatedBlock) e += 0.5;
  return e;
}

std::vector<BlockDecay> measure_block_decay(const GreenModeReport& report, double p, const std::vector<int>& beta,
                                            const BlockDecayOptions& options) {
  const SymbolSet& sym = report.symbols;
  const int n = sym.dim;
  if (p != 2.0 && !std::isinf(p)) throw DomainError("measure_block_decay supports p = 2 or p = inf");
  if (static_cast<int>(beta.size()) != n) throw DomainError("beta needs one entry per axis");
  int beta_order = 0;
  for (int b : beta) {
    if (b < 0) throw DomainError("beta entries must be >= 0");
    beta_order += b;
  }
  const std::vector<double> times = options.times.empty() ? default_times(sym.alpha) : options.times;
  if (times.size() < 2 || !(times.back() / times.front() >= std::pow(10.0, 1.5)))
    throw DomainError("block decay times must span at least 1.5 decades");

  const double norm_const = std::pow(2.0 * std::numbers::pi, -n);
  const double sigma = options.gaussian_width;
  const double d_eff = sym.sound_speed * sym.sound_speed / sym.alpha;
  const std::size_t modes = report.modes.size();

  // Mode-independent pieces: Gaussian data transform and derivative factor.
  std::vector<cd> data(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    const Vec& xi = report.modes[m].xi;
    data[m] = std::exp(-0.5 * sigma * sigma * xi.squaredNorm()) * derivative_factor(xi, beta);
  }

  std::vector<BlockDecay> out;
  for (int a : {kConservedBlock, kDissipatedBlock}) {
    for (int b : {kConservedBlock, kDissipatedBlock}) {
      BlockDecay bd;
      bd.out_block = a;
      bd.in_block = b;
      bd.block_id = block_name(a) + "<-" + block_name(b);
      bd.p = p;
      bd.beta = beta;
      bd.times = times;
      const int a0 = block_offset(a), na = block_size(a, n);
      const int col = block_offset(b);  // first component of the input block
      for (double t : times) {
        // Transfer of the input component to the output block, per mode.
        std::vector<cd> f(modes * na);
        for (std::size_t m = 0; m < modes; ++m) {
          const ModeSplit& ms = report.modes[m];
          const cd damp = std::exp(ms.slow_eigenvalue * t) * data[m];
          for (int r = 0; r < na; ++r) f[m * na + r] = damp * ms.projector(a0 + r, col);
        }
        double value = 0.0;
        if (p == 2.0) {
          double e = 0.0;
          for (std::size_t m = 0; m < modes; ++m)
            for (int r = 0; r < na; ++r) e += report.modes[m].weight * std::norm(f[m * na + r]);
          value = std::sqrt(norm_const * e);
        } else {
          // Inverse transform at sample points scaled with the diffusion length.
          const int nx = options.x_samples;
          const double half = 4.0 * std::sqrt(d_eff * t);
          const int ny = n == 2 ? nx : 1;
          for (int iy = 0; iy < ny; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
              const double x = -half + 2.0 * half * ix / (nx - 1);
              const double y = n == 2 ? -half + 2.0 * half * iy / (ny - 1) : 0.0;
              double mag2 = 0.0;
              for (int r = 0; r < na; ++r) {
                double acc = 0.0;
                for (std::size_t m = 0; m < modes; ++m) {
                  const Vec& xi = report.modes[m].xi;
                  const double phase = xi(0) * x + (n == 2 ? xi(1) * y : 0.0);
                  acc += report.modes[m].weight * (f[m * na + r] * cd(std::cos(phase), std::sin(phase))).real();
                }
                mag2 += (norm_const * acc) * (norm_const * acc);
              }
              value = std::max(value, std::sqrt(mag2));
            }
          }
        }
        bd.norms.push_back(value);
      }
      diagnostics::FitOptions fo;
      fo.tolerance = options.tolerance;
      fo.min_r2 = options.min_r2;
      fo.min_samples = 12;
      bd.fit = diagnostics::fit_decay(bd.times, bd.norms, reference_block_exponent(n, p, beta_order, a, b),
                                      times.front(), times.back(), fo);
      if (bd.fit.r2 < options.min_r2)
        throw UnreliableFitError("block " + bd.block_id + " fit has R^2 = " + std::to_string(bd.fit.r2) +
                                     " (exponent " + std::to_string(bd.fit.exponent) + ")",
                                 bd.fit.r2);
      out.push_back(std::move(bd));
    }
  }
  return out;
}

void write_block_decay_csv(const std::filesystem::path& path, const std::vector<BlockDecay>& blocks) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << std::setprecision(17);
  out << "time,block_id,p,beta,norm\n";
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.times.size(); ++i)
      out << b.times[i] << ',' << b.block_id << ',' << (std::isinf(b.p) ? "inf" : "2") << ',' << beta_label(b.beta)
          << ',' << b.norms[i] << '\n';
}

}  // namespace vasclab::spectral
