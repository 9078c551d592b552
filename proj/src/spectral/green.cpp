#include "vasclab/spectral/green.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "vasclab/errors.hpp"

namespace vasclab::spectral {

CMat green_symbol(const SymbolSet& symbols, const Vec& xi, double t, ExpmInfo* info) {
  if (!(t >= 0.0)) throw DomainError("green_symbol needs t >= 0");
  const int m = symbols.state_dim();
  if (info) *info = ExpmInfo{};
  if (t == 0.0) return CMat::Identity(m, m);
  if (xi.squaredNorm() == 0.0) {
    CMat g = CMat::Zero(m, m);
    for (int k = 0; k < m; ++k) g(k, k) = std::exp(t * symbols.dissipation(k, k));
    return g;
  }
  return expm(t * symbols.generator(xi), info);
}

double branch_crossing_radius(const SymbolSet& symbols) {
  return symbols.alpha / (2.0 * symbols.sound_speed);
}

double default_xi_cutoff(const SymbolSet& symbols) { return 0.5 * branch_crossing_radius(symbols); }

CMat diffusive_projector(const SymbolSet& symbols, const Vec& xi, std::complex<double>* eigenvalue) {
  const int m = symbols.state_dim();
  if (xi.squaredNorm() == 0.0) {
    CMat p = CMat::Zero(m, m);
    p(0, 0) = 1.0;
    if (eigenvalue) *eigenvalue = 0.0;
    return p;
  }
  Eigen::ComplexEigenSolver<CMat> es(symbols.generator(xi));
  std::ostringstream where;
  where << " at |xi| = " << xi.norm();
  if (es.info() != Eigen::Success) throw ProjectorError("eigensolver failed" + where.str());
  const CVec& lam = es.eigenvalues();
  int k = 0;
  for (int j = 1; j < m; ++j)
    if (lam(j).real() > lam(k).real()) k = j;
  double gap = INFINITY;
  for (int j = 0; j < m; ++j)
    if (j != k) gap = std::min(gap, std::abs(lam(j) - lam(k)));
  const double scale = std::max(symbols.alpha, 1e-300);
  if (std::abs(lam(k).imag()) > 1e-8 * std::max(1.0, std::abs(lam(k))))
    throw ProjectorError("slow eigenvalue is not real" + where.str() + " (cutoff past branch crossing?)");
  if (gap < 1e-6 * scale) throw ProjectorError("slow eigenvalue is not separated" + where.str());
  const CMat& V = es.eigenvectors();
  const CMat Vinv = V.inverse();
  if (eigenvalue) *eigenvalue = lam(k);
  return V.col(k) * Vinv.row(k);
}

CMat GreenModeReport::exponential(std::size_t mode, double t) const {
  return green_symbol(symbols, modes.at(mode).xi, t);
}

CMat GreenModeReport::diffusive(std::size_t mode, double t) const {
  const ModeSplit& ms = modes.at(mode);
  return std::exp(ms.slow_eigenvalue * t) * ms.projector;
}

CMat GreenModeReport::remainder(std::size_t mode, double t) const {
  return exponential(mode, t) - diffusive(mode, t);
}

GreenModeReport decompose_green(const SymbolSet& symbols, double xi_cutoff, const FrequencyGrid& grid) {
  if (!(xi_cutoff > 0.0)) throw DomainError("xi_cutoff must be > 0");
  if (xi_cutoff >= branch_crossing_radius(symbols))
    throw ProjectorError("xi_cutoff " + std::to_string(xi_cutoff) + " reaches the branch crossing at " +
                         std::to_string(branch_crossing_radius(symbols)));
  const double r_min = 2.0 * std::numbers::pi / grid.domain_length;
  if (!(r_min < xi_cutoff)) throw DomainError("frequency grid lower end must be below xi_cutoff");
  if (grid.radial < 2) throw DomainError("frequency grid needs at least 2 radial nodes");

  GreenModeReport report;
  report.symbols = symbols;
  report.xi_cutoff = xi_cutoff;

  // Geometric radial nodes; the outermost sits on the cutoff.
  const int nr = grid.radial;
  const double h = std::log(xi_cutoff / r_min) / (nr - 1);
  std::vector<double> r(nr), wr(nr);
  for (int i = 0; i < nr; ++i) {
    r[i] = r_min * std::exp(h * i);
    const double end = (i == 0 || i == nr - 1) ? 0.5 : 1.0;
    wr[i] = end * h * r[i] * (symbols.dim == 2 ? r[i] : 1.0);
  }
  wr[0] += symbols.dim == 2 ? 0.5 * r_min * r_min : r_min;

  std::vector<Vec> dirs;
  double wdir = 1.0;
  if (symbols.dim == 1) {
    dirs = sphere_directions(1, 2);
  } else {
    if (grid.angular < 4 || grid.angular % 2 != 0) throw DomainError("angular sample count must be even and >= 4");
    dirs = sphere_directions(2, grid.angular);
    wdir = 2.0 * std::numbers::pi / grid.angular;
  }

  report.modes.reserve(dirs.size() * nr);
  for (const Vec& d : dirs) {
    for (int i = 0; i < nr; ++i) {
      ModeSplit ms;
      ms.xi = r[i] * d;
      ms.weight = wr[i] * wdir;
      ms.projector = diffusive_projector(symbols, ms.xi, &ms.slow_eigenvalue);
      report.modes.push_back(std::move(ms));
    }
  }
  return report;
}

}  // namespace vasclab::spectral
