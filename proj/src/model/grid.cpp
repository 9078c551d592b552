#include "vasclab/model/grid.hpp"

#include <cmath>

#include "vasclab/errors.hpp"

namespace vasclab::model {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec GridSpec::line(int n, double length) {
  GridSpec g;
  g.dim = 1;
  g.cells = {n, 1};
  g.lengths = {length, 1.0};
  return g;
}

GridSpec GridSpec::square(int nx, int ny, double lx, double ly) {
  GridSpec g;
  g.dim = 2;
  g.cells = {nx, ny};
  g.lengths = {lx, ly};
  return g;
}

std::vector<std::string> GridSpec::violations() const {
  std::vector<std::string> out;
  if (dim != 1 && dim != 2) {
    out.emplace_back("grid dim must be 1 or 2");
    return out;
  }
  for (int axis = 0; axis < dim; ++axis) {
    const std::string name = "grid axis " + std::to_string(axis);
    if (cells[axis] < 16) out.push_back(name + " needs at least 16 cells");
    if (!is_power_of_two(cells[axis])) out.push_back(name + " cell count must be a power of two");
    if (!(lengths[axis] > 0.0) || !std::isfinite(lengths[axis]))
      out.push_back(name + " length must be > 0");
  }
  return out;
}

void GridSpec::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
}

double GridSpec::cell_volume() const {
  double v = spacing(0);
  if (dim == 2) v *= spacing(1);
  return v;
}

double GridSpec::volume() const { return dim == 2 ? lengths[0] * lengths[1] : lengths[0]; }

FieldState FieldState::zeros(const GridSpec& grid) {
  grid.validate();
  FieldState s;
  s.grid = grid;
  s.rho.assign(grid.size(), 0.0);
  s.v.assign(static_cast<std::size_t>(grid.dim), std::vector<double>(grid.size(), 0.0));
  s.phi.assign(grid.size(), 0.0);
  return s;
}

std::vector<std::string> FieldState::violations(double rho_bar) const {
  std::vector<std::string> out = grid.violations();
  if (!out.empty()) return out;
  const std::size_t n = grid.size();
  if (rho.size() != n) out.emplace_back("rho size does not match grid");
  if (phi.size() != n) out.emplace_back("phi size does not match grid");
  if (v.size() != static_cast<std::size_t>(grid.dim)) out.emplace_back("velocity component count does not match grid dim");
  for (const auto& c : v)
    if (c.size() != n) out.emplace_back("velocity component size does not match grid");
  if (!out.empty()) return out;
  bool finite = std::isfinite(time);
  bool positive = true;
  for (std::size_t i = 0; i < n; ++i) {
    finite = finite && std::isfinite(rho[i]) && std::isfinite(phi[i]);
    for (const auto& c : v) finite = finite && std::isfinite(c[i]);
    positive = positive && (rho[i] + rho_bar > 0.0);
  }
  if (!finite) out.emplace_back("fields contain non-finite values");
  if (!positive) out.emplace_back("total density rho + rho_bar must be > 0 everywhere");
  return out;
}

void FieldState::validate(double rho_bar) const {
  auto v = violations(rho_bar);
  if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace vasclab::model
