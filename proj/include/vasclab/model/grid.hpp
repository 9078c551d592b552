#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace vasclab::model {

/// Periodic cell-centred grid in one or two dimensions; storage is row-major
/// with x fastest, so cell (i, j) lives at j * cells[0] + i.
struct GridSpec {
  int dim = 1;
  std::array<int, 2> cells{256, 1};
  std::array<double, 2> lengths{256.0, 1.0};

  static GridSpec line(int n, double length);
  static GridSpec square(int nx, int ny, double lx, double ly);

  std::vector<std::string> violations() const;
  void validate() const;

  std::size_t size() const;
  int nx() const { return cells[0]; }
  int ny() const { return dim == 2 ? cells[1] : 1; }
  double spacing(int axis) const { return lengths[axis] / cells[axis]; }
  double cell_volume() const;
  double volume() const;
  /// Cell-centre coordinate along an axis.
  double center(int axis, int index) const { return (index + 0.5) * spacing(axis); }
};

/// Perturbation fields (rho, v, phi) around (rho_bar, 0, phi_bar) on a periodic grid.
struct FieldState {
  GridSpec grid;
  std::vector<double> rho;
  std::vector<std::vector<double>> v;  // one component field per axis
  std::vector<double> phi;
  double time = 0.0;

  static FieldState zeros(const GridSpec& grid);

  /// Shape, finiteness and rho + rho_bar > 0 checks; empty when valid.
  std::vector<std::string> violations(double rho_bar) const;
  void validate(double rho_bar) const;

  std::size_t size() const { return rho.size(); }
  int dim() const { return grid.dim; }
};

}  // namespace vasclab::model
