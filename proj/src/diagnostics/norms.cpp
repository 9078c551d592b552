#include "vasclab/diagnostics/norms.hpp"

#include <algorithm>
#include <cmath>

#include "vasclab/errors.hpp"

namespace vasclab::diagnostics {
namespace {

void check_size(std::size_t n, const model::GridSpec& grid) {
  if (n != grid.size()) throw InputError("field size does not match grid");
}

double power_norm(const std::vector<double>& magnitude, const model::GridSpec& grid, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : magnitude) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(p >= 1.0)) throw DomainError("L^p norm needs p >= 1");
  double sum = 0.0;
  if (p == 1.0) {
    for (double x : magnitude) sum += std::abs(x);
    return sum * grid.cell_volume();
  }
  if (p == 2.0) {
    for (double x : magnitude) sum += x * x;
    return std::sqrt(sum * grid.cell_volume());
  }
  for (double x : magnitude) sum += std::pow(std::abs(x), p);
  return std::pow(sum * grid.cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const std::vector<double>& field, const model::GridSpec& grid, double p) {
  check_size(field.size(), grid);
  return power_norm(field, grid, p);
}

double lp_norm(const FieldGroup& fields, const model::GridSpec& grid, double p) {
  if (fields.size() == 1) return lp_norm(*fields[0], grid, p);
  std::vector<double> mag(grid.size(), 0.0);
  for (const auto* f : fields) {
    check_size(f->size(), grid);
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += (*f)[i] * (*f)[i];
  }
  for (double& m : mag) m = std::sqrt(m);
  return power_norm(mag, grid, p);
}

double sobolev_norm(const std::vector<double>& field, int s, const model::GridSpec& grid) {
  NormEvaluator ev(grid);
  return ev.sobolev(field, s);
}

double sobolev_norm(const FieldGroup& fields, int s, const model::GridSpec& grid) {
  NormEvaluator ev(grid);
  return ev.sobolev(fields, s);
}

NormEvaluator::NormEvaluator(const model::GridSpec& grid)
    : fft_(grid), spectrum_(fft_.modes()), multiplier_(fft_.modes()) {}

double NormEvaluator::weighted_energy(const std::vector<double>& field, int s, int gradient_axis) {
  check_size(field.size(), grid());
  if (s < 0) throw DomainError("Sobolev order must be >= 0");
  fft_.forward(field.data(), spectrum_.data());
  const auto& k2 = fft_.k2();
  for (std::size_t m = 0; m < multiplier_.size(); ++m) {
    double w = std::pow(1.0 + k2[m], s);
    if (gradient_axis >= 0) {
      const double k = gradient_axis == 0 ? fft_.kx()[m] : fft_.ky()[m];
      w = fft_.nyquist(gradient_axis)[m] ? 0.0 : w * k * k;
    }
    multiplier_[m] = w;
  }
  return fft_.spectral_energy(spectrum_.data(), multiplier_.data()) * grid().cell_volume();
}

double NormEvaluator::sobolev(const std::vector<double>& field, int s) {
  return std::sqrt(weighted_energy(field, s, -1));
}

double NormEvaluator::sobolev(const FieldGroup& fields, int s) {
  double e = 0.0;
  for (const auto* f : fields) e += weighted_energy(*f, s, -1);
  return std::sqrt(e);
}

double NormEvaluator::gradient_sobolev(const FieldGroup& fields, int s) {
  double e = 0.0;
  for (const auto* f : fields)
    for (int axis = 0; axis < grid().dim; ++axis) e += weighted_energy(*f, s, axis);
  return std::sqrt(e);
}

void NormEvaluator::gradient(const std::vector<double>& field, int axis, std::vector<double>& out) {
  check_size(field.size(), grid());
  out.resize(field.size());
  fft_.gradient(field.data(), axis, out.data());
}

}  // namespace vasclab::diagnostics
