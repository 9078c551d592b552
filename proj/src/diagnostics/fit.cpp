#include "vasclab/diagnostics/fit.hpp"

#include <algorithm>
#include <cmath>

#include "vasclab/diagnostics/series.hpp"
#include "vasclab/errors.hpp"

namespace vasclab::diagnostics {

std::string fit_mode_name(FitMode mode) {
  return mode == FitMode::two_sided ? "two_sided" : "lower_bound";
}

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& values, double reference,
                   double window_lo, double window_hi, const FitOptions& options) {
  if (times.size() != values.size()) throw InputError("fit_decay: times and values differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window_lo || times[i] > window_hi) continue;
    if (!(times[i] > 0.0)) throw FitError("fit_decay: window contains t <= 0");
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw FitError("fit_decay: non-positive value " + std::to_string(values[i]) + " at t = " +
                     std::to_string(times[i]));
    x.push_back(std::log(times[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < options.min_samples)
    throw FitError("fit_decay: " + std::to_string(x.size()) + " samples in window, need " +
                   std::to_string(options.min_samples));

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit_decay: window has a single distinct time");
  const double slope = sxy / sxx;

  DecayFit f;
  f.exponent = -slope;
  f.log_prefactor = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.log_prefactor + slope * x[i]);
    ss_res += r * r;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  f.t_min = std::exp(x.front());
  f.t_max = std::exp(x.back());
  f.samples = x.size();
  f.reference = reference;
  f.tolerance = options.tolerance;
  f.min_r2 = options.min_r2;
  f.mode = options.mode;
  const bool exponent_ok = options.mode == FitMode::two_sided
                               ? std::abs(f.exponent - reference) <= options.tolerance
                               : f.exponent >= reference - options.tolerance;
  f.pass = exponent_ok && f.r2 >= options.min_r2;
  return f;
}

DecayFit fit_decay(const NormSeries& series, const std::string& field_key, const std::string& norm_key,
                   double reference, const FitOptions& options, double window_lo, double window_hi) {
  const auto& t = series.times();
  if (t.empty()) throw InputError("fit_decay: empty series");
  const double T = t.back();
  if (window_lo < 0.0) window_lo = 0.1 * T;
  if (window_hi < 0.0) window_hi = 0.8 * T;
  return fit_decay(t, series.get(field_key + ":" + norm_key), reference, window_lo, window_hi, options);
}

}  // namespace vasclab::diagnostics
