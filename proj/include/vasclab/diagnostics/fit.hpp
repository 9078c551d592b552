#pragma once

#include <string>
#include <vector>

namespace vasclab::diagnostics {

class NormSeries;

enum class FitMode {
  two_sided,    // pass iff |exponent - reference| <= tolerance
  lower_bound,  // pass iff exponent >= reference - tolerance (decay at least this fast)
};

struct FitOptions {
  double tolerance = 0.1;
  double min_r2 = 0.98;
  FitMode mode = FitMode::two_sided;
  std::size_t min_samples = 12;
};

/// Power-law fit value ~ C t^{-exponent} by least squares in log-log.
struct DecayFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double r2 = 0.0;
  double t_min = 0.0;  // window actually used (first / last sample inside)
  double t_max = 0.0;
  std::size_t samples = 0;
  double reference = 0.0;
  double tolerance = 0.0;
  double min_r2 = 0.0;
  FitMode mode = FitMode::two_sided;
  bool pass = false;
};

/// Fits over samples with window_lo <= t <= window_hi. Throws FitError when
/// fewer than min_samples fall inside or any value there is not > 0.
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& values, double reference,
                   double window_lo, double window_hi, const FitOptions& options = {});

/// Series form: key "<field>:<norm>", window defaulting to [0.1 T, 0.8 T].
DecayFit fit_decay(const NormSeries& series, const std::string& field_key, const std::string& norm_key,
                   double reference, const FitOptions& options = {}, double window_lo = -1.0,
                   double window_hi = -1.0);

std::string fit_mode_name(FitMode mode);

}  // namespace vasclab::diagnostics
