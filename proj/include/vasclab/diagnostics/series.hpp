#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vasclab/diagnostics/fit.hpp"

namespace vasclab::diagnostics {

/// Time series of named norms. Keys read "<field>:<norm>", for example
/// "U:L2", "phi:L1", "W:H2" (Sobolev order in the norm name) or "grad_phi:Linf".
class NormSeries {
 public:
  /// The first sample fixes the key set; later samples must supply the same
  /// keys at strictly increasing times. Values must be >= 0.
  void append(double time, const std::map<std::string, double>& values);

  const std::vector<double>& times() const { return times_; }
  /// Throws InputError for an unknown key.
  const std::vector<double>& get(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::vector<std::string> keys() const;
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }

  /// Long format: time,field,norm_kind,value.
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::vector<double> times_;
  std::map<std::string, std::vector<double>> values_;
};

/// Trapezoidal integral of samples over their (possibly nonuniform) times.
double trapezoid(const std::vector<double>& t, const std::vector<double>& f);

/// N_s(t_i) for every sample:
///   N_s^2 = sup_{tau <= t} |W|_{H^s}^2 + int_0^t |W_2|_{H^s}^2 + int_0^t |grad W|_{H^{s-1}}^2,
/// read from keys "W:Hs", "W2:Hs" and "gradW:H(s-1)".
std::vector<double> functional_Ns(const NormSeries& series, int s);

/// sup_{tau <= t} max{1, tau^a} |w(tau)| for the norm stored under key.
std::vector<double> weighted_sup(const NormSeries& series, const std::string& key, double a);

/// S^a_w(t) with the H^s norm of w.
inline std::vector<double> functional_S(const NormSeries& series, const std::string& field, int s, double a) {
  return weighted_sup(series, field + ":H" + std::to_string(s), a);
}

/// R^a_w(t) with the L^inf norm of w.
inline std::vector<double> functional_R(const NormSeries& series, const std::string& field, double a) {
  return weighted_sup(series, field + ":Linf", a);
}

struct FitRecord {
  std::string field;
  std::string norm;
  DecayFit fit;
};

/// field,norm,exponent,reference,r2,verdict
void write_fit_report(const std::filesystem::path& path, const std::vector<FitRecord>& fits);

}  // namespace vasclab::diagnostics
