#include "vasclab/diagnostics/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "vasclab/errors.hpp"

namespace vasclab::diagnostics {

void NormSeries::append(double time, const std::map<std::string, double>& values) {
  if (!times_.empty() && !(time > times_.back()))
    throw InputError("NormSeries times must be strictly increasing");
  if (!times_.empty()) {
    if (values.size() != values_.size()) throw InputError("NormSeries sample has a different key set");
    for (const auto& [k, _] : values)
      if (!values_.count(k)) throw InputError("NormSeries sample has unknown key " + k);
  }
  for (const auto& [k, v] : values)
    if (!(v >= 0.0)) throw InputError("NormSeries value for " + k + " is negative or NaN");
  times_.push_back(time);
  for (const auto& [k, v] : values) values_[k].push_back(v);
}

const std::vector<double>& NormSeries::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw InputError("NormSeries has no component " + key);
  return it->second;
}

std::vector<std::string> NormSeries::keys() const {
  std::vector<std::string> k;
  for (const auto& [name, _] : values_) k.push_back(name);
  return k;
}

void NormSeries::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << std::setprecision(17);
  out << "time,field,norm_kind,value\n";
  for (std::size_t i = 0; i < times_.size(); ++i) {
    for (const auto& [key, vals] : values_) {
      const auto colon = key.find(':');
      out << times_[i] << ',' << key.substr(0, colon) << ',' << key.substr(colon + 1) << ',' << vals[i] << '\n';
    }
  }
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size()) throw InputError("trapezoid: size mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

std::vector<double> functional_Ns(const NormSeries& series, int s) {
  if (s < 1) throw DomainError("functional_Ns needs s >= 1");
  const std::string hs = "H" + std::to_string(s);
  std::vector<std::string> missing;
  for (const std::string& k : {"W:" + hs, "W2:" + hs, "gradW:H" + std::to_string(s - 1)})
    if (!series.has(k)) missing.push_back(k);
  if (!missing.empty()) {
    std::string msg = "functional_Ns: missing components";
    for (const auto& m : missing) msg += " " + m;
    throw InputError(msg);
  }
  const auto& t = series.times();
  const auto& w = series.get("W:" + hs);
  const auto& w2 = series.get("W2:" + hs);
  const auto& gw = series.get("gradW:H" + std::to_string(s - 1));
  std::vector<double> out(t.size());
  double sup = 0.0, integral = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sup = std::max(sup, w[i] * w[i]);
    if (i > 0) {
      const double dt = t[i] - t[i - 1];
      integral += 0.5 * dt * (w2[i] * w2[i] + w2[i - 1] * w2[i - 1]);
      integral += 0.5 * dt * (gw[i] * gw[i] + gw[i - 1] * gw[i - 1]);
    }
    out[i] = std::sqrt(sup + integral);
  }
  return out;
}

std::vector<double> weighted_sup(const NormSeries& series, const std::string& key, double a) {
  const auto& t = series.times();
  const auto& v = series.get(key);
  std::vector<double> out(t.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sup = std::max(sup, std::max(1.0, std::pow(t[i], a)) * v[i]);
    out[i] = sup;
  }
  return out;
}

void write_fit_report(const std::filesystem::path& path, const std::vector<FitRecord>& fits) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << std::setprecision(10);
  out << "field,norm,exponent,reference,r2,verdict\n";
  for (const auto& f : fits)
    out << f.field << ',' << f.norm << ',' << f.fit.exponent << ',' << f.fit.reference << ',' << f.fit.r2 << ','
        << (f.fit.pass ? "pass" : "fail") << '\n';
}

}  // namespace vasclab::diagnostics
