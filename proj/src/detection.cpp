#include "qtms/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qtms/special_functions.hpp"

namespace qtms::detection {

std::string_view to_string(RocVariant v) {
  return v == RocVariant::as_printed ? "as_printed" : "sqrt_denominator";
}

RocVariant parse_roc_variant(std::string_view s) {
  if (s == "as_printed") return RocVariant::as_printed;
  if (s == "sqrt_denominator") return RocVariant::sqrt_denominator;
  throw std::invalid_argument("unknown roc_variant '" + std::string(s) + "'");
}

double error_probability(double snr_m) {
  if (!(snr_m >= 0.0)) throw std::invalid_argument("error_probability: snr must be >= 0");
  return 0.5 * special::erfc(std::sqrt(snr_m / 8.0));
}

double effective_rho(double rho0, double snr_linear) {
  if (!(rho0 > 0.0 && rho0 <= 1.0)) throw std::invalid_argument("effective_rho: rho0 must lie in (0, 1]");
  if (!(snr_linear > 0.0)) throw std::invalid_argument("effective_rho: snr must be > 0");
  const double inv = 1.0 / snr_linear;
  const double inv4 = (inv * inv) * (inv * inv);
  return rho0 / std::sqrt(1.0 + inv4);
}

double snr_from_rho(double rho0, double rho) {
  if (!(rho0 > 0.0 && rho0 <= 1.0)) throw std::invalid_argument("snr_from_rho: rho0 must lie in (0, 1]");
  if (!(rho > 0.0 && rho < rho0)) throw std::invalid_argument("snr_from_rho: rho must lie in (0, rho0)");
  const double ratio = rho0 / rho;
  return std::pow(ratio * ratio - 1.0, -0.25);
}

std::pair<double, double> roc_arguments(const DetectionParams& d, RocVariant variant) {
  if (!(d.rho >= 0.0 && d.rho < 1.0)) throw std::invalid_argument("detection: rho must lie in [0, 1)");
  if (d.n_channels < 1) throw std::invalid_argument("detection: n_channels must be >= 1");
  if (!(d.p_fa > 0.0 && d.p_fa <= 1.0)) throw std::invalid_argument("detection: p_fa must lie in (0, 1]");

  const double one_minus = 1.0 - d.rho * d.rho;
  const double denom = variant == RocVariant::as_printed ? one_minus : std::sqrt(one_minus);
  const double a = d.rho * std::sqrt(2.0 * static_cast<double>(d.n_channels)) / denom;
  // -2 ln(1) is exactly 0; guard against -0.0.
  const double b = std::sqrt(std::max(0.0, -2.0 * std::log(d.p_fa))) / denom;
  return {a, b};
}

double detection_probability(const DetectionParams& d, RocVariant variant) {
  const auto [a, b] = roc_arguments(d, variant);
  return special::marcum_q1(a, b);
}

RocCurve roc_curve(double rho, long long n_channels, std::span<const double> p_fa_grid,
                   RocVariant variant) {
  if (p_fa_grid.empty()) throw std::invalid_argument("roc_curve: empty p_fa grid");
  for (std::size_t i = 0; i < p_fa_grid.size(); ++i) {
    const double p = p_fa_grid[i];
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("roc_curve: p_fa grid must lie in (0, 1]");
    if (i > 0 && !(p > p_fa_grid[i - 1]))
      throw std::invalid_argument("roc_curve: p_fa grid must be strictly increasing");
  }

  RocCurve curve;
  curve.points.reserve(p_fa_grid.size());
  for (double p : p_fa_grid) {
    const DetectionParams d{.rho = rho, .rho0 = 1.0, .n_channels = n_channels, .p_fa = p};
    curve.points.push_back({p, detection_probability(d, variant)});
  }
  return curve;
}

long long min_channels(double rho, double p_fa, double p_d_target, RocVariant variant,
                       long long max_channels) {
  if (!(p_d_target > 0.0 && p_d_target <= 1.0))
    throw std::invalid_argument("min_channels: target must lie in (0, 1]");
  const auto reaches = [&](long long n) {
    const DetectionParams d{.rho = rho, .rho0 = 1.0, .n_channels = n, .p_fa = p_fa};
    return detection_probability(d, variant) >= p_d_target;
  };

  long long hi = 1;
  while (!reaches(hi)) {
    if (hi >= max_channels) return 0;
    hi = std::min(max_channels, hi * 2);
  }
  long long lo = hi / 2;  // reaches(lo) is false unless lo == 0
  if (lo == 0) return hi;
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (reaches(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace qtms::detection
