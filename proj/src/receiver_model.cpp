#include "qtms/receiver_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

namespace qtms::receiver {

namespace {

constexpr double kGainRelTol = 1e-9;
constexpr double kCorrSlack = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_product(double total, double d, double a, const char* name) {
  require(std::abs(total - d * a) <= kGainRelTol * std::abs(total),
          std::string(name) + " must equal detection gain x amplification gain");
}

}  // namespace

void validate(const GainSet& g) {
  const std::pair<double, const char*> all[] = {
      {g.g_s_total, "g_s_total"}, {g.g_i_total, "g_i_total"}, {g.g_d_s, "g_d_s"},
      {g.g_a_s, "g_a_s"},         {g.g_d_i, "g_d_i"},         {g.g_a_i, "g_a_i"}};
  for (const auto& [v, name] : all)
    require(std::isfinite(v) && v >= 1.0, std::string("gain ") + name + " must be >= 1 (linear)");
  check_product(g.g_s_total, g.g_d_s, g.g_a_s, "g_s_total");
  check_product(g.g_i_total, g.g_d_i, g.g_a_i, "g_i_total");
}

void validate(const NoiseSet& n) {
  const std::pair<double, const char*> all[] = {
      {n.n_a_s, "n_a_s"}, {n.n_a_i, "n_a_i"}, {n.n_d_s, "n_d_s"},    {n.n_d_i, "n_d_i"},
      {n.n_e, "n_e"},     {n.n_v, "n_v"},     {n.n_add_i, "n_add_i"}};
  for (const auto& [v, name] : all)
    require(std::isfinite(v) && v >= 0.0, std::string("noise occupancy ") + name + " must be >= 0");
}

void validate(const IlluminationParams& i) {
  require(std::isfinite(i.n_s) && i.n_s >= 0.0, "n_s must be >= 0");
  require(std::isfinite(i.n_i) && i.n_i >= 0.0, "n_i must be >= 0");
  require(i.eta >= 0.0 && i.eta <= 1.0, "eta must lie in [0, 1]");
  require(i.m_modes >= 1, "m_modes must be >= 1");
  require(std::isfinite(i.cross_corr) && i.cross_corr >= 0.0, "cross_corr must be >= 0");
  require(i.cross_corr <= std::sqrt(i.n_s * (i.n_s + 1.0)) + kCorrSlack,
          "cross_corr exceeds sqrt(n_s (n_s + 1))");
}

double signal_path_h1(const GainSet& g, const NoiseSet& n, const IlluminationParams& i) {
  const double gs = g.g_s_total;
  const double ga = g.g_a_s;
  return gs * i.eta * (i.n_s + 1.0) + gs * i.eta * n.n_a_s * (ga - 1.0) / ga +
         gs * (n.n_e + 1.0) * (1.0 - i.eta) / ga + (g.g_d_s - 1.0) * n.n_d_s;
}

double signal_path_h0(const GainSet& g, const NoiseSet& n) {
  const double gd = g.g_d_s;
  return gd * (n.n_e + 1.0) + n.n_d_s * gd * (1.0 - 1.0 / gd);
}

std::pair<double, double> mean_counts_h1(const GainSet& g, const NoiseSet& n,
                                         const IlluminationParams& i) {
  const double gi = g.g_i_total;
  const double common =
      n.n_v + 0.5 * signal_path_h1(g, n, i) + 0.5 * gi * i.n_i + 0.5 * gi * (n.n_add_i + 1.0);
  const double cross = 0.5 * std::sqrt(g.g_s_total * gi * i.eta) * i.cross_corr;
  const double plus = common + cross;
  const double minus = common - cross;
  if (minus < 0.0 || common < 0.0)
    throw std::domain_error("mean_counts_h1: negative mean count, inconsistent gain/noise inputs");
  return {plus, minus};
}

std::pair<double, double> mean_counts_h0(const GainSet& g, const NoiseSet& n, double n_i) {
  const double gi = g.g_i_total;
  const double mean =
      n.n_v + 0.5 * signal_path_h0(g, n) + 0.5 * gi * n_i + 0.5 * gi * (n.n_add_i + 1.0);
  return {mean, mean};
}

double intensity(const GainSet& g, const NoiseSet& n, const IlluminationParams& i, Hypothesis h,
                 const ReceiverOptions& opts) {
  if (h == Hypothesis::h1) return 2.0 * n.n_v + signal_path_h1(g, n, i);

  // Idler terms sit inside the bracket here, and the added-noise term carries
  // no G_I unless the consistency fix is requested.
  const double gi = g.g_i_total;
  const double add_gain = opts.h0_intensity_gain_fix ? gi : 1.0;
  return 2.0 * n.n_v + signal_path_h0(g, n) + 0.5 * gi * i.n_i + 0.5 * add_gain * (n.n_add_i + 1.0);
}

double count_variance(double mean_plus, double mean_minus, double mode_intensity, double n_i) {
  const double diff = mode_intensity - n_i;
  const double v = mean_plus * (mean_plus + 1.0) + mean_minus * (mean_minus + 1.0) - 0.5 * diff * diff;
  if (v < 0.0)
    throw std::domain_error("count_variance: negative variance (" + std::to_string(v) +
                            "), parameter regime outside the model");
  return v;
}

ReceiverMoments moments(const GainSet& g, const NoiseSet& n, const IlluminationParams& i,
                        const ReceiverOptions& opts) {
  validate(g);
  validate(n);
  validate(i);

  ReceiverMoments m;
  std::tie(m.mean_plus_h1, m.mean_minus_h1) = mean_counts_h1(g, n, i);
  std::tie(m.mean_plus_h0, m.mean_minus_h0) = mean_counts_h0(g, n, i.n_i);
  m.intensity_h1 = intensity(g, n, i, Hypothesis::h1, opts);
  m.intensity_h0 = intensity(g, n, i, Hypothesis::h0, opts);
  m.var_h1 = count_variance(m.mean_plus_h1, m.mean_minus_h1, m.intensity_h1, i.n_i);
  m.var_h0 = count_variance(m.mean_plus_h0, m.mean_minus_h0, m.intensity_h0, i.n_i);
  return m;
}

double snr_quantum(const ReceiverMoments& m, long long m_modes) {
  const double d1 = std::abs(m.mean_plus_h1 - m.mean_minus_h1);
  const double d0 = std::abs(m.mean_plus_h0 - m.mean_minus_h0);
  const double denom = std::sqrt(m.var_h0) + std::sqrt(m.var_h1);
  if (!(denom > 0.0)) throw std::domain_error("snr_quantum: zero denominator");
  const double num = d1 - d0;
  const double per_mode = 4.0 * (num * num) / (denom * denom);
  return static_cast<double>(m_modes) * per_mode;
}

double snr_quantum(const GainSet& g, const NoiseSet& n, const IlluminationParams& i,
                   const ReceiverOptions& opts) {
  return snr_quantum(moments(g, n, i, opts), i.m_modes);
}

}  // namespace qtms::receiver
