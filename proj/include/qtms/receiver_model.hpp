#pragma once

#include <utility>

namespace qtms::receiver {

// All gains are linear power ratios (>= 1). dB conversion lives in scenarios.
struct GainSet {
  double g_s_total = 1.0;  // G_s  = G_s^D * G_s^A
  double g_i_total = 1.0;  // G_I  = G_I^D * G_I^A
  double g_d_s = 1.0;
  double g_a_s = 1.0;
  double g_d_i = 1.0;
  double g_a_i = 1.0;
};

// Mean photon occupancies of the noise modes.
struct NoiseSet {
  double n_a_s = 0.0;    // signal amplification noise
  double n_a_i = 0.0;    // idler amplification noise
  double n_d_s = 0.0;    // signal detection noise
  double n_d_i = 0.0;    // idler detection noise
  double n_e = 0.0;      // environment (room temperature)
  double n_add_i = 0.0;  // idler channel added noise
  double n_v = 0.0;      // vacuum-mode contribution
};

struct IlluminationParams {
  double n_s = 0.0;         // signal photons per mode
  double n_i = 0.0;         // idler photons per mode
  double eta = 1.0;         // round-trip transmissivity in [0, 1]
  long long m_modes = 1;    // M = B * tau
  double cross_corr = 0.0;  // <a_s a_I>, bounded by sqrt(n_s (n_s + 1))
};

enum class Hypothesis { h0, h1 };

struct ReceiverOptions {
  // Multiply the bare (n_add_i + 1)/2 term of the target-absent intensity by G_I,
  // matching the mean-count expressions.
  bool h0_intensity_gain_fix = false;
};

struct ReceiverMoments {
  double mean_plus_h1 = 0.0;
  double mean_minus_h1 = 0.0;
  double mean_plus_h0 = 0.0;
  double mean_minus_h0 = 0.0;
  double intensity_h1 = 0.0;
  double intensity_h0 = 0.0;
  double var_h1 = 0.0;
  double var_h0 = 0.0;
};

// Each validator throws std::invalid_argument naming the offending field.
void validate(const GainSet& g);
void validate(const NoiseSet& n);
void validate(const IlluminationParams& i);

// Signal-path bracket shared by the target-present means and intensity.
double signal_path_h1(const GainSet& g, const NoiseSet& n, const IlluminationParams& i);
// Signal-path bracket of the target-absent means and intensity.
double signal_path_h0(const GainSet& g, const NoiseSet& n);

// (mean_plus, mean_minus) with target present. Differ by sqrt(G_s G_I eta) * cross_corr.
std::pair<double, double> mean_counts_h1(const GainSet& g, const NoiseSet& n,
                                         const IlluminationParams& i);

// (mean_plus, mean_minus) with target absent; the two are always equal.
std::pair<double, double> mean_counts_h0(const GainSet& g, const NoiseSet& n, double n_i);

// Returned-signal mode intensity <u^dag u> under the given hypothesis.
double intensity(const GainSet& g, const NoiseSet& n, const IlluminationParams& i, Hypothesis h,
                 const ReceiverOptions& opts = {});

// Count variance sum_{+-} <N>(<N> + 1) - (intensity - n_i)^2 / 2.
// Throws std::domain_error when the result is negative; it is never clamped.
double count_variance(double mean_plus, double mean_minus, double mode_intensity, double n_i);

ReceiverMoments moments(const GainSet& g, const NoiseSet& n, const IlluminationParams& i,
                        const ReceiverOptions& opts = {});

// Quantum SNR (linear):
//   4M (|dN_H1| - |dN_H0|)^2 / (sqrt(var_H0) + sqrt(var_H1))^2
// Throws std::domain_error on a zero denominator.
double snr_quantum(const GainSet& g, const NoiseSet& n, const IlluminationParams& i,
                   const ReceiverOptions& opts = {});
double snr_quantum(const ReceiverMoments& m, long long m_modes);

}  // namespace qtms::receiver
