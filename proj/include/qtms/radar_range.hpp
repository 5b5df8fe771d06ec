#pragma once

namespace qtms::radar {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct RangeParams {
  double antenna_gain = 1.0;    // linear
  double effective_area = 1.0;  // m^2
  double rcs = 1.0;             // m^2
  double p_signal = 1.0;        // W
  double p_noise = 1.0;         // W
  double snr_min = 1.0;         // linear
};

double wavelength(double freq_hz);

// A_e = G lambda^2 / (4 pi)
double effective_area(double gain_linear, double wavelength_m);

// R = [G A_e sigma P_s / ((4 pi)^2 P_n SNR_min)]^(1/4), in metres.
// Throws std::invalid_argument unless every field is positive and finite.
double max_range(const RangeParams& p);

// Minimum SNR (linear) at which max_range equals range_m; p.snr_min is ignored.
double snr_at_range(const RangeParams& p, double range_m);

}  // namespace qtms::radar
