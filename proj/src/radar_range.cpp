#include "qtms/radar_range.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qtms::radar {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0))
    throw std::invalid_argument(std::string("radar range: ") + name + " must be positive");
}

// G A_e sigma P_s / ((4 pi)^2 P_n)
double link_budget(const RangeParams& p) {
  require_positive(p.antenna_gain, "antenna_gain");
  require_positive(p.effective_area, "effective_area");
  require_positive(p.rcs, "rcs");
  require_positive(p.p_signal, "p_signal");
  require_positive(p.p_noise, "p_noise");
  return p.antenna_gain * p.effective_area * p.rcs * p.p_signal / (kFourPi * kFourPi * p.p_noise);
}

}  // namespace

double wavelength(double freq_hz) {
  require_positive(freq_hz, "frequency");
  return kSpeedOfLight / freq_hz;
}

double effective_area(double gain_linear, double wavelength_m) {
  require_positive(gain_linear, "gain");
  require_positive(wavelength_m, "wavelength");
  return gain_linear * wavelength_m * wavelength_m / kFourPi;
}

double max_range(const RangeParams& p) {
  require_positive(p.snr_min, "snr_min");
  return std::pow(link_budget(p) / p.snr_min, 0.25);
}

double snr_at_range(const RangeParams& p, double range_m) {
  require_positive(range_m, "range");
  const double r2 = range_m * range_m;
  return link_budget(p) / (r2 * r2);
}

}  // namespace qtms::radar
