#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtms/radar_range.hpp"

using namespace qtms::radar;

namespace {

RangeParams ejpa() {
  RangeParams p;
  p.antenna_gain = std::pow(10.0, 0.64);
  p.effective_area = 8.8e-5;
  p.rcs = 1.0;
  p.p_signal = std::pow(10.0, 0.5) * 1e-3;
  p.p_noise = std::pow(10.0, -14.5) * 1e-3;
  p.snr_min = std::pow(10.0, -1.348);
  return p;
}

}  // namespace

TEST_CASE("wavelength and effective area") {
  CHECK(wavelength(kSpeedOfLight) == 1.0);
  CHECK(effective_area(1.0, 1.0) == doctest::Approx(1.0 / (4 * std::numbers::pi)).epsilon(1e-15));
  const double ae = effective_area(std::pow(10.0, 0.64), wavelength(5.31e9));
  CHECK(ae == doctest::Approx(0.0011072418688261598909).epsilon(1e-13));
  CHECK(std::abs(ae - 8.8e-5) > 1e-3);
}

TEST_CASE("maximum range") {
  const auto p = ejpa();
  CHECK(max_range(p) == doctest::Approx(482.52046316748710075).epsilon(1e-12));
  CHECK(std::abs(max_range(p) - 482.0) < 1.0);

  auto q = p;
  q.snr_min *= 16.0;
  CHECK(max_range(q) == doctest::Approx(max_range(p) / 2).epsilon(1e-12));
  for (double k : {2.0, 81.0, 1e-3}) {
    auto t = p;
    t.rcs *= k;
    CHECK(std::abs(max_range(t) / max_range(p) - std::pow(k, 0.25)) < 1e-9 * std::pow(k, 0.25));
    t = p;
    t.p_noise *= k;
    CHECK(std::abs(max_range(t) / max_range(p) - std::pow(k, -0.25)) < 1e-9 * std::pow(k, -0.25));
  }

  auto bad = p;
  bad.p_noise = 0.0;
  CHECK_THROWS_AS(max_range(bad), std::invalid_argument);
  bad = p;
  bad.rcs = -1.0;
  CHECK_THROWS_AS(max_range(bad), std::invalid_argument);
}

TEST_CASE("SNR at range") {
  const auto p = ejpa();
  const double db = 10 * std::log10(snr_at_range(p, 482.0));
  CHECK(std::abs(db - (-13.48)) < 0.02);
  CHECK(snr_at_range(p, 200.0) / snr_at_range(p, 400.0) == doctest::Approx(16.0).epsilon(1e-14));
  auto q = p;
  q.snr_min = snr_at_range(p, 333.0);
  CHECK(max_range(q) == doctest::Approx(333.0).epsilon(1e-13));
}
