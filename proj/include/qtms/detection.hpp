#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qtms::detection {

// Where the (1 - rho^2) factor enters the ROC arguments.
//  - as_printed:  Q1(rho sqrt(2N) / (1 - rho^2), sqrt(-2 ln Pfa) / (1 - rho^2))
//  - sqrt_denominator: both arguments divided by sqrt(1 - rho^2) instead
enum class RocVariant { as_printed, sqrt_denominator };

std::string_view to_string(RocVariant v);
// Accepts "as_printed" and "sqrt_denominator"; throws std::invalid_argument otherwise.
RocVariant parse_roc_variant(std::string_view s);

struct DetectionParams {
  double rho = 0.0;            // [0, 1)
  double rho0 = 1.0;           // (0, 1]
  long long n_channels = 1;    // >= 1
  double p_fa = 1e-3;          // (0, 1]
};

struct RocPoint {
  double p_fa;
  double p_d;
};

struct RocCurve {
  std::vector<RocPoint> points;
};

// erfc(sqrt(snr / 8)) / 2, the mean of false-alarm and miss probabilities.
double error_probability(double snr_m);

// rho0 / sqrt(1 + (1/snr)^4). Throws std::invalid_argument for snr <= 0 or rho0 outside (0, 1].
double effective_rho(double rho0, double snr_linear);

// Inverse of effective_rho: snr = ((rho0/rho)^2 - 1)^(-1/4) for 0 < rho < rho0.
double snr_from_rho(double rho0, double rho);

// Pair of Marcum Q arguments (a, b) for the parameters.
std::pair<double, double> roc_arguments(const DetectionParams& d,
                                        RocVariant variant = RocVariant::as_printed);

// P_D for the given false-alarm probability. The upper end p_fa = 1 is
// accepted so grids may close at the corner (1, 1).
double detection_probability(const DetectionParams& d, RocVariant variant = RocVariant::as_printed);

// Throws std::invalid_argument on an empty grid or one that is not strictly
// increasing inside (0, 1].
RocCurve roc_curve(double rho, long long n_channels, std::span<const double> p_fa_grid,
                   RocVariant variant = RocVariant::as_printed);

// Smallest N >= 1 with P_D >= p_d_target at the given p_fa, found by doubling
// then bisection over the (monotone in N) detection probability. Returns 0 if
// no N up to max_channels reaches the target.
long long min_channels(double rho, double p_fa, double p_d_target,
                       RocVariant variant = RocVariant::as_printed,
                       long long max_channels = (1LL << 60));

}  // namespace qtms::detection
