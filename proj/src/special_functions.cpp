#include "qtms/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtms::special {

namespace {

// Beyond this separation of a and b the Rician tail is below exp(-800).
constexpr double kSaturationGap = 40.0;
constexpr double kNegligible = 1e-18;

constexpr int kGaussPoints = 16;
constexpr double kPanelWidth = 0.5;

struct GaussLegendre {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Newton iteration on P_n for the nodes on [-1, 1].
GaussLegendre make_gauss_legendre() {
  GaussLegendre gl;
  constexpr int n = kGaussPoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.nodes[i] = x;
    gl.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre gl = make_gauss_legendre();
  return gl;
}

// integral_lo^hi x exp(-(x - centre)^2 / 2) I0e(scale * x) dx
double rician_tail_integral(double lo, double hi, double centre, double scale) {
  const auto& gl = gauss_legendre();
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / kPanelWidth)));
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    double panel = 0.0;
    for (int k = 0; k < kGaussPoints; ++k) {
      const double x = mid + 0.5 * width * gl.nodes[k];
      const double u = x - centre;
      panel += gl.weights[k] * x * std::exp(-0.5 * u * u) * detail::bessel_i0_scaled_large(scale * x);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace

double erfc(double x) { return std::erfc(x); }

namespace detail {

double bessel_i0_scaled_large(double z) {
  // exp(-z) I0(z) ~ (2 pi z)^(-1/2) sum_k ((2k-1)!!)^2 / (k! (8z)^k)
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * z);
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

double poisson_cdf(long long k, double mu) {
  if (k < 0) return 0.0;
  if (mu <= 0.0) return 1.0;
  const auto log_pmf = [mu](double j) { return j * std::log(mu) - mu - std::lgamma(j + 1.0); };

  if (static_cast<double>(k) < mu) {
    // Terms shrink towards j = 0.
    double term = std::exp(log_pmf(static_cast<double>(k)));
    double sum = term;
    for (long long j = k; j > 0 && term > 1e-17 * sum; --j) {
      term *= static_cast<double>(j) / mu;
      sum += term;
    }
    return std::min(sum, 1.0);
  }

  // Upper tail sum, terms shrink as j grows past mu.
  double term = std::exp(log_pmf(static_cast<double>(k + 1)));
  double tail = term;
  for (long long j = k + 1; term > 1e-17 * tail; ++j) {
    term *= mu / static_cast<double>(j + 1);
    tail += term;
  }
  return std::clamp(1.0 - tail, 0.0, 1.0);
}

double marcum_q1_series(double a, double b) {
  if (b == 0.0) return 1.0;
  const double lambda = 0.5 * a * a;
  const double mu = 0.5 * b * b;
  if (lambda == 0.0) return std::exp(-mu);

  const double log_lambda = std::log(lambda);
  const double log_mu = std::log(mu);
  const long long k0 = static_cast<long long>(std::floor(lambda));
  const double kd0 = static_cast<double>(k0);

  const double w0 = std::exp(kd0 * log_lambda - lambda - std::lgamma(kd0 + 1.0));
  const double c0 = poisson_cdf(k0, mu);
  const double lp0 = kd0 * log_mu - mu - std::lgamma(kd0 + 1.0);

  double sum = w0 * c0;

  // Upwards from the mode: C_{k+1} = C_k + p_{k+1}.
  {
    double w = w0;
    double c = c0;
    double lp = lp0;
    for (long long k = k0 + 1;; ++k) {
      const double kd = static_cast<double>(k);
      w *= lambda / kd;
      lp += log_mu - std::log(kd);
      c = std::min(1.0, c + std::exp(lp));
      sum += w * c;
      if (kd > lambda && w < kNegligible) break;
    }
  }

  // Downwards: C_{k-1} = C_k - p_k.
  {
    double w = w0;
    double c = c0;
    double lp = lp0;
    for (long long k = k0; k > 0; --k) {
      const double kd = static_cast<double>(k);
      c = std::max(0.0, c - std::exp(lp));
      w *= kd / lambda;
      lp += std::log(kd) - log_mu;
      sum += w * c;
      if (w < kNegligible || c == 0.0) break;
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

double marcum_q1_integral(double a, double b) {
  if (b >= a) {
    const double hi = std::max(a, b) + kSaturationGap;
    return std::clamp(rician_tail_integral(b, hi, a, a), 0.0, 1.0);
  }
  // Q1(a,b) + Q1(b,a) = 1 + exp(-(a-b)^2/2) I0e(ab)
  const double hi = a + kSaturationGap;
  const double swapped = rician_tail_integral(a, hi, b, b);
  const double d = a - b;
  const double q = 1.0 + std::exp(-0.5 * d * d) * bessel_i0_scaled_large(a * b) - swapped;
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace detail

double marcum_q1(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("marcum_q1: arguments must be >= 0");
  if (b == 0.0) return 1.0;
  if (std::isinf(b)) return 0.0;
  if (std::isinf(a)) return 1.0;
  if (a - b > kSaturationGap) return 1.0;
  if (b - a > kSaturationGap) return 0.0;
  if (a * b > detail::kAsymptoticProduct) return detail::marcum_q1_integral(a, b);
  return detail::marcum_q1_series(a, b);
}

}  // namespace qtms::special
