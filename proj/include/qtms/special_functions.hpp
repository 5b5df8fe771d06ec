#pragma once

namespace qtms::special {

// Complementary error function.
double erfc(double x);

// First-order Marcum Q function
//   Q1(a, b) = integral_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx
//            = P(X > b^2),  X ~ noncentral chi-square(2 dof, lambda = a^2).
// Absolute accuracy better than 1e-10 for finite a, b >= 0; the result is
// clamped to [0, 1]. Throws std::invalid_argument on negative or NaN input.
double marcum_q1(double a, double b);

namespace detail {

// Above this value of a*b the exponentially scaled integral representation is
// used; below it the Poisson-mixture series.
inline constexpr double kAsymptoticProduct = 700.0;

// Q1 = P(J <= K) with K ~ Poisson(a^2/2) and J ~ Poisson(b^2/2), summed
// outwards from the mode of K in log space.
double marcum_q1_series(double a, double b);

// Integral of the Rician density using the large-argument expansion of
// exp(-z) I0(z). Valid only when a*b is large (z >= a*b along the path).
double marcum_q1_integral(double a, double b);

// exp(-z) I0(z) via its asymptotic series; requires z >= 50.
double bessel_i0_scaled_large(double z);

// P(J <= k) for J ~ Poisson(mu).
double poisson_cdf(long long k, double mu);

}  // namespace detail

}  // namespace qtms::special
