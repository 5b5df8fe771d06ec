#include <doctest.h>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qtms/special_functions.hpp"


using qtms::special::marcum_q1;
namespace detail = qtms::special::detail;

namespace {

// Q1 as the upper tail of a noncentral chi-square with 2 dof.
double boost_q1(double a, double b) {
  if (b == 0.0) return 1.0;
  if (a == 0.0) return std::exp(-0.5 * b * b);
  boost::math::non_central_chi_squared_distribution<double> d(2.0, a * a);
  return boost::math::cdf(boost::math::complement(d, b * b));
}

// Direct integral of the Rician density with a scaled Bessel to avoid overflow.
double integral_q1(double a, double b) {
  const auto f = [a](double x) {
    const long double z = static_cast<long double>(a) * x;
    return static_cast<double>(x * std::exp(-0.5L * (x - a) * (x - a)) * std::exp(-z) *
                               boost::math::cyl_bessel_i(0, z));
  };
  const double upper = std::max(a, b) + 40.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, b, upper, 15, 1e-14);
}

double quadrature_erfc(double x) {
  const auto f = [](double t) { return std::exp(-t * t); };
  return 2.0 / std::sqrt(std::numbers::pi) *
         boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, x, x + 12.0, 20, 1e-15);
}

}  // namespace

TEST_CASE("erfc against quadrature") {
  for (double x = 0.0; x <= 10.0; x += 0.125) {
    const double ref = quadrature_erfc(x);
    CHECK(std::abs(qtms::special::erfc(x) - ref) <= 1e-12 * ref);
    CHECK(std::abs(qtms::special::erfc(x) + std::erf(x) - 1.0) < 1e-15);
  }
  CHECK(qtms::special::erfc(1.0) / 2 == doctest::Approx(0.078649603525142565329).epsilon(1e-15));
}

TEST_CASE("marcum q1 frozen values") {
  // mpmath, 30 digits
  const struct {
    double a, b, q;
  } cases[] = {
      {1, 1, 0.73287980379682021825},    {2, 3, 0.21436208816264945697},  {5, 4, 0.86704979507792559765},
      {10, 12, 0.025329474297941417811}, {30, 29, 0.84541235280958420952}, {0.5, 0.1, 0.99559715387918155395},
      {26.5, 26.5, 0.50752855375109041233}, {40, 41, 0.16166144659064432098}, {3, 0.5, 0.99830023270553937367},
  };
  for (const auto& c : cases) {
    INFO("a = " << c.a << ", b = " << c.b);
    CHECK(std::abs(marcum_q1(c.a, c.b) - c.q) < 1e-12);
  }
}

TEST_CASE("marcum q1 closed forms") {
  for (double b = 0.0; b <= 10.0; b += 0.05) CHECK(std::abs(marcum_q1(0.0, b) - std::exp(-0.5 * b * b)) < 1e-10);
  for (double a : {0.0, 0.3, 2.0, 17.0, 300.0}) CHECK(marcum_q1(a, 0.0) == 1.0);
  CHECK(marcum_q1(0.0, 0.0) == 1.0);
}

TEST_CASE("marcum q1 against independent oracles") {
  for (double a : {0.0, 0.2, 1.0, 3.0, 7.5, 15.0, 24.0}) {
    for (double b : {0.1, 0.7, 2.0, 5.0, 9.0, 16.0, 25.0}) {
      INFO("a = " << a << ", b = " << b);
      const double q = marcum_q1(a, b);
      CHECK(std::abs(q - boost_q1(a, b)) < 1e-10);
      CHECK(std::abs(q - integral_q1(a, b)) < 1e-10);
    }
  }
}

TEST_CASE("marcum q1 large arguments") {
  for (double a : {30.0, 60.0, 200.0}) {
    for (double d : {-6.0, -1.5, 0.0, 0.5, 3.0, 8.0}) {
      const double b = a + d;
      INFO("a = " << a << ", b = " << b);
      // long double I0 overflows beyond z ~ 11000; Boost's distribution covers the rest.
      const double ref = a * (std::max(a, b) + 40.0) < 11000.0 ? integral_q1(a, b) : boost_q1(a, b);
      CHECK(std::abs(marcum_q1(a, b) - ref) < 1e-10);
    }
  }
  CHECK(marcum_q1(100.0, 200.0) == 0.0);
  CHECK(marcum_q1(200.0, 100.0) == 1.0);
}

TEST_CASE("marcum q1 regime switch is continuous") {
  const double a = std::sqrt(detail::kAsymptoticProduct);
  for (double ratio : {0.9, 1.0, 1.1}) {
    const double b = detail::kAsymptoticProduct / a * ratio;
    CHECK(std::abs(detail::marcum_q1_series(a, b) - detail::marcum_q1_integral(a, b)) < 1e-11);
  }
  const double edge = detail::kAsymptoticProduct / a;
  const double below = marcum_q1(a, std::nextafter(edge, 0.0));
  const double above = marcum_q1(a, std::nextafter(edge, 100.0));
  CHECK(std::abs(below - above) < 1e-12);
}

TEST_CASE("marcum q1 properties") {
  for (double a : {0.0, 0.5, 2.0, 8.0, 35.0}) {
    double prev = 1.0;
    for (double b = 0.0; b <= 50.0; b += 0.25) {
      const double q = marcum_q1(a, b);
      CHECK(q >= 0.0);
      CHECK(q <= prev + 1e-12);
      prev = q;
    }
  }
  for (double b : {0.5, 3.0, 12.0}) {
    double prev = 0.0;
    for (double a = 0.0; a <= 30.0; a += 0.5) {
      const double q = marcum_q1(a, b);
      CHECK(q >= prev - 1e-12);
      prev = q;
    }
  }
}

TEST_CASE("marcum q1 rejects bad input") {
  CHECK_THROWS_AS(marcum_q1(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(marcum_q1(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(marcum_q1(std::numeric_limits<double>::quiet_NaN(), 1.0), std::invalid_argument);
}

TEST_CASE("helpers") {
  CHECK(detail::poisson_cdf(0, 2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(detail::poisson_cdf(1, 2.0) == doctest::Approx(3.0 * std::exp(-2.0)));
  const double z = 120.0;
  CHECK(detail::bessel_i0_scaled_large(z) ==
        doctest::Approx(std::exp(-z) * boost::math::cyl_bessel_i(0, z)).epsilon(1e-13));
}
