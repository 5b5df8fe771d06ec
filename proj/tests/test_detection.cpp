#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qtms/detection.hpp"
#include "qtms/special_functions.hpp"

using namespace qtms::detection;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(std::exp(std::log(lo) + k * (std::log(hi) - std::log(lo)) / (n - 1)));
  g.back() = hi;
  return g;
}

}  // namespace

TEST_CASE("error probability") {
  CHECK(error_probability(0.0) == 0.5);
  CHECK(error_probability(8.0) == doctest::Approx(0.078649603525142565329).epsilon(1e-14));
  CHECK(error_probability(1000.0) < 1e-12);
  double prev = 0.5;
  for (double s = 0.01; s < 500.0; s *= 1.3) {
    const double p = error_probability(s);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("effective correlation") {
  CHECK(std::abs(effective_rho(1.0, 1e6) - 1.0) < 1e-12);
  CHECK(effective_rho(1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(effective_rho(1.0, 0.044668) == doctest::Approx(0.0019952262525623155170).epsilon(1e-13));
  CHECK_THROWS_AS(effective_rho(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(effective_rho(1.5, 1.0), std::invalid_argument);

  for (double rho : {0.01, 0.3, 0.7, 0.95})
    CHECK(effective_rho(0.97, snr_from_rho(0.97, rho)) == doctest::Approx(rho).epsilon(1e-12));
  CHECK_THROWS_AS(snr_from_rho(0.9, 0.9), std::invalid_argument);
}

TEST_CASE("detection probability") {
  SUBCASE("chance line") {
    for (double pfa : log_grid(1e-7, 1.0, 70))
      CHECK(std::abs(detection_probability({0.0, 1.0, 150, pfa}) - pfa) < 1e-9);
  }
  SUBCASE("p_fa towards one") {
    CHECK(detection_probability({0.3, 1.0, 10, 1.0 - 1e-12}) > 1.0 - 1e-5);
    CHECK(detection_probability({0.3, 1.0, 10, 1.0}) == 1.0);
  }
  SUBCASE("strong correlation") {
    const double pd = detection_probability({0.9, 1.0, 150, 1e-3});
    const auto [a, b] = roc_arguments({0.9, 1.0, 150, 1e-3});
    CHECK(pd > 0.999);
    CHECK(pd == doctest::Approx(qtms::special::marcum_q1(a, b)));
  }
  SUBCASE("arguments") {
    const double rho = 0.4;
    const auto [a, b] = roc_arguments({rho, 1.0, 8, 0.01});
    CHECK(a == doctest::Approx(rho * 4.0 / (1 - rho * rho)));
    CHECK(b == doctest::Approx(std::sqrt(-2 * std::log(0.01)) / (1 - rho * rho)));
    const auto [a2, b2] = roc_arguments({rho, 1.0, 8, 0.01}, RocVariant::sqrt_denominator);
    CHECK(a2 == doctest::Approx(rho * 4.0 / std::sqrt(1 - rho * rho)));
    CHECK(b2 == doctest::Approx(std::sqrt(-2 * std::log(0.01)) / std::sqrt(1 - rho * rho)));
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(detection_probability({1.0, 1.0, 1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(detection_probability({0.1, 1.0, 0, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(detection_probability({0.1, 1.0, 1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(detection_probability({0.1, 1.0, 1, 1.5}), std::invalid_argument);
  }
}

TEST_CASE("detection probability invariants for many channels") {
  const auto grid = log_grid(1e-7, 1.0, 40);
  for (long long n : {20LL, 50LL, 150LL, 1000LL}) {
    for (double pfa : grid) {
      double prev = 0.0;
      for (double rho = 0.0; rho < 0.95; rho += 0.05) {
        const double pd = detection_probability({rho, 1.0, n, pfa});
        INFO("N = " << n << ", p_fa = " << pfa << ", rho = " << rho);
        CHECK(pd >= pfa - 1e-9);
        CHECK(pd >= prev - 1e-12);
        prev = pd;
      }
    }
  }
}

TEST_CASE("printed ROC drops below the chance line for a single channel") {
  // The (1 - rho^2) scaling of the threshold outgrows the signal term at N = 1.
  CHECK(detection_probability({0.5, 1.0, 1, 0.5}) == doctest::Approx(0.4379).epsilon(1e-3));
  CHECK(detection_probability({0.5, 1.0, 1, 0.5}) < 0.5);
}

TEST_CASE("roc curve") {
  const auto grid = log_grid(1e-7, 1.0, 70);
  const auto diag = roc_curve(0.0, 150, grid);
  for (const auto& p : diag.points) CHECK(std::abs(p.p_d - p.p_fa) < 1e-9);

  for (double rho : {0.01, 0.1, 0.4}) {
    const auto c = roc_curve(rho, 150, grid);
    REQUIRE(c.points.size() == grid.size());
    double prev = 0.0;
    for (const auto& p : c.points) {
      CHECK(p.p_d >= 0.0);
      CHECK(p.p_d <= 1.0);
      CHECK(p.p_d >= prev);
      prev = p.p_d;
    }
  }

  const auto hi = roc_curve(0.0177, 150, grid);
  const auto lo = roc_curve(6.3e-7, 150, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(hi.points[k].p_d >= lo.points[k].p_d);

  CHECK_THROWS_AS(roc_curve(0.1, 10, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(roc_curve(0.1, 10, std::vector<double>{0.5, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(roc_curve(0.1, 10, std::vector<double>{0.0, 0.1}), std::invalid_argument);
}

TEST_CASE("minimum channels") {
  const double rho = 0.05;
  const long long n = min_channels(rho, 1e-3, 0.99);
  REQUIRE(n > 1);
  CHECK(detection_probability({rho, 1.0, n, 1e-3}) >= 0.99);
  CHECK(detection_probability({rho, 1.0, n - 1, 1e-3}) < 0.99);
  CHECK(min_channels(0.0, 1e-3, 0.99, RocVariant::as_printed, 1 << 20) == 0);
  CHECK(min_channels(0.9, 1e-3, 0.5) >= 1);
  CHECK(min_channels(0.05, 1e-3, 0.99) < min_channels(0.01, 1e-3, 0.99));
}

TEST_CASE("variant names") {
  CHECK(parse_roc_variant(to_string(RocVariant::as_printed)) == RocVariant::as_printed);
  CHECK(parse_roc_variant(to_string(RocVariant::sqrt_denominator)) == RocVariant::sqrt_denominator);
  CHECK_THROWS_AS(parse_roc_variant("other"), std::invalid_argument);
}
