#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtms/quantum_gaussian.hpp"

using namespace qtms::gaussian;

namespace {

// mpmath, 30 digits
constexpr double kCosh05 = 1.1276259652063807852;
constexpr double kSinh05 = 0.52109530549374736162;
constexpr double kCosh2 = 3.7621956910836314596;
constexpr double kSinh1 = 1.1752011936438014569;
constexpr double kTanh1 = 0.76159415595576488812;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("squeeze params validate and wrap") {
  CHECK_THROWS_AS(SqueezeParams(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(SqueezeParams(NAN), std::invalid_argument);
  CHECK_THROWS_AS(SqueezeParams(0.1, INFINITY), std::invalid_argument);
  CHECK(SqueezeParams(0.2, -std::numbers::pi / 2).phi() == doctest::Approx(1.5 * std::numbers::pi));
  CHECK(SqueezeParams(0.2, 2 * std::numbers::pi).phi() == doctest::Approx(0.0));
}

TEST_CASE("bogoliubov matrix") {
  SUBCASE("no squeezing is the identity") {
    CHECK(bogoliubov_matrix(SqueezeParams(0.0, 1.3)).m.isApprox(Eigen::Matrix4cd::Identity(), 1e-15));
  }
  SUBCASE("r = 0.5, phi = 0") {
    const auto m = bogoliubov_matrix(SqueezeParams(0.5)).m;
    for (int k = 0; k < 4; ++k) {
      CHECK(m(k, k).real() == doctest::Approx(kCosh05).epsilon(1e-15));
      CHECK(std::abs(m(k, 3 - k) - std::complex<double>(kSinh05, 0.0)) < 1e-15);
    }
  }
  SUBCASE("r and -r are inverses") {
    const auto prod = (detail::bogoliubov_matrix(0.5, 0.0).m * detail::bogoliubov_matrix(-0.5, 0.0).m).eval();
    CHECK((prod - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("symplectic factors") {
  CHECK(max_abs(symplectic_factors(0.0).l - Eigen::Matrix4d::Identity()) < 1e-15);
  for (double r : {0.0, 0.3, 1.0, 2.5}) {
    const auto f = symplectic_factors(r);
    CHECK(max_abs(f.h * f.h.transpose() - Eigen::Matrix4d::Identity()) < 1e-14);
  }
  const auto l = symplectic_factors(0.3).l;
  const auto j = symplectic_form(Ordering::block);
  CHECK(max_abs(l * j * l.transpose() - j) < 1e-12);
}

TEST_CASE("covariance via symplectic product") {
  CHECK(max_abs(covariance_via_symplectic(0.0).c - Eigen::Matrix4d::Identity()) < 1e-15);

  const auto sym = covariance_via_symplectic(0.5);
  const auto closed = covariance_closed_form(SqueezeParams(0.5));
  CHECK(max_abs(reorder(sym, closed.ordering).c - closed.c) < 1e-12);

  const auto c1 = covariance_via_symplectic(1.0).c;
  for (int k = 0; k < 4; ++k) CHECK(c1(k, k) == doctest::Approx(kCosh2).epsilon(1e-14));

  SUBCASE("the other product order gives the phi = pi state") {
    const auto flipped = covariance_via_symplectic(0.7, ProductOrder::transpose_last);
    CHECK(flipped.ordering == Ordering::block);
    const auto pi_state = covariance_closed_form(SqueezeParams(0.7, std::numbers::pi));
    CHECK(max_abs(reorder(flipped, kCanonical).c - pi_state.c) < 1e-12);
  }

  SUBCASE("identity holds across r") {
    for (int k = 0; k <= 30; ++k) {
      const double r = 0.1 * k;
      const auto a = reorder(covariance_via_symplectic(r), kCanonical).c;
      const auto b = covariance_closed_form(SqueezeParams(r)).c;
      CHECK(max_abs(a - b) < 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
      CHECK(describe_violations({a, kCanonical}) == "");
    }
  }
}

TEST_CASE("closed form covariance") {
  CHECK(max_abs(covariance_closed_form(SqueezeParams(0.0, 2.0)).c - Eigen::Matrix4d::Identity()) < 1e-15);

  const auto c0 = covariance_closed_form(SqueezeParams(0.4)).c;
  CHECK(c0(0, 2) == doctest::Approx(std::sinh(0.8)));
  CHECK(c0(1, 3) == doctest::Approx(-std::sinh(0.8)));
  CHECK(c0(0, 3) == 0.0);
  CHECK(c0(1, 2) == 0.0);

  const auto c = covariance_closed_form(SqueezeParams(0.5, std::numbers::pi / 2)).c;
  CHECK(std::abs(c(0, 2)) < 1e-15);
  CHECK(std::abs(c(1, 3)) < 1e-15);
  CHECK(c(0, 3) == doctest::Approx(kSinh1).epsilon(1e-14));
  CHECK(c(1, 2) == doctest::Approx(kSinh1).epsilon(1e-14));

  SUBCASE("every phi gives a valid pure state") {
    for (double phi : {0.0, 0.4, 1.7, 3.1, 5.9})
      for (double r : {0.0, 0.2, 1.1, 2.9}) CHECK(describe_violations(covariance_closed_form(SqueezeParams(r, phi))) == "");
  }
}

TEST_CASE("pearson rho") {
  CHECK(pearson_rho(0.0) == 0.0);
  CHECK(pearson_rho(20.0) > 1.0 - 1e-12);
  CHECK(pearson_rho(0.5) == doctest::Approx(kTanh1).epsilon(1e-15));
  CHECK_THROWS_AS(pearson_rho(-1.0), std::invalid_argument);
  for (double r = 0.0; r <= 3.0; r += 0.25) {
    const auto c = covariance_closed_form(SqueezeParams(r)).c;
    CHECK(std::abs(pearson_rho(r) - c(0, 2) / c(0, 0)) < 1e-14);
  }
}

TEST_CASE("reorder") {
  const QuadCovariance id{Eigen::Matrix4d::Identity(), Ordering::interleaved};
  CHECK(reorder(id, Ordering::block).c == Eigen::Matrix4d::Identity());

  Eigen::Matrix4d m;
  m << 1, 2, 3, 4, 2, 5, 6, 7, 3, 6, 8, 9, 4, 7, 9, 10;
  const QuadCovariance c{m, Ordering::interleaved};
  const auto round = reorder(reorder(c, Ordering::block), Ordering::interleaved);
  CHECK(round.c == m);
  CHECK(round.ordering == Ordering::interleaved);
  CHECK(reorder(c, Ordering::interleaved).c == m);

  const double r = 0.6;
  const auto block = reorder(covariance_closed_form(SqueezeParams(r)), Ordering::block).c;
  // (x1, x2, p1, p2): correlations sit in the x block and the p block.
  CHECK(block(0, 1) == doctest::Approx(std::sinh(2 * r)));
  CHECK(block(2, 3) == doctest::Approx(-std::sinh(2 * r)));
  CHECK(block(0, 2) == 0.0);
}

TEST_CASE("ordering tags") {
  CHECK(parse_ordering(to_string(Ordering::interleaved)) == Ordering::interleaved);
  CHECK(parse_ordering(to_string(Ordering::block)) == Ordering::block);
  CHECK_THROWS_AS(parse_ordering("x1_p1"), std::invalid_argument);
}

TEST_CASE("describe violations") {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 1) = 0.1;
  CHECK(describe_violations({m, kCanonical}) != "");
  CHECK(describe_violations({2.0 * Eigen::Matrix4d::Identity(), kCanonical}) != "");
  CHECK(describe_violations({2.0 * Eigen::Matrix4d::Identity(), kCanonical}, false) == "");
  CHECK(describe_violations({-Eigen::Matrix4d::Identity(), kCanonical}, false) != "");
}
