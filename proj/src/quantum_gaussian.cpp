#include "qtms/quantum_gaussian.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qtms::gaussian {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double kSymmetryTol = 1e-12;
constexpr double kDeterminantRelTol = 1e-9;

// Position of each interleaved quadrature in block order:
// X_s -> x1 (0), P_s -> p1 (2), X_i -> x2 (1), P_i -> p2 (3).
constexpr std::array<int, 4> kInterleavedToBlock = {0, 2, 1, 3};

Eigen::Matrix4d permutation(Ordering from, Ordering to) {
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  if (from == to) return Eigen::Matrix4d::Identity();
  for (int i = 0; i < 4; ++i) {
    // Row index is in the target layout, column index in the source layout.
    if (from == Ordering::block)
      p(i, kInterleavedToBlock[i]) = 1.0;
    else
      p(kInterleavedToBlock[i], i) = 1.0;
  }
  return p;
}

Eigen::Matrix4d transform_matrix_h() {
  Eigen::Matrix4d h;
  // clang-format off
  h << 1, 0, -1,  0,
       1, 0,  1,  0,
       0, 1,  0, -1,
       0, 1,  0,  1;
  // clang-format on
  return h / std::numbers::sqrt2;
}

}  // namespace

SqueezeParams::SqueezeParams(double r, double phi) : r_(r), phi_(phi) {
  if (!std::isfinite(r) || !std::isfinite(phi))
    throw std::invalid_argument("SqueezeParams: non-finite input");
  if (r < 0.0) throw std::invalid_argument("SqueezeParams: squeezing amplitude r must be >= 0");
  phi_ = std::fmod(phi, kTwoPi);
  if (phi_ < 0.0) phi_ += kTwoPi;
  if (phi_ >= kTwoPi) phi_ = 0.0;
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::interleaved:
      return "XS_PS_XI_PI";
    case Ordering::block:
      return "X1_X2_P1_P2";
  }
  return "?";
}

Ordering parse_ordering(std::string_view tag) {
  if (tag == "XS_PS_XI_PI") return Ordering::interleaved;
  if (tag == "X1_X2_P1_P2") return Ordering::block;
  throw std::invalid_argument("unknown quadrature ordering tag '" + std::string(tag) + "'");
}

namespace detail {

BogoliubovMatrix bogoliubov_matrix(double r, double phi) {
  using cd = std::complex<double>;
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const cd up = std::polar(sh, phi);
  const cd down = std::polar(sh, -phi);

  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = ch;
  m(0, 3) = down;
  m(1, 1) = ch;
  m(1, 2) = up;
  m(2, 1) = down;
  m(2, 2) = ch;
  m(3, 0) = up;
  m(3, 3) = ch;
  return {m};
}

}  // namespace detail

BogoliubovMatrix bogoliubov_matrix(const SqueezeParams& p) {
  return detail::bogoliubov_matrix(p.r(), p.phi());
}

SymplecticFactors symplectic_factors(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("symplectic_factors: r must be finite");
  SymplecticFactors f;
  f.h = transform_matrix_h();
  f.d << std::exp(-r), std::exp(r), std::exp(r), std::exp(-r);
  f.l = f.h * f.d.asDiagonal() * f.h.transpose();
  return f;
}

QuadCovariance covariance_via_symplectic(double r, ProductOrder order) {
  if (!std::isfinite(r)) throw std::invalid_argument("covariance_via_symplectic: r must be finite");
  const Eigen::Matrix4d h = transform_matrix_h();
  Eigen::Vector4d d2;
  d2 << std::exp(-2 * r), std::exp(2 * r), std::exp(2 * r), std::exp(-2 * r);

  // The rows of H are the normal modes written in interleaved coordinates
  // (x1 - x2, x1 + x2, p1 - p2, p1 + p2) when the product is H^T D H.
  if (order == ProductOrder::transpose_first) {
    Eigen::Matrix4d c = h.transpose() * d2.asDiagonal() * h;
    return {0.5 * (c + c.transpose()), Ordering::interleaved};
  }
  Eigen::Matrix4d c = h * d2.asDiagonal() * h.transpose();
  return {0.5 * (c + c.transpose()), Ordering::block};
}

QuadCovariance covariance_closed_form(const SqueezeParams& p) {
  const double ch = std::cosh(2 * p.r());
  const double sh = std::sinh(2 * p.r());
  const double cp = std::cos(p.phi());
  const double sp = std::sin(p.phi());

  Eigen::Matrix4d c;
  // clang-format off
  c << ch,      0.0,      sh * cp,  sh * sp,
       0.0,     ch,       sh * sp, -sh * cp,
       sh * cp, sh * sp,  ch,       0.0,
       sh * sp, -sh * cp, 0.0,      ch;
  // clang-format on
  return {c, Ordering::interleaved};
}

double pearson_rho(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("pearson_rho: r must be >= 0");
  return std::tanh(2 * r);
}

QuadCovariance reorder(const QuadCovariance& c, Ordering target) {
  const Eigen::Matrix4d p = permutation(c.ordering, target);
  return {p * c.c * p.transpose(), target};
}

Eigen::Matrix4d symplectic_form(Ordering o) {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  if (o == Ordering::block) {
    j.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
    j.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d::Identity();
  } else {
    j(0, 1) = 1.0;
    j(1, 0) = -1.0;
    j(2, 3) = 1.0;
    j(3, 2) = -1.0;
  }
  return j;
}

std::string describe_violations(const QuadCovariance& c, bool pure_state) {
  std::ostringstream out;
  const double asym = (c.c - c.c.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) out << "not symmetric (max |c - c^T| = " << asym << "); ";

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(0.5 * (c.c + c.c.transpose()));
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
    out << "not positive definite; ";

  if (pure_state) {
    // Product of eigenvalues: the plain LU determinant loses ~cosh^4(2r) ulps to cancellation.
    const double det = eig.eigenvalues().prod();
    if (std::abs(det - 1.0) > kDeterminantRelTol) out << "determinant " << det << " != 1; ";
  }
  return out.str();
}

}  // namespace qtms::gaussian
