#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace qtms::gaussian {

// Squeezing xi = r * exp(i phi) of a two-mode squeezed vacuum.
class SqueezeParams {
 public:
  // Throws std::invalid_argument for r < 0 or non-finite input. phi is wrapped into [0, 2pi).
  SqueezeParams(double r, double phi = 0.0);

  double r() const { return r_; }
  double phi() const { return phi_; }

 private:
  double r_;
  double phi_;
};

// Mode transformation acting on (a1^dag, a1, a2^dag, a2)^T.
struct BogoliubovMatrix {
  Eigen::Matrix4cd m;
};

// Position/momentum factorization L = H * d * H^T. H and L use the (x1, x2, p1, p2) ordering.
struct SymplecticFactors {
  Eigen::Matrix4d h;
  Eigen::Vector4d d;  // (e^-r, e^r, e^r, e^-r)
  Eigen::Matrix4d l;
};

// Index layout of the four quadratures.
//  - interleaved: (X_signal, P_signal, X_idler, P_idler), the canonical layout
//  - block:       (x1, x2, p1, p2)
enum class Ordering { interleaved, block };

inline constexpr Ordering kCanonical = Ordering::interleaved;

std::string_view to_string(Ordering o);
// Throws std::invalid_argument on an unknown tag.
Ordering parse_ordering(std::string_view tag);

struct QuadCovariance {
  Eigen::Matrix4d c;
  Ordering ordering = kCanonical;
};

// Which product the symplectic covariance is assembled from.
//  - transpose_first: H^T * D^2 * H, whose result is laid out interleaved
//  - transpose_last:  H * D^2 * H^T, whose result is laid out in block order
enum class ProductOrder { transpose_first, transpose_last };

BogoliubovMatrix bogoliubov_matrix(const SqueezeParams& p);

SymplecticFactors symplectic_factors(double r);

// Default order reproduces the closed form at phi = 0. The other order yields
// the phi = pi member of the family (cross-mode terms flip sign).
QuadCovariance covariance_via_symplectic(double r, ProductOrder order = ProductOrder::transpose_first);

// Diagonal cosh 2r, cross-mode block sinh 2r * [[cos phi, sin phi], [sin phi, -cos phi]].
QuadCovariance covariance_closed_form(const SqueezeParams& p);

// tanh 2r. Throws std::invalid_argument for r < 0.
double pearson_rho(double r);

// P c P^T with P mapping the source layout onto `target`.
QuadCovariance reorder(const QuadCovariance& c, Ordering target);

// Symplectic form J = [[0, I], [-I, 0]] in block order, blockdiag([[0,1],[-1,0]]) interleaved.
Eigen::Matrix4d symplectic_form(Ordering o);

// Checks symmetry, positive definiteness and unit determinant with the
// documented tolerances. Returns an empty string when everything holds.
std::string describe_violations(const QuadCovariance& c, bool pure_state = true);

namespace detail {
// Unchecked variant used for inverse-property checks, accepts negative r.
BogoliubovMatrix bogoliubov_matrix(double r, double phi);
}  // namespace detail

}  // namespace qtms::gaussian
