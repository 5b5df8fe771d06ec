#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>

#include "qtms/quantum_gaussian.hpp"

namespace qtms::mc {

struct RngSeed {
  std::uint64_t value = 0;
};

// xoshiro256** seeded through splitmix64. The stream for a given seed is
// fixed by this file, independent of the standard library in use.
class Xoshiro256 {
 public:
  explicit Xoshiro256(RngSeed seed);

  std::uint64_t next();
  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform();

 private:
  std::uint64_t s_[4];
};

// Standard normal variates by the Box-Muller transform; pairs are cached so
// each uniform pair yields two normals.
class NormalSampler {
 public:
  explicit NormalSampler(RngSeed seed) : rng_(seed) {}
  double next();

 private:
  Xoshiro256 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Seed of an independent sub-stream, derived from (seed, shard).
RngSeed shard_seed(RngSeed seed, std::uint64_t shard);

struct McReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double target = 0.0;
  double z_score = 0.0;
};

// z = (estimate - target) / std_error; 0 when both numerator and std_error vanish.
McReport make_report(double estimate, double std_error, std::size_t n, double target);

// n x d draws from N(0, cov) using the Cholesky factor of cov.
// Throws std::invalid_argument if cov is not positive definite.
Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& cov, std::size_t n, RngSeed seed);
Eigen::MatrixXd sample_gaussian(const gaussian::QuadCovariance& cov, std::size_t n, RngSeed seed);

inline constexpr std::size_t kMinPearsonSamples = 1000;

// Sample correlation of columns (i, j) with large-sample standard error
// (1 - target^2) / sqrt(n). Throws std::invalid_argument for fewer than
// kMinPearsonSamples rows, a bad column index or a zero-variance column.
McReport empirical_pearson(const Eigen::MatrixXd& samples, int i, int j, double target);

inline constexpr std::size_t kMinMarcumSamples = 100000;

// Fraction of draws with Z1^2 + Z2^2 > b^2, Z1 ~ N(a, 1), Z2 ~ N(0, 1),
// compared against `target` with binomial standard error sqrt(p (1 - p) / n).
// Shards run on separate threads with streams from shard_seed(); the result
// depends only on (seed, shards).
McReport marcum_oracle(double a, double b, double target, std::size_t n, RngSeed seed,
                       unsigned shards = 1);
// Same, with target = special::marcum_q1(a, b).
McReport marcum_oracle(double a, double b, std::size_t n, RngSeed seed, unsigned shards = 1);

}  // namespace qtms::mc
