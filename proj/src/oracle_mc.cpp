#include "qtms/oracle_mc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qtms/special_functions.hpp"

namespace qtms::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::size_t count_exceedances(double a, double b2, std::size_t n, RngSeed seed) {
  NormalSampler normal(seed);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double z1 = a + normal.next();
    const double z2 = normal.next();
    if (z1 * z1 + z2 * z2 > b2) ++hits;
  }
  return hits;
}

}  // namespace

Xoshiro256::Xoshiro256(RngSeed seed) {
  std::uint64_t sm = seed.value;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSampler::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = rng_.uniform();
  const double u2 = rng_.uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

RngSeed shard_seed(RngSeed seed, std::uint64_t shard) {
  std::uint64_t state = seed.value ^ (0xd1b54a32d192ed03ULL * (shard + 1));
  return {splitmix64(state)};
}

McReport make_report(double estimate, double std_error, std::size_t n, double target) {
  const double diff = estimate - target;
  double z = 0.0;
  if (std_error > 0.0)
    z = diff / std_error;
  else if (diff != 0.0)
    z = std::copysign(std::numeric_limits<double>::infinity(), diff);
  return {estimate, std_error, n, target, z};
}

Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& cov, std::size_t n, RngSeed seed) {
  if (cov.rows() != cov.cols() || cov.rows() == 0)
    throw std::invalid_argument("sample_gaussian: covariance must be square");
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("sample_gaussian: covariance is not positive definite");
  const Eigen::MatrixXd lower = llt.matrixL();

  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), d);
  NormalSampler normal(seed);
  Eigen::VectorXd z(d);
  for (Eigen::Index row = 0; row < out.rows(); ++row) {
    for (Eigen::Index k = 0; k < d; ++k) z(k) = normal.next();
    out.row(row) = (lower * z).transpose();
  }
  return out;
}

Eigen::MatrixXd sample_gaussian(const gaussian::QuadCovariance& cov, std::size_t n, RngSeed seed) {
  return sample_gaussian(Eigen::MatrixXd(cov.c), n, seed);
}

McReport empirical_pearson(const Eigen::MatrixXd& samples, int i, int j, double target) {
  const auto n = static_cast<std::size_t>(samples.rows());
  if (n < kMinPearsonSamples) throw std::invalid_argument("empirical_pearson: need at least 1000 samples");
  if (i < 0 || j < 0 || i >= samples.cols() || j >= samples.cols())
    throw std::invalid_argument("empirical_pearson: column index out of range");

  const Eigen::VectorXd x = samples.col(i).array() - samples.col(i).mean();
  const Eigen::VectorXd y = samples.col(j).array() - samples.col(j).mean();
  const double sxx = x.squaredNorm();
  const double syy = y.squaredNorm();
  if (!(sxx > 0.0) || !(syy > 0.0)) throw std::invalid_argument("empirical_pearson: zero-variance column");

  const double r = x.dot(y) / std::sqrt(sxx * syy);
  const double se = (1.0 - target * target) / std::sqrt(static_cast<double>(n));
  return make_report(r, se, n, target);
}

McReport marcum_oracle(double a, double b, double target, std::size_t n, RngSeed seed, unsigned shards) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("marcum_oracle: a and b must be >= 0");
  if (n < kMinMarcumSamples) throw std::invalid_argument("marcum_oracle: need at least 1e5 draws");
  if (shards == 0) shards = 1;

  std::vector<std::size_t> hits(shards, 0);
  const double b2 = b * b;
  const auto draws = [&](unsigned s) { return n / shards + (s < n % shards ? 1 : 0); };
  {
    std::vector<std::jthread> workers;
    workers.reserve(shards);
    for (unsigned s = 0; s < shards; ++s)
      workers.emplace_back([&, s] { hits[s] = count_exceedances(a, b2, draws(s), shard_seed(seed, s)); });
  }

  std::size_t total = 0;
  for (auto h : hits) total += h;
  const double p_hat = static_cast<double>(total) / static_cast<double>(n);
  const double se = std::sqrt(target * (1.0 - target) / static_cast<double>(n));
  return make_report(p_hat, se, n, target);
}

McReport marcum_oracle(double a, double b, std::size_t n, RngSeed seed, unsigned shards) {
  return marcum_oracle(a, b, special::marcum_q1(a, b), n, seed, shards);
}

}  // namespace qtms::mc
