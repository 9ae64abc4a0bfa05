#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <Eigen/Dense>
#include <boost/random/mersenne_twister.hpp>

#include "rsf/ensembles.hpp"
#include "rsf/expression.hpp"

namespace rsf {

/// 64-bit Mersenne Twister; normals via boost::random::normal_distribution.
using Rng = boost::random::mt19937_64;

struct MCEstimate {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string target;
};

/// M = round(cN), ties to even.
int wishart_rows(const EnsembleModel& model, int N);

/// One draw of the matrix for a letter label (D_λ for explicit Wishart).
Eigen::MatrixXd sample_matrix(const EnsembleModel& model, int N, Rng& rng, const std::string& label = "");

struct MCOptions {
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t block = 500;  // samples per sub-seeded block
};

/// Sample mean (moments, k1) or unbiased sample covariance (k2); r ≥ 3 is unsupported.
/// Centring constants come from the exact engine at the same N.
MCEstimate estimate(const Expression& e, const ModelMap& models, int N, const MCOptions& opt);

/// Seed of block b derived from the top-level seed.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block);

}  // namespace rsf
