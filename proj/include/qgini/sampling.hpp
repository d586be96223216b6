#pragma once

// Seeded random states for property checks. Pure states take standard-normal
// real and imaginary parts and normalize; mixed states combine k pure states
// with weights drawn uniformly from the probability simplex.

#include <cstdint>
#include <random>
#include <vector>

#include "qgini/qsystem.hpp"

namespace qgini {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-stream seeds from a
/// single master seed.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` derived from `master`.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 1));
}

/// Flat sample from the simplex {w_i >= 0, sum w_i = 1}.
inline std::vector<double> random_simplex(int n, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) {
    v = exp1(rng);
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

inline Vector random_gaussian_vector(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (int r = 0; r < d; ++r) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(r) = Complex(re, im);
  }
  return v;
}

inline StateVector random_pure_state(int d, Rng& rng) {
  return StateVector::normalized(random_gaussian_vector(d, rng));
}

/// Mixture of `components` random pure states.
inline DensityMatrix random_density(int d, int components, Rng& rng) {
  const std::vector<double> w = random_simplex(components, rng);
  Matrix m = Matrix::Zero(d, d);
  for (int k = 0; k < components; ++k) {
    const StateVector psi = random_pure_state(d, rng);
    m += w[k] * psi.amplitudes() * psi.amplitudes().adjoint();
  }
  return DensityMatrix(m);
}

/// Random density matrix whose rank is itself drawn uniformly from 1..d.
inline DensityMatrix random_density(int d, Rng& rng) {
  std::uniform_int_distribution<int> rank(1, d);
  return random_density(d, rank(rng), rng);
}

inline ProbabilityDistribution random_distribution(int d, Rng& rng) {
  return ProbabilityDistribution(random_simplex(d, rng));
}

}  // namespace qgini
