#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "blaschke.hpp"
#include "matrix.hpp"

namespace ratlas {

/// Seeded generator for randomized suites. Distribution sampling is done by
/// hand so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t bound);
  /// Standard normal by Box-Muller.
  double normal();
  /// Real and imaginary parts independent standard normal.
  Complex complex_normal() { return {normal(), normal()}; }
  /// Uniform on the disk of the given radius.
  Complex in_disk(double radius);

  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Rejection-samples `degree` points in the disk |z| <= radius with pairwise gap >= min_gap.
Spectrum random_spectrum(Rng& rng, std::size_t degree, double radius, double min_gap = kMinNodeGap);

/// count equally spaced points on |z| = radius, starting at angle `phase`.
std::vector<Complex> circle_points(double radius, std::size_t count, double phase = 0.0);

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Random matrix of spectral norm <= 1 whose eigenvalues have modulus <= max_modulus.
ComplexMatrix random_contraction(Rng& rng, std::size_t n, double max_modulus = 1.0 - 1e-6);

/// Haar-like unitary by Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

/// Column-stochastic matrix with strictly positive entries (hence ergodic).
ComplexMatrix random_stochastic(Rng& rng, std::size_t n);

/// Largest eigenvalue modulus.
double spectral_radius(const ComplexMatrix& m);

}  // namespace ratlas
