#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace ratlas {

/// Eigenvalue-1 cluster radius used to certify a unique stationary state.
inline constexpr double kStationarityTol = 1e-9;

/// Column-stochastic transition matrix with lazily derived quantities.
struct MarkovModel {
  ComplexMatrix transition;
  /// T_inf = pi 1^T.
  std::optional<ComplexMatrix> stationary_projection;
  /// Z = (I - T + T_inf)^{-1}.
  std::optional<ComplexMatrix> fundamental_inverse;
  /// Eigenvalues of T - T_inf (contains the 0 from the stationary direction).
  std::optional<std::vector<Complex>> sub_spectrum;
  /// Eigenvalues of T with one copy of the eigenvalue 1 removed.
  std::optional<std::vector<Complex>> subdominant_spectrum;
};

/// Throws ErrorCode::invalid_argument naming the 1-based columns that fail.
MarkovModel validate_stochastic(const ComplexMatrix& t);

/// Computes (and caches) T_inf. Throws ErrorCode::not_unique when the eigenvalue
/// 1 of T is not simple to within kStationarityTol.
const ComplexMatrix& stationary_projection(MarkovModel& m);

/// Unique stationary distribution (entries sum to 1).
std::vector<double> stationary_distribution(MarkovModel& m);

const ComplexMatrix& fundamental_inverse(MarkovModel& m);

/// max_{i<j} ||Z (e_i - e_j)||_1 / 2, the exact sensitivity over zero-sum perturbations.
double kappa_cl_exact(MarkovModel& m);

struct KappaClassicalBounds {
  double lower = 0.0;
  double upper_cited = 0.0;
  double upper_new = 0.0;
  /// min |1 - lambda| over the subdominant spectrum.
  double subdominant_gap = 0.0;
  /// min |1 - lambda| over the full spectrum of T - T_inf.
  double sub_spectrum_gap = 0.0;
};

/// lower = 1/gap and upper_cited = n/gap over the subdominant spectrum;
/// upper_new = 2 sqrt(16e - 4) n / gap over the spectrum of T - T_inf.
KappaClassicalBounds kappa_cl_bounds(MarkovModel& m);

/// Superoperator on column-stacked n x n matrices: vec(X)[i + n j] = X(i, j).
struct QuantumChannelModel {
  ComplexMatrix superoperator;
  std::size_t dimension = 0;
};

/// Checks the shape (n^2 x n^2, n^2 <= 256) and trace preservation to 1e-10.
QuantumChannelModel make_quantum_channel(const ComplexMatrix& superoperator);

/// vec(K X K^H) = (conj(K) kron K) vec(X), summed over the Kraus operators.
ComplexMatrix kraus_superoperator(const std::vector<ComplexMatrix>& kraus);
/// X -> (1 - p) X + p tr(X) I / n.
ComplexMatrix depolarizing_superoperator(std::size_t n, double p);
/// X -> sum_k w_k U_k X U_k^H.
ComplexMatrix mixed_unitary_superoperator(const std::vector<ComplexMatrix>& unitaries, const std::vector<double>& weights);

struct KappaQuantumBounds {
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
};

/// Bounds from Lambda = spectrum minus one eigenvalue 1. Throws
/// ErrorCode::not_unique when another eigenvalue lies within 1e-9 of 1.
KappaQuantumBounds kappa_qu_bounds(const QuantumChannelModel& q);

/// Max of ||Z(sigma)||_1 over random traceless Hermitian sigma with ||sigma||_1 = 1,
/// Z = (I - S + vec(rho) vec(I)^T)^{-1}. A lower witness for the quantum condition number.
double kappa_qu_monte_carlo_lower(const QuantumChannelModel& q, std::size_t samples, std::uint64_t seed);

}  // namespace ratlas
