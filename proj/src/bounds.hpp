#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blaschke.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace ratlas {

/// Slack applied to every domination comparison.
inline constexpr double kDominationSlack = 1e-8;
/// Grid points closer than this to the spectrum are skipped.
inline constexpr double kSpectrumGuard = 1e-10;

struct BoundQuery {
  Spectrum spectrum;
  Complex zeta;
  /// Power-bound constant; 1 for contractions.
  double power_bound_constant = 1.0;
  std::optional<double> r_override;
};

/// Spectral norm of the model resolvent: the sharp bound over all contractions
/// annihilated by the spectrum's polynomial.
double contraction_bound_optimal(const BoundQuery& q);

/// Toeplitz-majorant bound; requires |zeta| <= 1.
double contraction_bound_corollary(const BoundQuery& q);

/// Max over the spectrum of (1 - |lambda|^2) / |1 - lambda|, clamped to [0, 2].
double refinement_beta(const Spectrum& s);

/// Toeplitz-majorant bound at zeta = 1 with the refined sub-diagonal weight.
double contraction_bound_beta_refined(const Spectrum& s);

/// Bound for operators with sup_k ||A^k|| <= C in any Banach norm.
double power_bounded_bound(const BoundQuery& q);

/// Specialization of power_bounded_bound to |zeta| = 1 (within 1e-12).
double unit_circle_bound(const Spectrum& s, double c, Complex zeta);

/// Comparison estimate for |zeta| < 1 that the power-bounded bound must not exceed.
double qualitative_interior_bound(const BoundQuery& q);

enum class RChoice {
  /// q.r_override when set, otherwise the default radius below.
  given_or_default,
  /// Golden-section minimization over r, never worse than the default radius.
  refined,
};

/// Default stretch radius: 1 - r^2 = min_i |1 - conj(zeta) lambda_i| / (2|m|) for
/// |zeta| <= 1 (floored at 1e-6), and r = |zeta|^{-1/2} outside the disk.
double default_stretch_radius(const Spectrum& s, Complex zeta);

/// C (1 - r^2)^{-1/2} ||g~||_{H2} before the smoothing estimates.
double raw_wiener_bound(const BoundQuery& q, RChoice choice = RChoice::given_or_default);

enum class Assumption { contraction, power_bounded };

struct BoundReport {
  Complex zeta;
  bool skipped = false;
  std::string warning;

  std::optional<double> optimal_contraction_bound;
  std::optional<double> corollary_bound;
  std::optional<double> beta_refined_bound;
  std::optional<double> power_bounded_bound;
  std::optional<double> unit_circle_bound;
  std::optional<double> raw_wiener_bound;
  std::optional<double> actual_norm;

  /// actual_norm meets the sharp contraction bound (relative 1e-9).
  bool equality = false;
  std::vector<std::string> violations;
};

struct BoundRequest {
  /// Exactly one of matrix / spectrum.
  std::optional<ComplexMatrix> matrix;
  std::optional<Spectrum> spectrum;
  std::vector<Complex> grid;
  Assumption assumption = Assumption::contraction;
  double power_bound_constant = 1.0;
  NormKind norm = NormKind::spectral;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct BoundSweep {
  Spectrum spectrum;
  /// Only set when a matrix was supplied.
  std::optional<double> matrix_norm;
  std::optional<double> power_sup_estimate;
  bool hypothesis_holds = true;
  std::vector<BoundReport> reports;

  std::size_t violation_count() const noexcept;
};

/// Evaluates every bound that applies under the assumption at each grid point.
/// Results are in grid order regardless of thread scheduling.
BoundSweep bound_report(const BoundRequest& request);

}  // namespace ratlas
