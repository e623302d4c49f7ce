#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "matrix.hpp"

namespace ratlas {

/// Eigenvalues must sit at modulus <= 1 - kInteriorMargin.
inline constexpr double kInteriorMargin = 1e-9;
/// Minimum node separation for formulas that divide by lambda_i - lambda_j.
inline constexpr double kMinNodeGap = 1e-6;

/// Ordered multiset of eigenvalues strictly inside the unit disk. The order
/// matters for matrix representations; norms built from it do not depend on it.
class Spectrum {
 public:
  explicit Spectrum(std::vector<Complex> points);

  std::size_t degree() const noexcept { return points_.size(); }
  std::span<const Complex> points() const noexcept { return points_; }
  const Complex& operator[](std::size_t i) const noexcept { return points_[i]; }

  Spectrum sorted_by_modulus() const;

  /// Smallest |z - lambda_i|.
  double distance_to(Complex z) const noexcept;
  /// Smallest |1 - conj(lambda_i) z|.
  double min_conjugate_gap(Complex z) const noexcept;
  /// Smallest pairwise |lambda_i - lambda_j|; +inf for degree 1.
  double min_pairwise_gap() const noexcept;

 private:
  std::vector<Complex> points_;
};

/// prod_i (z - lambda_i) / (1 - conj(lambda_i) z).
Complex blaschke_eval(const Spectrum& s, Complex z);

/// Factors first..last (0-based, inclusive) of the product.
Complex blaschke_truncated_eval(const Spectrum& s, std::size_t first, std::size_t last, Complex z);

struct IdentitySides {
  Complex lhs;
  Complex rhs;

  double relative_gap() const noexcept;
};

/// Partial-fraction sum vs closed product for nodes j..i (0-based, j < i).
IdentitySides combi1_sides(const Spectrum& s, Complex zeta, std::size_t j, std::size_t i);

/// Both sides of the same identity multiplied through by prod_{mu=j..i}(zeta - lambda_mu).
/// These are polynomials in zeta and remain finite at zeta = lambda_alpha.
IdentitySides combi1_polynomial_sides(const Spectrum& s, Complex zeta, std::size_t j, std::size_t i);

enum class Combi2Part { first = 1, second = 2 };

/// The r-stretched partial-fraction identities. `l` selects the excluded factor
/// for the first identity and is ignored for the second.
IdentitySides combi2_sides(const Spectrum& s, Complex zeta, double r, Combi2Part part, std::size_t l = 0);

/// The r-stretched rational interpolant of 1/(zeta - lambda_i): its argument-
/// scaled version z -> g(r z) takes the value 1/(zeta - lambda_i) at each lambda_i.
class SmoothedInterpolant {
 public:
  SmoothedInterpolant(Spectrum spectrum, Complex zeta, double r);

  const Spectrum& spectrum() const noexcept { return spectrum_; }
  Complex zeta() const noexcept { return zeta_; }
  double r() const noexcept { return r_; }

  /// Partial-fraction weight of the k-th node. Needs pairwise distinct nodes.
  Complex weight(std::size_t k) const;
  Complex eval(Complex z) const;

 private:
  Spectrum spectrum_;
  Complex zeta_;
  double r_;
};

/// Closed-form H2 norm. At r|zeta| = 1 the 0/0 limit is taken by a symmetric
/// difference quotient in r with step 1e-6.
double gtilde_h2_norm(const SmoothedInterpolant& g);

struct TaylorH2 {
  double norm = 0.0;
  /// Upper bound on (true norm - norm) from the truncated tail.
  double tail_bound = 0.0;
};

/// Taylor coefficients 0..degree of the interpolant, from the product of the
/// numerator polynomials and the geometric series of each pole factor.
std::vector<Complex> gtilde_taylor_coefficients(const SmoothedInterpolant& g, std::size_t degree);

/// H2 norm from the truncated Taylor series (Plancherel). Throws
/// ErrorCode::invalid_argument when the tail bound exceeds `tail_tolerance`.
TaylorH2 gtilde_taylor_h2_oracle(const SmoothedInterpolant& g, std::size_t degree,
                                 double tail_tolerance = std::numeric_limits<double>::infinity());

/// Horner evaluation of a power series truncated to the given coefficients.
Complex evaluate_series(std::span<const Complex> coefficients, Complex z) noexcept;

}  // namespace ratlas
