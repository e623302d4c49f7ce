#pragma once

#include <cstddef>
#include <optional>

#include "matrix.hpp"

namespace ratlas {

/// Lower-triangular Toeplitz matrix with unit diagonal and constant beta below it.
struct ToeplitzSpec {
  std::size_t n = 1;
  double beta = 0.0;
  std::optional<double> theta_star;
};

/// Validates n >= 1 and beta in [0, 2]; attaches theta_star when it is defined
/// (n >= 2, beta > 0).
ToeplitzSpec make_toeplitz_spec(std::size_t n, double beta);

ComplexMatrix toeplitz_matrix(const ToeplitzSpec& spec);

/// beta cot(n theta) + (2 - beta) cot(theta / 2). At a pole of cot(n theta) the
/// limit from the side theta lies on is returned as +/-infinity.
double cot_residual(std::size_t n, double beta, double theta);

/// Lower end of the bracket holding the root: (2n - 1) pi / (2n).
double theta_bracket_low(std::size_t n);

/// Root of cot_residual in [(2n-1)pi/(2n), pi) by bisection. Requires beta in (0, 2].
double solve_theta_star(std::size_t n, double beta);

/// Spectral norm of the Toeplitz matrix through its trigonometric characterization.
double toeplitz_norm(std::size_t n, double beta);

}  // namespace ratlas
