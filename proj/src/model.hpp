#pragma once

#include "blaschke.hpp"
#include "matrix.hpp"

namespace ratlas {

/// Compression of multiplication by z to the model space of a spectrum, written
/// in the Malmquist-Walsh basis. Lower triangular with the spectrum on the diagonal.
struct ModelOperator {
  Spectrum spectrum;
  ComplexMatrix matrix;
};

ModelOperator model_operator_matrix(const Spectrum& s);

/// Closed-form (zeta - M_B)^{-1}. Throws when zeta is within 1e-10 of the spectrum.
ComplexMatrix model_resolvent_matrix(const Spectrum& s, Complex zeta);

/// k-th Malmquist-Walsh basis function (0-based k) at |z| <= 1.
Complex malmquist_walsh_eval(const Spectrum& s, std::size_t k, Complex z);

/// The n x n contraction with single eigenvalue a whose resolvent at 1 is extremal:
/// diagonal a, entry (i, j) = (-a)^(i-j-1) (1 - a^2) below the diagonal.
ComplexMatrix extremal_contraction(std::size_t n, double a);

}  // namespace ratlas
