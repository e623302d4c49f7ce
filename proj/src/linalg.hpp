#pragma once

#include <vector>

#include "matrix.hpp"

namespace ratlas {

enum class NormKind { spectral, one_to_one };

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
/// Only the lower triangle is read; the upper triangle is assumed to mirror it.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Singular values in descending order, from the Jacobi spectrum of M^H M.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// Max column sum of entry moduli: the operator norm induced by the vector 1-norm.
double induced_one_norm(const ComplexMatrix& m);

double matrix_norm(const ComplexMatrix& m, NormKind kind);

/// Sum of singular values. Hermitian input goes through its eigenvalues
/// directly, which keeps small singular values accurate.
double schatten_one_norm(const ComplexMatrix& m);

/// Upper Hessenberg form by Householder reflections (similarity transform).
ComplexMatrix hessenberg(const ComplexMatrix& m);

/// All n eigenvalues of a square matrix (n <= 256): Hessenberg reduction followed
/// by single-shift complex QR with deflation. Triangular inputs return their
/// diagonal. Throws ErrorCode::no_convergence after 100*n QR steps.
std::vector<Complex> eigenvalues_dense(const ComplexMatrix& m);

/// Unit eigenvector for an (approximate) eigenvalue by inverse iteration.
std::vector<Complex> eigenvector_for(const ComplexMatrix& m, Complex lambda);

/// Solves A X = B by LU with partial pivoting.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

/// (zeta I - M)^{-1}.
ComplexMatrix resolvent_direct(const ComplexMatrix& m, Complex zeta);

/// max_{0 <= k <= K} ||M^k||: an empirical lower estimate of the power bound.
/// Throws ErrorCode::overflow once any entry of a power exceeds 1e300.
double power_sup_norm(const ComplexMatrix& m, NormKind kind, int max_power);

}  // namespace ratlas
