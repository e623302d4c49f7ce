#include "model.hpp"

#include <cmath>

#include "error.hpp"

namespace ratlas {
namespace {

constexpr double kZetaGuard = 1e-10;

double defect(Complex l) { return std::sqrt(1.0 - std::norm(l)); }

}  // namespace

ModelOperator model_operator_matrix(const Spectrum& s) {
  const std::size_t m = s.degree();
  ComplexMatrix mat(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    mat(j, j) = s[j];
    // Running product of -conj(lambda_mu) over mu strictly between j and i.
    Complex chain = 1.0;
    for (std::size_t i = j + 1; i < m; ++i) {
      mat(i, j) = defect(s[i]) * defect(s[j]) * chain;
      chain *= -std::conj(s[i]);
    }
  }
  return ModelOperator{s, std::move(mat)};
}

ComplexMatrix model_resolvent_matrix(const Spectrum& s, Complex zeta) {
  require(s.distance_to(zeta) >= kZetaGuard, ErrorCode::invalid_argument, "zeta within 1e-10 of an eigenvalue");
  const std::size_t m = s.degree();
  ComplexMatrix res(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex inv_j = 1.0 / (zeta - s[j]);
    res(j, j) = inv_j;
    Complex chain = 1.0;
    for (std::size_t i = j + 1; i < m; ++i) {
      const Complex inv_i = 1.0 / (zeta - s[i]);
      res(i, j) = defect(s[i]) * inv_i * defect(s[j]) * inv_j * chain;
      chain *= (1.0 - std::conj(s[i]) * zeta) * inv_i;
    }
  }
  return res;
}

Complex malmquist_walsh_eval(const Spectrum& s, std::size_t k, Complex z) {
  require(k < s.degree(), ErrorCode::invalid_argument, "basis index out of range");
  require(std::abs(z) <= 1.0 + 1e-12, ErrorCode::invalid_argument, "basis functions are evaluated on the closed disk");
  Complex value = defect(s[k]) / (1.0 - std::conj(s[k]) * z);
  for (std::size_t i = 0; i < k; ++i) value *= (z - s[i]) / (1.0 - std::conj(s[i]) * z);
  return value;
}

ComplexMatrix extremal_contraction(std::size_t n, double a) {
  require(n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  require(a > 0.0 && a < 1.0, ErrorCode::invalid_argument, "eigenvalue a must lie in (0, 1)");
  ComplexMatrix mat(n, n);
  const double sub = 1.0 - a * a;
  for (std::size_t j = 0; j < n; ++j) {
    mat(j, j) = a;
    double chain = sub;
    for (std::size_t i = j + 1; i < n; ++i) {
      mat(i, j) = chain;
      chain *= -a;
    }
  }
  return mat;
}

}  // namespace ratlas
