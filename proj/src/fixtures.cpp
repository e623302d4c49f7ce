#include "fixtures.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "linalg.hpp"

namespace ratlas {

double Rng::uniform() {
  // 53 random mantissa bits.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::index(std::size_t bound) {
  require(bound > 0, ErrorCode::invalid_argument, "index bound must be positive");
  return static_cast<std::size_t>(uniform() * static_cast<double>(bound)) % bound;
}

double Rng::normal() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double v = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

Complex Rng::in_disk(double radius) {
  const double rho = radius * std::sqrt(uniform());
  const double angle = 2.0 * std::numbers::pi * uniform();
  return std::polar(rho, angle);
}

Spectrum random_spectrum(Rng& rng, std::size_t degree, double radius, double min_gap) {
  require(degree >= 1, ErrorCode::invalid_argument, "degree must be positive");
  require(radius > 0.0 && radius < 1.0, ErrorCode::invalid_argument, "radius must lie in (0, 1)");
  std::vector<Complex> pts;
  pts.reserve(degree);
  for (int attempts = 0; pts.size() < degree; ++attempts) {
    require(attempts < 100000, ErrorCode::no_convergence, "could not place separated spectrum points");
    const Complex z = rng.in_disk(radius);
    bool ok = true;
    for (const Complex& p : pts) ok = ok && std::abs(p - z) >= min_gap;
    if (ok) pts.push_back(z);
  }
  return Spectrum(std::move(pts));
}

std::vector<Complex> circle_points(double radius, std::size_t count, double phase) {
  std::vector<Complex> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    pts[k] = std::polar(radius, phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count));
  return pts;
}

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (Complex& z : m.entries()) z = rng.complex_normal();
  return m;
}

double spectral_radius(const ComplexMatrix& m) {
  double rho = 0.0;
  for (const Complex& l : eigenvalues_dense(m)) rho = std::max(rho, std::abs(l));
  return rho;
}

ComplexMatrix random_contraction(Rng& rng, std::size_t n, double max_modulus) {
  require(max_modulus > 0.0 && max_modulus < 1.0, ErrorCode::invalid_argument, "eigenvalue cap must lie in (0, 1)");
  ComplexMatrix m = gaussian_matrix(rng, n, n);
  m *= 1.0 / (spectral_norm(m) * (1.0 + 1e-12));
  while (spectral_radius(m) > max_modulus) m *= 0.99;
  return m;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  ComplexMatrix q = gaussian_matrix(rng, n, n);
  // Modified Gram-Schmidt on the columns.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

ComplexMatrix random_stochastic(Rng& rng, std::size_t n) {
  ComplexMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform();
      const double w = 1e-3 + u * u * u * u;  // skewed so some transitions are rare
      t(i, j) = w;
      total += w;
    }
    for (std::size_t i = 0; i < n; ++i) t(i, j) /= total;
  }
  return t;
}

}  // namespace ratlas
