#include "toeplitz.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace ratlas {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBracketInset = 1e-13;
constexpr double kPoleGuard = 1e-12;
constexpr double kEndpointRootTol = 1e-12;
constexpr double kIntervalTol = 1e-14;
constexpr int kMaxBisections = 200;

void check_beta(double beta) {
  require(std::isfinite(beta), ErrorCode::non_finite, "beta must be finite");
  require(beta >= 0.0 && beta <= 2.0, ErrorCode::invalid_argument, "beta must lie in [0, 2]");
}

double cot(double x) { return std::cos(x) / std::sin(x); }

}  // namespace

ToeplitzSpec make_toeplitz_spec(std::size_t n, double beta) {
  require(n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  check_beta(beta);
  ToeplitzSpec spec{n, beta, std::nullopt};
  if (n >= 2 && beta > 0.0) spec.theta_star = solve_theta_star(n, beta);
  return spec;
}

ComplexMatrix toeplitz_matrix(const ToeplitzSpec& spec) {
  require(spec.n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  check_beta(spec.beta);
  ComplexMatrix m(spec.n, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    m(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) m(i, j) = spec.beta;
  }
  return m;
}

double cot_residual(std::size_t n, double beta, double theta) {
  require(n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  const double nth = static_cast<double>(n) * theta;
  const double turns = nth / kPi;
  const double nearest = std::round(turns);
  if (beta != 0.0 && std::abs(nth - nearest * kPi) <= kPoleGuard) {
    // cot jumps from -inf to +inf across each multiple of pi.
    const double side = turns < nearest ? -1.0 : 1.0;
    return side * std::copysign(std::numeric_limits<double>::infinity(), beta);
  }
  return beta * cot(nth) + (2.0 - beta) * cot(0.5 * theta);
}

double theta_bracket_low(std::size_t n) {
  const double two_n = 2.0 * static_cast<double>(n);
  return (two_n - 1.0) * kPi / two_n;
}

double solve_theta_star(std::size_t n, double beta) {
  require(n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  check_beta(beta);
  require(beta > 0.0, ErrorCode::invalid_argument, "theta_star is defined for beta > 0 only");

  const double endpoint = theta_bracket_low(n);
  if (std::abs(cot_residual(n, beta, endpoint)) <= kEndpointRootTol) return endpoint;

  double lo = endpoint + kBracketInset;
  double hi = kPi - kBracketInset;
  const double f_lo = cot_residual(n, beta, lo);
  const double f_hi = cot_residual(n, beta, hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) fail(ErrorCode::internal, "cotangent residual has no sign change on the bracket");

  for (int it = 0; it < kMaxBisections && hi - lo > kIntervalTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = cot_residual(n, beta, mid);
    if (f == 0.0) return mid;
    (f > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double toeplitz_norm(std::size_t n, double beta) {
  require(n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  check_beta(beta);
  if (beta == 0.0 || n == 1) return 1.0;
  const double theta = solve_theta_star(n, beta);
  const double t = std::tan(0.5 * theta);
  return 0.5 * std::sqrt((beta - 2.0) * (beta - 2.0) + beta * beta * t * t);
}

}  // namespace ratlas
