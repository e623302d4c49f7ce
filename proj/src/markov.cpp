#include "markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "fixtures.hpp"
#include "linalg.hpp"

namespace ratlas {
namespace {

constexpr double kEntryTol = 1e-12;
constexpr double kColumnSumTol = 1e-10;
constexpr double kResidualTol = 1e-8;
constexpr double kGapFloor = 1e-12;

double prefactor() { return std::sqrt(16.0 * std::numbers::e - 4.0); }

std::size_t count_near_one(const std::vector<Complex>& eig) {
  return static_cast<std::size_t>(
      std::count_if(eig.begin(), eig.end(), [](Complex l) { return std::abs(l - 1.0) <= kStationarityTol; }));
}

/// Drops the eigenvalue closest to 1 after checking it is the only one near 1.
std::vector<Complex> remove_unit_eigenvalue(std::vector<Complex> eig, const char* what) {
  const std::size_t near = count_near_one(eig);
  if (near == 0) fail(ErrorCode::hypothesis_violation, std::string(what) + ": no eigenvalue at 1");
  if (near > 1) fail(ErrorCode::not_unique, "stationary state not unique");
  auto closest = std::min_element(eig.begin(), eig.end(),
                                  [](Complex a, Complex b) { return std::abs(a - 1.0) < std::abs(b - 1.0); });
  eig.erase(closest);
  return eig;
}

double gap_to_one(const std::vector<Complex>& eig) {
  double gap = std::numeric_limits<double>::infinity();
  for (const Complex& l : eig) gap = std::min(gap, std::abs(1.0 - l));
  return gap;
}

/// Fixed vector of a map with simple eigenvalue 1, normalized by the functional
/// `norm_row`: solves (I - M) x = 0 with one equation swapped for norm_row . x = 1.
std::vector<Complex> fixed_vector(const ComplexMatrix& map, const std::vector<Complex>& norm_row) {
  const std::size_t n = map.rows();
  ComplexMatrix a = ComplexMatrix::identity(n) - map;
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = norm_row[j];
  ComplexMatrix rhs(n, 1);
  rhs(n - 1, 0) = 1.0;
  const ComplexMatrix x = solve(a, rhs);
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = x(i, 0);
  return v;
}

}  // namespace

MarkovModel validate_stochastic(const ComplexMatrix& t) {
  require(!t.empty() && t.is_square(), ErrorCode::invalid_argument, "transition matrix must be square");
  require(t.all_finite(), ErrorCode::non_finite, "transition matrix has non-finite entries");
  const std::size_t n = t.rows();
  std::vector<std::size_t> bad_sign;
  std::vector<std::size_t> bad_sum;
  bool complex_entry = false;
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    bool negative = false;
    for (std::size_t i = 0; i < n; ++i) {
      complex_entry = complex_entry || t(i, j).imag() != 0.0;
      negative = negative || t(i, j).real() < -kEntryTol;
      sum += t(i, j).real();
    }
    if (negative) bad_sign.push_back(j + 1);
    if (std::abs(sum - 1.0) > kColumnSumTol) bad_sum.push_back(j + 1);
  }
  require(!complex_entry, ErrorCode::invalid_argument, "transition matrix must be real");
  if (!bad_sign.empty() || !bad_sum.empty()) {
    std::ostringstream os;
    os << "not column-stochastic:";
    auto list = [&os](const char* label, const std::vector<std::size_t>& cols) {
      if (cols.empty()) return;
      os << ' ' << label << " in column";
      if (cols.size() > 1) os << 's';
      for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : " ") << cols[k];
      os << ';';
    };
    list("negative entry", bad_sign);
    list("column sum off 1", bad_sum);
    std::string msg = os.str();
    msg.pop_back();
    fail(ErrorCode::invalid_argument, msg);
  }
  return MarkovModel{t, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
}

std::vector<double> stationary_distribution(MarkovModel& m) {
  const ComplexMatrix& proj = stationary_projection(m);
  std::vector<double> pi(proj.rows());
  for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = proj(i, 0).real();
  return pi;
}

const ComplexMatrix& stationary_projection(MarkovModel& m) {
  if (m.stationary_projection) return *m.stationary_projection;
  const ComplexMatrix& t = m.transition;
  const std::size_t n = t.rows();
  std::vector<Complex> spectrum = eigenvalues_dense(t);
  m.subdominant_spectrum = remove_unit_eigenvalue(std::move(spectrum), "transition matrix");

  const std::vector<Complex> pi = fixed_vector(t, std::vector<Complex>(n, 1.0));
  ComplexMatrix proj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = pi[i].real();
  m.stationary_projection = std::move(proj);
  return *m.stationary_projection;
}

const ComplexMatrix& fundamental_inverse(MarkovModel& m) {
  if (m.fundamental_inverse) return *m.fundamental_inverse;
  const ComplexMatrix& proj = stationary_projection(m);
  const std::size_t n = m.transition.rows();
  const ComplexMatrix core = ComplexMatrix::identity(n) - m.transition + proj;
  ComplexMatrix z = inverse(core);
  const double residual = spectral_norm(z * core - ComplexMatrix::identity(n));
  require(residual <= kResidualTol, ErrorCode::singular, "I - T + T_inf is numerically singular");
  m.fundamental_inverse = std::move(z);
  return *m.fundamental_inverse;
}

double kappa_cl_exact(MarkovModel& m) {
  const std::size_t n = m.transition.rows();
  require(n <= 64, ErrorCode::invalid_argument, "exact classical condition number supports n <= 64");
  const ComplexMatrix& z = fundamental_inverse(m);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double col = 0.0;
      for (std::size_t k = 0; k < n; ++k) col += std::abs(z(k, i) - z(k, j));
      best = std::max(best, 0.5 * col);
    }
  }
  return best;
}

KappaClassicalBounds kappa_cl_bounds(MarkovModel& m) {
  const std::size_t n = m.transition.rows();
  require(n >= 2, ErrorCode::invalid_argument, "condition-number bounds need at least two states");
  const ComplexMatrix& proj = stationary_projection(m);
  if (!m.sub_spectrum) m.sub_spectrum = eigenvalues_dense(m.transition - proj);

  KappaClassicalBounds b;
  b.subdominant_gap = gap_to_one(*m.subdominant_spectrum);
  b.sub_spectrum_gap = gap_to_one(*m.sub_spectrum);
  require(b.subdominant_gap >= kGapFloor && b.sub_spectrum_gap >= kGapFloor, ErrorCode::hypothesis_violation,
          "chain is effectively non-ergodic: min |1 - lambda| < 1e-12");
  const double dim = static_cast<double>(n);
  b.lower = 1.0 / b.subdominant_gap;
  b.upper_cited = dim / b.subdominant_gap;
  b.upper_new = 2.0 * prefactor() * dim / b.sub_spectrum_gap;
  return b;
}

QuantumChannelModel make_quantum_channel(const ComplexMatrix& s) {
  require(!s.empty() && s.is_square(), ErrorCode::invalid_argument, "superoperator must be square");
  require(s.all_finite(), ErrorCode::non_finite, "superoperator has non-finite entries");
  require(s.rows() <= 256, ErrorCode::invalid_argument, "superoperator dimension n^2 must not exceed 256");
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(s.rows()))));
  require(n * n == s.rows(), ErrorCode::invalid_argument, "superoperator size must be a perfect square");
  for (std::size_t c = 0; c < s.cols(); ++c) {
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += s(i * (n + 1), c);
    const double expected = (c % (n + 1) == 0) ? 1.0 : 0.0;
    require(std::abs(tr - expected) <= 1e-10, ErrorCode::invalid_argument, "superoperator is not trace preserving");
  }
  return QuantumChannelModel{s, n};
}

ComplexMatrix kraus_superoperator(const std::vector<ComplexMatrix>& kraus) {
  require(!kraus.empty(), ErrorCode::invalid_argument, "need at least one Kraus operator");
  const std::size_t n = kraus.front().rows();
  ComplexMatrix s(n * n, n * n);
  for (const ComplexMatrix& k : kraus) {
    require(k.rows() == n && k.cols() == n, ErrorCode::invalid_argument, "Kraus operators must be n x n");
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t kk = 0; kk < n; ++kk) s(i + n * j, kk + n * l) += std::conj(k(j, l)) * k(i, kk);
  }
  return s;
}

ComplexMatrix depolarizing_superoperator(std::size_t n, double p) {
  require(n >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  require(p >= 0.0 && p <= 1.0, ErrorCode::invalid_argument, "depolarizing strength must lie in [0, 1]");
  ComplexMatrix s = ComplexMatrix::identity(n * n) * Complex(1.0 - p);
  const double w = p / static_cast<double>(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s(a * (n + 1), b * (n + 1)) += w;
  return s;
}

ComplexMatrix mixed_unitary_superoperator(const std::vector<ComplexMatrix>& unitaries, const std::vector<double>& weights) {
  require(!unitaries.empty() && unitaries.size() == weights.size(), ErrorCode::invalid_argument,
          "one weight per unitary is required");
  double total = 0.0;
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < unitaries.size(); ++k) {
    require(weights[k] >= 0.0, ErrorCode::invalid_argument, "weights must be nonnegative");
    total += weights[k];
    kraus.push_back(unitaries[k] * Complex(std::sqrt(weights[k])));
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::invalid_argument, "weights must sum to 1");
  return kraus_superoperator(kraus);
}

KappaQuantumBounds kappa_qu_bounds(const QuantumChannelModel& q) {
  require(q.dimension >= 2, ErrorCode::invalid_argument, "channel dimension must be at least 2");
  const std::vector<Complex> lambda = remove_unit_eigenvalue(eigenvalues_dense(q.superoperator), "channel");
  KappaQuantumBounds b;
  b.gap = gap_to_one(lambda);
  require(b.gap >= kGapFloor, ErrorCode::hypothesis_violation, "min |1 - lambda| < 1e-12");
  const double n2 = static_cast<double>(q.dimension * q.dimension);
  b.lower = 1.0 / b.gap;
  b.upper = 2.0 * prefactor() * n2 / b.gap;
  return b;
}

double kappa_qu_monte_carlo_lower(const QuantumChannelModel& q, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) return 0.0;
  const std::size_t n = q.dimension;
  const std::size_t n2 = n * n;
  require(n >= 2, ErrorCode::invalid_argument, "channel dimension must be at least 2");
  require(count_near_one(eigenvalues_dense(q.superoperator)) == 1, ErrorCode::not_unique, "stationary state not unique");

  std::vector<Complex> trace_row(n2, 0.0);
  for (std::size_t i = 0; i < n; ++i) trace_row[i * (n + 1)] = 1.0;
  const std::vector<Complex> rho = fixed_vector(q.superoperator, trace_row);
  ComplexMatrix core = ComplexMatrix::identity(n2) - q.superoperator;
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b) core(a, b) += rho[a] * trace_row[b];
  const ComplexMatrix z = inverse(core);

  Rng rng(seed);
  double best = 0.0;
  ComplexMatrix sigma(n, n);
  std::vector<Complex> vec(n2);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      sigma(i, i) = rng.normal();
      for (std::size_t j = 0; j < i; ++j) {
        sigma(i, j) = rng.complex_normal();
        sigma(j, i) = std::conj(sigma(i, j));
      }
    }
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += sigma(i, i);
    for (std::size_t i = 0; i < n; ++i) sigma(i, i) -= tr / static_cast<double>(n);
    const double scale = schatten_one_norm(sigma);
    if (scale <= 0.0) continue;

    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) vec[i + n * j] = sigma(i, j) / scale;
    const std::vector<Complex> image = multiply(z, vec);
    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) out(i, j) = image[i + n * j];
    best = std::max(best, schatten_one_norm(out));
  }
  return best;
}

}  // namespace ratlas
