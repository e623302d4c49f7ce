#include "blaschke.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace ratlas {
namespace {

constexpr double kPoleGuard = 1e-14;

void require_distinct(std::span<const Complex> nodes) {
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (std::abs(nodes[a] - nodes[b]) < kMinNodeGap)
        fail(ErrorCode::invalid_argument, "coincident nodes: identity needs pairwise distinct eigenvalues");
}

void require_away(std::span<const Complex> nodes, Complex zeta) {
  for (const Complex& l : nodes)
    if (std::abs(zeta - l) < kMinNodeGap) fail(ErrorCode::invalid_argument, "zeta coincides with a node");
}

void require_r(double r) {
  require(r > 0.0 && r < 1.0, ErrorCode::invalid_argument, "smoothing radius r must lie in (0, 1)");
}

// prod_i |(1 - r^2 conj(l_i) zeta) / (r zeta - r l_i)|^2
double stretched_modulus_product(std::span<const Complex> nodes, Complex zeta, double r) {
  double p = 1.0;
  for (const Complex& l : nodes) p *= std::norm((1.0 - r * r * std::conj(l) * zeta) / (r * zeta - r * l));
  return p;
}

double h2_norm_squared_closed(std::span<const Complex> nodes, Complex zeta, double r) {
  return r * r / (1.0 - r * r * std::norm(zeta)) * (stretched_modulus_product(nodes, zeta, r) - 1.0);
}

}  // namespace

Spectrum::Spectrum(std::vector<Complex> points) : points_(std::move(points)) {
  require(!points_.empty(), ErrorCode::invalid_argument, "spectrum must contain at least one point");
  for (const Complex& l : points_) {
    require(std::isfinite(l.real()) && std::isfinite(l.imag()), ErrorCode::non_finite, "spectrum point is not finite");
    if (std::abs(l) > 1.0 - kInteriorMargin)
      fail(ErrorCode::invalid_argument,
           "spectrum point on or outside the unit circle; perturb it radially inward below 1 - 1e-9");
  }
}

Spectrum Spectrum::sorted_by_modulus() const {
  std::vector<Complex> pts = points_;
  std::stable_sort(pts.begin(), pts.end(), [](const Complex& a, const Complex& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return Spectrum(std::move(pts));
}

double Spectrum::distance_to(Complex z) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& l : points_) best = std::min(best, std::abs(z - l));
  return best;
}

double Spectrum::min_conjugate_gap(Complex z) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& l : points_) best = std::min(best, std::abs(1.0 - std::conj(l) * z));
  return best;
}

double Spectrum::min_pairwise_gap() const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < points_.size(); ++a)
    for (std::size_t b = a + 1; b < points_.size(); ++b) best = std::min(best, std::abs(points_[a] - points_[b]));
  return best;
}

Complex blaschke_eval(const Spectrum& s, Complex z) { return blaschke_truncated_eval(s, 0, s.degree() - 1, z); }

Complex blaschke_truncated_eval(const Spectrum& s, std::size_t first, std::size_t last, Complex z) {
  require(first <= last && last < s.degree(), ErrorCode::invalid_argument, "truncated product needs first <= last < degree");
  Complex p = 1.0;
  for (std::size_t k = first; k <= last; ++k) {
    const Complex l = s[k];
    const Complex den = 1.0 - std::conj(l) * z;
    if (std::abs(den) <= kPoleGuard) fail(ErrorCode::invalid_argument, "evaluation point at a pole of the Blaschke product");
    p *= (z - l) / den;
  }
  return p;
}

double IdentitySides::relative_gap() const noexcept {
  const double scale = std::abs(rhs);
  const double diff = std::abs(lhs - rhs);
  return scale > 0.0 ? diff / scale : diff;
}

IdentitySides combi1_sides(const Spectrum& s, Complex zeta, std::size_t j, std::size_t i) {
  require(j < i && i < s.degree(), ErrorCode::invalid_argument, "combi1 needs j < i < degree");
  const std::span<const Complex> nodes = s.points().subspan(j, i - j + 1);
  require_distinct(nodes);
  require_away(nodes, zeta);

  IdentitySides out{};
  for (std::size_t mu = j; mu <= i; ++mu) {
    Complex num = 1.0;
    Complex den = 1.0;
    for (std::size_t nu = j; nu <= i; ++nu) {
      if (nu != i && nu != j) num *= 1.0 - std::conj(s[nu]) * s[mu];
      if (nu != mu) den *= s[mu] - s[nu];
    }
    out.lhs += num / (den * (zeta - s[mu]));
  }
  // The end factors cancel against the prefactor; dividing them out would be 0/0
  // whenever conj(lambda_i) zeta = 1 or conj(lambda_j) zeta = 1.
  out.rhs = 1.0;
  for (std::size_t mu = j; mu <= i; ++mu) {
    if (mu != i && mu != j) out.rhs *= 1.0 - std::conj(s[mu]) * zeta;
    out.rhs /= zeta - s[mu];
  }
  return out;
}

IdentitySides combi1_polynomial_sides(const Spectrum& s, Complex zeta, std::size_t j, std::size_t i) {
  require(j < i && i < s.degree(), ErrorCode::invalid_argument, "combi1 needs j < i < degree");
  require_distinct(s.points().subspan(j, i - j + 1));

  IdentitySides out{};
  for (std::size_t mu = j; mu <= i; ++mu) {
    Complex term = 1.0;
    for (std::size_t nu = j; nu <= i; ++nu) {
      if (nu != i && nu != j) term *= 1.0 - std::conj(s[nu]) * s[mu];
      if (nu != mu) term *= (zeta - s[nu]) / (s[mu] - s[nu]);
    }
    out.lhs += term;
  }
  out.rhs = 1.0;
  for (std::size_t mu = j; mu <= i; ++mu)
    if (mu != i && mu != j) out.rhs *= 1.0 - std::conj(s[mu]) * zeta;
  return out;
}

IdentitySides combi2_sides(const Spectrum& s, Complex zeta, double r, Combi2Part part, std::size_t l) {
  require_r(r);
  require_distinct(s.points());
  require_away(s.points(), zeta);
  const std::size_t m = s.degree();
  const double r2 = r * r;

  Complex forward = 1.0;
  for (std::size_t k = 0; k < m; ++k) forward *= (1.0 - r2 * std::conj(s[k]) * zeta) / (r * zeta - r * s[k]);

  IdentitySides out{};
  if (part == Combi2Part::first) {
    require(l < m, ErrorCode::invalid_argument, "combi2 part 1 needs l < degree");
    for (std::size_t i = 0; i < m; ++i) {
      Complex num = 1.0;
      Complex den = 1.0;
      for (std::size_t jj = 0; jj < m; ++jj) {
        if (jj != l) num *= 1.0 - r2 * std::conj(s[jj]) * s[i];
        if (jj != i) den *= r * s[i] - r * s[jj];
      }
      out.lhs += num / (den * (zeta - s[i]));
    }
    out.rhs = r / (1.0 - r2 * std::conj(s[l]) * zeta) * forward;
    return out;
  }

  const double denom = 1.0 - r2 * std::norm(zeta);
  require(std::abs(denom) >= 1e-12, ErrorCode::invalid_argument, "combi2 part 2 needs r|zeta| != 1");
  for (std::size_t i = 0; i < m; ++i) {
    Complex num = 1.0;
    Complex den = 1.0;
    for (std::size_t jj = 0; jj < m; ++jj) {
      num *= 1.0 - r2 * std::conj(s[jj]) * s[i];
      if (jj != i) den *= r * s[i] - r * s[jj];
    }
    out.lhs += num / (den * (zeta - s[i]) * (1.0 - r2 * std::conj(zeta) * s[i]));
  }
  Complex backward = 1.0;
  for (std::size_t k = 0; k < m; ++k)
    backward *= (r * std::conj(zeta) - r * std::conj(s[k])) / (1.0 - r2 * s[k] * std::conj(zeta));
  out.rhs = r / denom * (forward - backward);
  return out;
}

SmoothedInterpolant::SmoothedInterpolant(Spectrum spectrum, Complex zeta, double r)
    : spectrum_(std::move(spectrum)), zeta_(zeta), r_(r) {
  require_r(r);
  require(spectrum_.distance_to(zeta) > 1e-10, ErrorCode::invalid_argument, "zeta too close to the spectrum");
}

Complex SmoothedInterpolant::weight(std::size_t k) const {
  const std::span<const Complex> nodes = spectrum_.points();
  require_distinct(nodes);
  const double r2 = r_ * r_;
  Complex num = 1.0;
  Complex den = 1.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    num *= 1.0 - r2 * std::conj(nodes[j]) * nodes[k];
    if (j != k) den *= r_ * nodes[k] - r_ * nodes[j];
  }
  return num / (den * (zeta_ - nodes[k]));
}

Complex SmoothedInterpolant::eval(Complex z) const {
  const std::span<const Complex> nodes = spectrum_.points();
  Complex pole_part = 1.0;
  for (const Complex& l : nodes) {
    const Complex den = 1.0 - r_ * std::conj(l) * z;
    if (std::abs(den) <= kPoleGuard) fail(ErrorCode::invalid_argument, "evaluation point at a pole of the interpolant");
    pole_part /= den;
  }
  Complex sum{};
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    Complex term = weight(k);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (i != k) term *= z - r_ * nodes[i];
    sum += term;
  }
  return sum * pole_part;
}

double gtilde_h2_norm(const SmoothedInterpolant& g) {
  const std::span<const Complex> nodes = g.spectrum().points();
  const Complex zeta = g.zeta();
  const double r = g.r();
  double value_sq;
  if (std::abs(1.0 - r * r * std::norm(zeta)) < 1e-12) {
    constexpr double step = 1e-6;
    auto numer = [&](double rr) { return rr * rr * (stretched_modulus_product(nodes, zeta, rr) - 1.0); };
    auto denom = [&](double rr) { return 1.0 - rr * rr * std::norm(zeta); };
    value_sq = (numer(r + step) - numer(r - step)) / (denom(r + step) - denom(r - step));
  } else {
    value_sq = h2_norm_squared_closed(nodes, zeta, r);
  }
  return std::sqrt(std::max(value_sq, 0.0));
}

std::vector<Complex> gtilde_taylor_coefficients(const SmoothedInterpolant& g, std::size_t degree) {
  const std::span<const Complex> nodes = g.spectrum().points();
  const std::size_t m = nodes.size();
  const double r = g.r();
  std::vector<Complex> total(degree + 1, Complex{});
  std::vector<Complex> series(degree + 1);

  for (std::size_t k = 0; k < m; ++k) {
    std::fill(series.begin(), series.end(), Complex{});
    series[0] = 1.0;
    std::size_t poly_degree = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k) continue;
      const Complex root = r * nodes[i];
      const std::size_t top = std::min(poly_degree + 1, degree);
      for (std::size_t d = top; d > 0; --d) series[d] = series[d - 1] - root * series[d];
      series[0] = -root * series[0];
      ++poly_degree;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Complex a = r * std::conj(nodes[i]);
      if (a == Complex{}) continue;
      for (std::size_t d = 1; d <= degree; ++d) series[d] += a * series[d - 1];
    }
    const Complex w = g.weight(k);
    for (std::size_t d = 0; d <= degree; ++d) total[d] += w * series[d];
  }
  return total;
}

TaylorH2 gtilde_taylor_h2_oracle(const SmoothedInterpolant& g, std::size_t degree, double tail_tolerance) {
  require(degree >= 100, ErrorCode::invalid_argument, "Taylor oracle needs at least 100 coefficients");
  const std::vector<Complex> coeffs = gtilde_taylor_coefficients(g, degree);
  TaylorH2 out;
  double sum = 0.0;
  for (const Complex& c : coeffs) sum += std::norm(c);
  out.norm = std::sqrt(sum);

  // Coefficientwise majorant: |c_n| <= W 2^(m-1) C(n+m-1, m-1) rho^(n-m+1),
  // W = sum_k |weight_k|, rho = max r|lambda_i|.
  const std::span<const Complex> nodes = g.spectrum().points();
  const std::size_t m = nodes.size();
  double rho = 0.0;
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    rho = std::max(rho, g.r() * std::abs(nodes[k]));
    weight_sum += std::abs(g.weight(k));
  }
  double tail_sq = 0.0;
  if (rho > 0.0 && weight_sum > 0.0) {
    const double mm = static_cast<double>(m);
    const double log_prefactor = 2.0 * (std::log(weight_sum) + (mm - 1.0) * std::log(2.0));
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t n = degree + 1; n < degree + 10'000'000; ++n) {
      const double nn = static_cast<double>(n);
      const double log_binom = std::lgamma(nn + mm) - std::lgamma(mm) - std::lgamma(nn + 1.0);
      const double log_term = log_prefactor + 2.0 * (log_binom + (nn - mm + 1.0) * std::log(rho));
      const double term = std::exp(log_term);
      tail_sq += term;
      const bool decreasing = log_term < previous;
      previous = log_term;
      if (decreasing && (term <= 1e-40 * tail_sq || log_term < -700.0)) break;
    }
  }
  out.tail_bound = std::sqrt(tail_sq);
  if (out.tail_bound > tail_tolerance) fail(ErrorCode::invalid_argument, "Taylor degree too small for the requested tail bound");
  return out;
}

Complex evaluate_series(std::span<const Complex> coefficients, Complex z) noexcept {
  Complex acc{};
  for (std::size_t d = coefficients.size(); d-- > 0;) acc = acc * z + coefficients[d];
  return acc;
}

}  // namespace ratlas
