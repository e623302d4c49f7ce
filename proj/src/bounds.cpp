#include "bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "model.hpp"
#include "toeplitz.hpp"

namespace ratlas {
namespace {

constexpr double kCircleTol = 1e-12;
constexpr double kRadiusFloor = 1e-6;
constexpr double kEqualityTol = 1e-9;

double unit_circle_prefactor() { return std::sqrt(16.0 * std::numbers::e - 4.0); }

void check_query(const BoundQuery& q) {
  require(std::isfinite(q.zeta.real()) && std::isfinite(q.zeta.imag()), ErrorCode::non_finite, "zeta must be finite");
  require(std::isfinite(q.power_bound_constant) && q.power_bound_constant > 0.0, ErrorCode::invalid_argument,
          "power-bound constant must be positive");
  require(q.spectrum.distance_to(q.zeta) > kSpectrumGuard, ErrorCode::invalid_argument,
          "zeta within 1e-10 of the spectrum");
}

bool in_closed_disk(Complex z) { return std::abs(z) <= 1.0 + kCircleTol; }

double raw_at(const BoundQuery& q, double r) {
  const SmoothedInterpolant g(q.spectrum, q.zeta, r);
  return q.power_bound_constant * std::sqrt(1.0 / (1.0 - r * r)) * gtilde_h2_norm(g);
}

std::string describe(const char* what, Complex zeta, double lhs, double rhs) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at zeta=(" << zeta.real() << ',' << zeta.imag() << "): " << lhs << " > " << rhs;
  return os.str();
}

}  // namespace

double contraction_bound_optimal(const BoundQuery& q) {
  check_query(q);
  return spectral_norm(model_resolvent_matrix(q.spectrum, q.zeta));
}

double contraction_bound_corollary(const BoundQuery& q) {
  check_query(q);
  require(in_closed_disk(q.zeta), ErrorCode::hypothesis_violation, "corollary bound needs |zeta| <= 1");
  const double denom = q.spectrum.min_conjugate_gap(q.zeta) * std::abs(blaschke_eval(q.spectrum, q.zeta));
  return toeplitz_norm(q.spectrum.degree(), 2.0) / denom;
}

double refinement_beta(const Spectrum& s) {
  double beta = 0.0;
  for (const Complex& l : s.points()) beta = std::max(beta, (1.0 - std::norm(l)) / std::abs(1.0 - l));
  return std::clamp(beta, 0.0, 2.0);
}

double contraction_bound_beta_refined(const Spectrum& s) {
  const double gap = s.distance_to(1.0);
  require(gap >= kSpectrumGuard, ErrorCode::invalid_argument, "spectrum touches 1");
  return toeplitz_norm(s.degree(), refinement_beta(s)) / gap;
}

double power_bounded_bound(const BoundQuery& q) {
  check_query(q);
  const double c = q.power_bound_constant;
  if (!in_closed_disk(q.zeta)) return c / (std::abs(q.zeta) - 1.0);

  const double m = static_cast<double>(q.spectrum.degree());
  const double d = q.spectrum.min_conjugate_gap(q.zeta);
  const double z2 = std::min(std::norm(q.zeta), 1.0);
  const double b2 = std::norm(blaschke_eval(q.spectrum, q.zeta));
  require(b2 > 0.0, ErrorCode::invalid_argument, "zeta is a zero of the Blaschke product");
  const double inner = 2.0 * m - 2.0 * m * z2 + z2 * d;
  return 2.0 * m * c / (std::sqrt(d) * std::sqrt(inner)) * std::sqrt(4.0 * std::numbers::e / b2 - 1.0);
}

double unit_circle_bound(const Spectrum& s, double c, Complex zeta) {
  require(std::abs(std::abs(zeta) - 1.0) <= kCircleTol, ErrorCode::hypothesis_violation,
          "unit-circle bound needs |zeta| = 1");
  require(std::isfinite(c) && c > 0.0, ErrorCode::invalid_argument, "power-bound constant must be positive");
  const double gap = s.distance_to(zeta);
  require(gap > kSpectrumGuard, ErrorCode::invalid_argument, "zeta within 1e-10 of the spectrum");
  return unit_circle_prefactor() * static_cast<double>(s.degree()) * c / gap;
}

double qualitative_interior_bound(const BoundQuery& q) {
  check_query(q);
  const double rho = std::abs(q.zeta);
  require(rho < 1.0, ErrorCode::hypothesis_violation, "interior estimate needs |zeta| < 1");
  const double m = static_cast<double>(q.spectrum.degree());
  return std::sqrt(8.0 * std::numbers::e * m) * q.power_bound_constant / std::pow(1.0 - rho, 1.5) /
         std::abs(blaschke_eval(q.spectrum, q.zeta));
}

double default_stretch_radius(const Spectrum& s, Complex zeta) {
  const double rho = std::abs(zeta);
  if (rho > 1.0 + kCircleTol) return std::sqrt(1.0 / rho);
  const double deficit = s.min_conjugate_gap(zeta) / (2.0 * static_cast<double>(s.degree()));
  return std::max(std::sqrt(std::max(1.0 - deficit, 0.0)), kRadiusFloor);
}

double raw_wiener_bound(const BoundQuery& q, RChoice choice) {
  check_query(q);
  if (q.r_override) {
    const double r = *q.r_override;
    require(std::isfinite(r) && r > 0.0 && r < 1.0, ErrorCode::invalid_argument, "r must lie in (0, 1)");
  }
  const double base_r = q.r_override.value_or(default_stretch_radius(q.spectrum, q.zeta));
  const double base = raw_at(q, base_r);
  if (choice == RChoice::given_or_default) return base;

  // Golden-section search stays inside r |zeta| < 1 where g~ is analytic on the disk.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = kRadiusFloor;
  double hi = std::min(1.0 - 1e-9, 1.0 / std::max(std::abs(q.zeta), 1.0) - 1e-9);
  if (hi <= lo) return base;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = raw_at(q, x1);
  double f2 = raw_at(q, x2);
  for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = raw_at(q, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = raw_at(q, x2);
    }
  }
  return std::min({base, f1, f2});
}

std::size_t BoundSweep::violation_count() const noexcept {
  std::size_t count = 0;
  for (const BoundReport& r : reports) count += r.violations.size();
  return count;
}

namespace {

BoundReport evaluate_point(const BoundRequest& req, const BoundSweep& sweep, Complex zeta) {
  BoundReport rep;
  rep.zeta = zeta;
  if (sweep.spectrum.distance_to(zeta) <= kSpectrumGuard) {
    rep.skipped = true;
    rep.warning = "grid point within 1e-10 of the spectrum";
    return rep;
  }

  const bool contraction = req.assumption == Assumption::contraction;
  const BoundQuery q{sweep.spectrum, zeta, contraction ? 1.0 : req.power_bound_constant, std::nullopt};
  const bool on_circle = std::abs(std::abs(zeta) - 1.0) <= kCircleTol;

  if (contraction) {
    rep.optimal_contraction_bound = contraction_bound_optimal(q);
    if (in_closed_disk(zeta)) rep.corollary_bound = contraction_bound_corollary(q);
    if (std::abs(zeta - 1.0) <= kCircleTol && sweep.spectrum.distance_to(1.0) >= kSpectrumGuard)
      rep.beta_refined_bound = contraction_bound_beta_refined(sweep.spectrum);
  }
  rep.power_bounded_bound = power_bounded_bound(q);
  if (on_circle) rep.unit_circle_bound = unit_circle_bound(sweep.spectrum, q.power_bound_constant, zeta);
  if (in_closed_disk(zeta)) rep.raw_wiener_bound = raw_wiener_bound(q);

  if (req.matrix) rep.actual_norm = matrix_norm(resolvent_direct(*req.matrix, zeta), req.norm);

  auto check = [&](const char* what, const std::optional<double>& low, const std::optional<double>& high) {
    if (low && high && *low > *high * (1.0 + kDominationSlack)) rep.violations.push_back(describe(what, zeta, *low, *high));
  };
  check("optimal bound exceeds corollary bound", rep.optimal_contraction_bound, rep.corollary_bound);
  check("refined bound exceeds corollary bound", rep.beta_refined_bound, rep.corollary_bound);
  if (in_closed_disk(zeta)) check("raw Wiener bound exceeds power-bounded bound", rep.raw_wiener_bound, rep.power_bounded_bound);
  if (rep.actual_norm && sweep.hypothesis_holds) {
    check("resolvent norm exceeds optimal bound", rep.actual_norm, rep.optimal_contraction_bound);
    check("resolvent norm exceeds corollary bound", rep.actual_norm, rep.corollary_bound);
    check("resolvent norm exceeds refined bound", rep.actual_norm, rep.beta_refined_bound);
    check("resolvent norm exceeds power-bounded bound", rep.actual_norm, rep.power_bounded_bound);
    check("resolvent norm exceeds unit-circle bound", rep.actual_norm, rep.unit_circle_bound);
  }
  if (contraction && rep.actual_norm && rep.optimal_contraction_bound) {
    rep.equality = std::abs(*rep.actual_norm - *rep.optimal_contraction_bound) <= kEqualityTol * *rep.optimal_contraction_bound;
  }
  return rep;
}

Spectrum sweep_spectrum(const BoundRequest& req) {
  require(req.matrix.has_value() != req.spectrum.has_value(), ErrorCode::invalid_argument,
          "supply exactly one of a matrix or a spectrum");
  if (req.spectrum) return *req.spectrum;
  require(req.matrix->is_square() && !req.matrix->empty(), ErrorCode::invalid_argument, "matrix must be square");
  return Spectrum(eigenvalues_dense(*req.matrix));
}

}  // namespace

BoundSweep bound_report(const BoundRequest& req) {
  require(!req.grid.empty(), ErrorCode::invalid_argument, "grid must not be empty");
  if (req.assumption == Assumption::contraction) {
    require(req.norm == NormKind::spectral, ErrorCode::invalid_argument,
            "contraction bounds are stated for the spectral norm");
  } else {
    require(std::isfinite(req.power_bound_constant) && req.power_bound_constant > 0.0, ErrorCode::invalid_argument,
            "power-bound constant must be positive");
  }

  BoundSweep sweep{sweep_spectrum(req), std::nullopt, std::nullopt, true, {}};
  if (req.matrix) {
    if (req.assumption == Assumption::contraction) {
      sweep.matrix_norm = spectral_norm(*req.matrix);
      sweep.hypothesis_holds = *sweep.matrix_norm <= 1.0 + 1e-12;
    } else {
      sweep.power_sup_estimate = power_sup_norm(*req.matrix, req.norm, 200);
      sweep.hypothesis_holds = *sweep.power_sup_estimate <= req.power_bound_constant * (1.0 + 1e-12);
    }
  }

  const std::size_t count = req.grid.size();
  sweep.reports.resize(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        sweep.reports[i] = evaluate_point(req, sweep, req.grid[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned threads = req.threads ? req.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return sweep;
}

}  // namespace ratlas
