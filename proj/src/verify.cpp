#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "blaschke.hpp"
#include "bounds.hpp"
#include "fixtures.hpp"
#include "linalg.hpp"
#include "markov.hpp"
#include "model.hpp"
#include "toeplitz.hpp"

namespace ratlas {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIdentityTol = 1e-10;
constexpr double kH2Tol = 1e-6;

Complex unit_point(Rng& rng) { return std::polar(1.0, 2.0 * kPi * rng.uniform()); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

CriterionResult toeplitz_criterion() {
  double closed_err = 0.0, svd_err = 0.0;
  for (std::size_t n = 1; n <= 40; ++n) {
    const double nn = static_cast<double>(n);
    closed_err = std::max(closed_err, std::abs(toeplitz_norm(n, 2.0) - 1.0 / std::tan(kPi / (4.0 * nn))));
    closed_err = std::max(closed_err, std::abs(toeplitz_norm(n, 1.0) - 1.0 / (2.0 * std::sin(kPi / (4.0 * nn + 2.0)))));
    for (int k = 0; k <= 8; ++k) {
      const double beta = 0.25 * k;
      const double oracle = spectral_norm(toeplitz_matrix(make_toeplitz_spec(n, beta)));
      svd_err = std::max(svd_err, std::abs(toeplitz_norm(n, beta) - oracle));
    }
  }
  return {1, "toeplitz closed forms", closed_err <= 1e-10 && svd_err <= 1e-8,
          "closed-form err " + fmt(closed_err) + ", svd err " + fmt(svd_err)};
}

CriterionResult model_resolvent_criterion(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Spectrum s = random_spectrum(rng, 1 + rng.index(12), 0.95);
    const ComplexMatrix m = model_operator_matrix(s).matrix;
    for (int k = 0; k < 10;) {
      const Complex zeta = rng.in_disk(1.5);
      if (s.distance_to(zeta) < 1e-2) continue;
      ++k;
      worst = std::max(worst, max_abs_entry(model_resolvent_matrix(s, zeta) - resolvent_direct(m, zeta)));
    }
  }
  return {2, "model resolvent formula", worst <= 1e-9, "max entry err " + fmt(worst)};
}

CriterionResult optimality_criterion() {
  double pattern_err = 0.0;
  bool monotone = true, close = true;
  for (std::size_t n = 2; n <= 8; ++n) {
    const double limit = 1.0 / std::tan(kPi / (4.0 * static_cast<double>(n)));
    double previous = 0.0;
    for (double a : {0.9, 0.99, 0.999}) {
      const ComplexMatrix scaled = resolvent_direct(extremal_contraction(n, a), 1.0) * Complex(1.0 - a);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double expected = i < j ? 0.0 : (i == j ? 1.0 : 1.0 + a);
          pattern_err = std::max(pattern_err, std::abs(std::abs(scaled(i, j)) - expected));
        }
      const double norm = spectral_norm(scaled);
      monotone = monotone && norm > previous;
      previous = norm;
      if (a == 0.999) close = close && std::abs(norm - limit) <= 2.0 * (1.0 - a) * static_cast<double>(n) * limit;
    }
  }
  return {3, "contraction optimality", pattern_err <= 1e-8 && monotone && close,
          "pattern err " + fmt(pattern_err) + (monotone ? ", monotone" : ", not monotone") +
              (close ? ", near limit" : ", far from limit")};
}

CriterionResult domination_criterion(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t violations = 0, hypothesis_failures = 0, points = 0;
  for (int t = 0; t < 50; ++t) {
    BoundRequest req;
    req.matrix = random_contraction(rng, 1 + rng.index(8), 0.95);
    for (int k = 0; k < 32; ++k) req.grid.push_back(rng.in_disk(1.0));
    const BoundSweep sweep = bound_report(req);
    hypothesis_failures += sweep.hypothesis_holds ? 0 : 1;
    for (const BoundReport& r : sweep.reports) {
      if (r.skipped) continue;
      ++points;
      const double act = *r.actual_norm, opt = *r.optimal_contraction_bound, cor = *r.corollary_bound;
      if (act > opt * (1.0 + kDominationSlack) || opt > cor * (1.0 + kDominationSlack)) ++violations;
    }
  }
  std::size_t power_violations = 0;
  for (int t = 0; t < 20; ++t) {
    MarkovModel chain = validate_stochastic(random_stochastic(rng, 3 + rng.index(6)));
    BoundRequest req;
    req.matrix = chain.transition - stationary_projection(chain);
    req.assumption = Assumption::power_bounded;
    req.power_bound_constant = 2.0;
    req.norm = NormKind::one_to_one;
    req.grid = circle_points(1.0, 32, 2.0 * kPi * rng.uniform());
    const BoundSweep sweep = bound_report(req);
    hypothesis_failures += sweep.hypothesis_holds ? 0 : 1;
    for (const BoundReport& r : sweep.reports)
      if (!r.skipped && *r.actual_norm > *r.power_bounded_bound * (1.0 + kDominationSlack)) ++power_violations;
  }
  return {4, "domination suite", violations == 0 && power_violations == 0 && hypothesis_failures == 0,
          std::to_string(points) + " contraction points, " + std::to_string(violations) + " + " +
              std::to_string(power_violations) + " violations"};
}

CriterionResult identity_criterion(std::uint64_t seed) {
  bool ok = true;
  std::string detail;
  Rng rng(seed);
  for (IdentityKind kind : {IdentityKind::combi1, IdentityKind::combi2_first, IdentityKind::combi2_second,
                            IdentityKind::gtilde_h2}) {
    const IdentitySuiteResult r = identity_suite(kind, kind == IdentityKind::gtilde_h2 ? 25 : 100, rng.next_seed());
    ok = ok && r.passed();
    if (!detail.empty()) detail += ", ";
    detail += std::string(identity_name(kind)) + " " + fmt(r.max_relative_gap);
  }
  return {5, "identity suites", ok, detail};
}

CriterionResult markov_criterion(std::uint64_t seed) {
  Rng rng(seed);
  std::size_t failures = 0;
  double worst_power = 0.0;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + rng.index(6);
    MarkovModel chain = validate_stochastic(random_stochastic(rng, n));
    const double kappa = kappa_cl_exact(chain);
    const KappaClassicalBounds b = kappa_cl_bounds(chain);
    const double gap = b.subdominant_gap;
    const double upper = std::min(static_cast<double>(n), 2.0 * std::sqrt(16.0 * std::numbers::e - 4.0) * static_cast<double>(n)) / gap;
    if (1.0 / gap > kappa + 1e-8 || kappa > upper + 1e-8) ++failures;
    const double p = power_sup_norm(chain.transition - stationary_projection(chain), NormKind::one_to_one, 100);
    worst_power = std::max(worst_power, p);
  }
  const std::size_t n = 5;
  MarkovModel uniform = validate_stochastic(ComplexMatrix(n, n, std::vector<Complex>(n * n, 1.0 / static_cast<double>(n))));
  const double kappa_uniform = kappa_cl_exact(uniform);
  const bool ok = failures == 0 && worst_power <= 2.0 + 1e-12 && std::abs(kappa_uniform - 1.0) <= 1e-12;
  return {6, "markov sandwich", ok,
          std::to_string(failures) + " sandwich failures, max power norm " + fmt(worst_power) + ", uniform kappa - 1 = " +
              fmt(kappa_uniform - 1.0)};
}

CriterionResult consistency_criterion(std::uint64_t seed) {
  Rng rng(seed);
  double rel = 0.0;
  std::size_t raw_failures = 0;
  for (int t = 0; t < 100; ++t) {
    const Spectrum s = random_spectrum(rng, 1 + rng.index(8), 0.95);
    const double c = rng.uniform(1.0, 4.0);
    Complex zeta = unit_point(rng);
    if (s.distance_to(zeta) < 1e-6) continue;
    const BoundQuery on{ s, zeta, c, std::nullopt };
    const double reference = std::sqrt(16.0 * std::numbers::e - 4.0) * static_cast<double>(s.degree()) * c / s.distance_to(zeta);
    rel = std::max(rel, std::abs(power_bounded_bound(on) - reference) / reference);
    if (raw_wiener_bound(on) > power_bounded_bound(on) * (1.0 + 1e-12)) ++raw_failures;

    zeta = rng.in_disk(1.0);
    if (s.distance_to(zeta) < 1e-6) continue;
    const BoundQuery in{ s, zeta, c, std::nullopt };
    if (raw_wiener_bound(in) > power_bounded_bound(in) * (1.0 + 1e-12)) ++raw_failures;
  }
  return {7, "bound consistency", rel <= 1e-12 && raw_failures == 0,
          "unit-circle rel err " + fmt(rel) + ", " + std::to_string(raw_failures) + " raw-bound failures"};
}

}  // namespace

const char* identity_name(IdentityKind kind) noexcept {
  switch (kind) {
    case IdentityKind::combi1: return "combi1";
    case IdentityKind::combi2_first: return "combi2-part1";
    case IdentityKind::combi2_second: return "combi2-part2";
    case IdentityKind::gtilde_h2: return "gtilde-h2";
  }
  return "unknown";
}

IdentitySuiteResult identity_suite(IdentityKind kind, std::size_t instances, std::uint64_t seed) {
  Rng rng(seed);
  IdentitySuiteResult out{kind, instances, 0, 0.0, kind == IdentityKind::gtilde_h2 ? kH2Tol : kIdentityTol};
  for (std::size_t t = 0; t < instances; ++t) {
    double gap = 0.0;
    switch (kind) {
      case IdentityKind::combi1: {
        const Spectrum s = random_spectrum(rng, 2 + rng.index(7), 0.9, 1e-2);
        const std::size_t i = 1 + rng.index(s.degree() - 1);
        const std::size_t j = rng.index(i);
        gap = combi1_sides(s, unit_point(rng), j, i).relative_gap();
        break;
      }
      case IdentityKind::combi2_first:
      case IdentityKind::combi2_second: {
        const Spectrum s = random_spectrum(rng, 1 + rng.index(8), 0.9, 1e-2);
        const double r = rng.uniform(0.5, 0.99);
        const Complex zeta = unit_point(rng);
        const auto part = kind == IdentityKind::combi2_first ? Combi2Part::first : Combi2Part::second;
        gap = combi2_sides(s, zeta, r, part, rng.index(s.degree())).relative_gap();
        break;
      }
      case IdentityKind::gtilde_h2: {
        const Spectrum s = random_spectrum(rng, 1 + rng.index(5), 0.9, 1e-2);
        const bool on_circle = t % 2 == 0;
        Complex zeta;
        do {
          zeta = on_circle ? unit_point(rng) : rng.in_disk(1.0);
        } while (s.distance_to(zeta) < 1e-3);
        const double r = on_circle ? default_stretch_radius(s, zeta) : rng.uniform(0.5, 0.99);
        const SmoothedInterpolant g(s, zeta, r);
        const double closed = gtilde_h2_norm(g);
        const double taylor = gtilde_taylor_h2_oracle(g, 5000).norm;
        gap = std::abs(closed - taylor) / std::max(closed, 1e-300);
        break;
      }
    }
    out.max_relative_gap = std::max(out.max_relative_gap, gap);
    if (!(gap <= out.tolerance)) ++out.failures;
  }
  return out;
}

std::vector<CriterionResult> run_verification(std::uint64_t seed) {
  Rng streams(seed);
  std::vector<CriterionResult> results;
  results.push_back(toeplitz_criterion());
  results.push_back(model_resolvent_criterion(streams.next_seed()));
  results.push_back(optimality_criterion());
  results.push_back(domination_criterion(streams.next_seed()));
  results.push_back(identity_criterion(streams.next_seed()));
  results.push_back(markov_criterion(streams.next_seed()));
  results.push_back(consistency_criterion(streams.next_seed()));
  return results;
}

}  // namespace ratlas
