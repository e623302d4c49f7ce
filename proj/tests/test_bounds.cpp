#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bounds.hpp"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "linalg.hpp"
#include "markov.hpp"
#include "model.hpp"
#include "toeplitz.hpp"

using namespace ratlas;

namespace {

const double kUnitCirclePrefactor = std::sqrt(16.0 * std::numbers::e - 4.0);

BoundQuery query(std::vector<Complex> pts, Complex zeta, double c = 1.0) {
  return BoundQuery{Spectrum(std::move(pts)), zeta, c, std::nullopt};
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("optimal contraction bound examples") {
    CHECK(contraction_bound_optimal(query({0.0}, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    const ComplexMatrix m = model_operator_matrix(Spectrum({0.3, Complex(0.1, 0.5)})).matrix;
    const Complex zeta(0.2, -0.9);
    CHECK(std::abs(spectral_norm(resolvent_direct(m, zeta)) -
                   contraction_bound_optimal(query({0.3, Complex(0.1, 0.5)}, zeta))) <= 1e-9);
  }

  TEST_CASE("n-fold eigenvalue near 1 approaches the Toeplitz limit") {
    for (std::size_t n : {1u, 3u, 6u}) {
      const double limit = 1.0 / std::tan(std::numbers::pi / (4.0 * n));
      double previous_gap = std::numeric_limits<double>::infinity();
      for (double a : {0.9, 0.99, 0.999, 0.9999}) {
        const double scaled = (1.0 - a) * contraction_bound_optimal(query(std::vector<Complex>(n, a), 1.0));
        const double gap = std::abs(limit - scaled);
        CHECK(gap <= previous_gap + 1e-12);
        previous_gap = gap;
      }
      CHECK(previous_gap <= 1e-3 * limit);
    }
  }

  TEST_CASE("corollary bound examples and hypothesis") {
    CHECK(contraction_bound_corollary(query({0.0}, 1.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(error_code_of([] { contraction_bound_corollary(query({0.2}, 1.5)); }) == ErrorCode::hypothesis_violation);
    for (double a : {0.3, 0.8, 0.95}) {
      const BoundQuery q = query(std::vector<Complex>(4, a), 1.0);
      const double expected = toeplitz_norm(4, 2.0) / (1.0 - a);
      CHECK(contraction_bound_corollary(q) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(contraction_bound_corollary(q) >= contraction_bound_optimal(q) * (1.0 - 1e-12));
    }
  }

  TEST_CASE("beta refined bound examples") {
    for (std::size_t n = 1; n <= 8; ++n) {
      const Spectrum s(std::vector<Complex>(n, 0.0));
      CHECK(refinement_beta(s) == doctest::Approx(1.0));
      const double closed = 1.0 / (2.0 * std::sin(std::numbers::pi / (4.0 * n + 2.0)));
      CHECK(contraction_bound_beta_refined(s) == doctest::Approx(closed).epsilon(1e-10));
    }
    CHECK(error_code_of([] { contraction_bound_beta_refined(Spectrum({1.0 - 1e-11})); }).has_value());
  }

  TEST_CASE("beta refinement recovers the corollary as the eigenvalue tends to 1") {
    double previous = std::numeric_limits<double>::infinity();
    for (double a : {0.9, 0.99, 0.999}) {
      const Spectrum s(std::vector<Complex>(5, a));
      CHECK(refinement_beta(s) == doctest::Approx(1.0 + a).epsilon(1e-12));
      const double ratio =
          contraction_bound_beta_refined(s) / contraction_bound_corollary(BoundQuery{s, 1.0, 1.0, std::nullopt});
      CHECK(ratio <= 1.0 + 1e-12);
      CHECK(1.0 - ratio <= previous);
      previous = 1.0 - ratio;
    }
    CHECK(previous <= 1e-3);
  }

  TEST_CASE("refined bound never exceeds the corollary") {
    Rng rng(201);
    for (int t = 0; t < 100; ++t) {
      const Spectrum s = random_spectrum(rng, 1 + rng.index(10), 0.99, 0.0);
      if (s.distance_to(1.0) < 1e-3) continue;
      CHECK(contraction_bound_beta_refined(s) <=
            contraction_bound_corollary(BoundQuery{s, 1.0, 1.0, std::nullopt}) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("power bounded bound examples") {
    const double v = power_bounded_bound(query({0.0}, 1.0));
    CHECK(v == doctest::Approx(2.0 * std::sqrt(4.0 * std::numbers::e - 1.0)).epsilon(1e-13));
    CHECK(v == doctest::Approx(6.2843).epsilon(1e-4));
    CHECK(v >= spectral_norm(resolvent_direct(ComplexMatrix(1, 1), 1.0)));
    CHECK(power_bounded_bound(query({0.3, -0.2}, 2.0, 2.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(power_bounded_bound(query({Complex(0.1, 0.7)}, Complex(0.0, 3.0), 1.5)) == doctest::Approx(0.75));
  }

  TEST_CASE("unit circle bound examples") {
    CHECK(unit_circle_bound(Spectrum({0.0}), 1.0, 1.0) == doctest::Approx(kUnitCirclePrefactor).epsilon(1e-14));
    CHECK(kUnitCirclePrefactor == doctest::Approx(6.2843).epsilon(1e-4));
    const double v = unit_circle_bound(Spectrum({0.9}), 2.0, 1.0);
    CHECK(v == doctest::Approx(2.0 * kUnitCirclePrefactor / 0.1).epsilon(1e-12));
    CHECK(v == doctest::Approx(125.686).epsilon(1e-4));
    CHECK_THROWS_AS(unit_circle_bound(Spectrum({0.0}), 1.0, 0.9), Error);
    // Prefactor per eigenvalue against the sharp contraction constant.
    for (std::size_t n = 1; n <= 20; ++n)
      CHECK(1.0 / std::tan(std::numbers::pi / (4.0 * n)) / n <= 4.0 / std::numbers::pi + 1e-12);
    CHECK(kUnitCirclePrefactor > 4.0 / std::numbers::pi);
  }

  TEST_CASE("raw Wiener bound examples") {
    BoundQuery q = query({0.0}, 1.0);
    q.r_override = 0.8;
    CHECK(raw_wiener_bound(q) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    q.r_override = 1.2;
    CHECK_THROWS_AS(raw_wiener_bound(q), Error);
    q.r_override = 0.0;
    CHECK_THROWS_AS(raw_wiener_bound(q), Error);
  }

  TEST_CASE("default stretch radius") {
    const Spectrum s({0.5, -0.5});
    const double r = default_stretch_radius(s, 1.0);
    CHECK(1.0 - r * r == doctest::Approx(0.5 / 4.0).epsilon(1e-14));
    // |m| = 1 with the maximal conjugate gap hits the floor.
    CHECK(default_stretch_radius(Spectrum({-0.999999999}), 1.0) >= 1e-6);
    CHECK(default_stretch_radius(s, 4.0) == doctest::Approx(0.5));
  }

  TEST_CASE("bound report on an extremal matrix meets the optimal bound") {
    BoundRequest req;
    req.matrix = extremal_contraction(4, 0.9);
    req.grid = {1.0};
    const BoundSweep sweep = bound_report(req);
    REQUIRE(sweep.reports.size() == 1);
    const BoundReport& r = sweep.reports[0];
    REQUIRE(r.actual_norm);
    REQUIRE(r.optimal_contraction_bound);
    CHECK(*r.actual_norm <= *r.optimal_contraction_bound * (1.0 + 1e-9));
    CHECK(std::abs(*r.actual_norm - *r.optimal_contraction_bound) <= 1e-9 * *r.optimal_contraction_bound);
    CHECK(r.equality);
    CHECK(r.beta_refined_bound);
    CHECK(r.unit_circle_bound);
    CHECK(sweep.violation_count() == 0);
  }

  TEST_CASE("bound report on a random contraction has no violations") {
    Rng rng(202);
    BoundRequest req;
    req.matrix = random_contraction(rng, 6);
    req.grid = circle_points(1.0, 32, 0.1);
    const BoundSweep sweep = bound_report(req);
    CHECK(sweep.reports.size() == 32);
    CHECK(sweep.hypothesis_holds);
    CHECK(sweep.violation_count() == 0);
    for (const BoundReport& r : sweep.reports) {
      CHECK(r.actual_norm);
      CHECK(r.corollary_bound);
      CHECK(r.power_bounded_bound);
    }
  }

  TEST_CASE("bound report from a spectrum only") {
    BoundRequest req;
    req.spectrum = Spectrum({0.5, Complex(0.3, 0.2)});
    req.grid = {1.0, Complex(0.0, 0.5), 2.0};
    const BoundSweep sweep = bound_report(req);
    REQUIRE(sweep.reports.size() == 3);
    for (const BoundReport& r : sweep.reports) CHECK(!r.actual_norm);
    CHECK(sweep.reports[0].unit_circle_bound);
    CHECK(!sweep.reports[1].unit_circle_bound);
    CHECK(!sweep.reports[2].corollary_bound);
    CHECK(sweep.reports[2].power_bounded_bound == doctest::Approx(1.0));
    CHECK(!sweep.matrix_norm);
  }

  TEST_CASE("bound report skips grid points on the spectrum") {
    BoundRequest req;
    req.spectrum = Spectrum({0.5});
    req.grid = {0.5, 1.0};
    const BoundSweep sweep = bound_report(req);
    CHECK(sweep.reports[0].skipped);
    CHECK(!sweep.reports[0].warning.empty());
    CHECK(!sweep.reports[1].skipped);
  }

  TEST_CASE("bound report argument checks") {
    BoundRequest none;
    none.grid = {1.0};
    CHECK_THROWS_AS(bound_report(none), Error);
    BoundRequest both = none;
    both.matrix = ComplexMatrix(1, 1);
    both.spectrum = Spectrum({0.0});
    CHECK_THROWS_AS(bound_report(both), Error);
  }

  TEST_CASE("bound report is independent of the thread count") {
    Rng rng(203);
    BoundRequest req;
    req.matrix = random_contraction(rng, 5);
    req.grid = circle_points(0.9, 24);
    req.threads = 1;
    const BoundSweep serial = bound_report(req);
    req.threads = 4;
    const BoundSweep parallel = bound_report(req);
    REQUIRE(serial.reports.size() == parallel.reports.size());
    for (std::size_t k = 0; k < serial.reports.size(); ++k) {
      CHECK(serial.reports[k].zeta == parallel.reports[k].zeta);
      CHECK(serial.reports[k].optimal_contraction_bound == parallel.reports[k].optimal_contraction_bound);
      CHECK(serial.reports[k].actual_norm == parallel.reports[k].actual_norm);
    }
  }

  TEST_CASE("property: domination chain for random contractions") {
    Rng rng(204);
    for (int t = 0; t < 50; ++t) {
      const ComplexMatrix a = random_contraction(rng, 1 + rng.index(8), 0.95);
      const Spectrum s(eigenvalues_dense(a));
      for (int k = 0; k < 32; ++k) {
        const Complex zeta = k % 4 == 0 ? std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)) : rng.in_disk(1.0);
        if (s.distance_to(zeta) < 1e-6) continue;
        const BoundQuery q{s, zeta, 1.0, std::nullopt};
        const double actual = spectral_norm(resolvent_direct(a, zeta));
        const double optimal = contraction_bound_optimal(q);
        CHECK(actual <= optimal * (1.0 + kDominationSlack));
        CHECK(optimal <= contraction_bound_corollary(q) * (1.0 + kDominationSlack));
      }
    }
  }

  TEST_CASE("property: power bounded domination for Markov perturbations") {
    Rng rng(205);
    for (int t = 0; t < 20; ++t) {
      MarkovModel chain = validate_stochastic(random_stochastic(rng, 2 + rng.index(7)));
      const ComplexMatrix a = chain.transition - stationary_projection(chain);
      CHECK(power_sup_norm(a, NormKind::one_to_one, 100) <= 2.0 + 1e-12);
      const Spectrum s(eigenvalues_dense(a));
      for (const Complex& zeta : circle_points(1.0, 16, 0.05 * t)) {
        if (s.distance_to(zeta) < 1e-6) continue;
        const double actual = induced_one_norm(resolvent_direct(a, zeta));
        CHECK(actual <= power_bounded_bound(BoundQuery{s, zeta, 2.0, std::nullopt}) * (1.0 + kDominationSlack));
      }
    }
  }

  TEST_CASE("property: power bounded bound equals the unit circle bound on the circle") {
    Rng rng(206);
    for (int t = 0; t < 100; ++t) {
      const Spectrum s = random_spectrum(rng, 1 + rng.index(10), 0.98, 0.0);
      const Complex zeta = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
      const double c = rng.uniform(1.0, 5.0);
      const double a = power_bounded_bound(BoundQuery{s, zeta, c, std::nullopt});
      CHECK(std::abs(a - unit_circle_bound(s, c, zeta)) <= 1e-12 * a);
    }
  }

  TEST_CASE("property: raw bound sits below the power bounded bound") {
    Rng rng(207);
    for (int t = 0; t < 200; ++t) {
      const Spectrum s = random_spectrum(rng, 1 + rng.index(8), 0.95, 1e-3);
      const Complex zeta = t % 2 == 0 ? std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)) : rng.in_disk(1.0);
      if (s.distance_to(zeta) < 1e-3) continue;
      const BoundQuery q{s, zeta, 1.0, std::nullopt};
      const double raw = raw_wiener_bound(q);
      CHECK(raw <= power_bounded_bound(q) * (1.0 + 1e-12));
      CHECK(raw_wiener_bound(q, RChoice::refined) <= raw * (1.0 + 1e-15));
    }
  }

  TEST_CASE("property: qualitative bound majorizes inside the disk") {
    Rng rng(208);
    for (int t = 0; t < 200; ++t) {
      const Spectrum s = random_spectrum(rng, 1 + rng.index(8), 0.95, 0.0);
      const Complex zeta = rng.in_disk(0.999);
      if (s.distance_to(zeta) < 1e-6) continue;
      const BoundQuery q{s, zeta, rng.uniform(1.0, 3.0), std::nullopt};
      CHECK(power_bounded_bound(q) <= qualitative_interior_bound(q) * (1.0 + 1e-12));
    }
    CHECK_THROWS_AS(qualitative_interior_bound(query({0.1}, 1.0)), Error);
  }
}
