#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "fixtures.hpp"
#include "helpers.hpp"
#include "linalg.hpp"
#include "markov.hpp"

using namespace ratlas;

namespace {

const double kUnitCirclePrefactor = std::sqrt(16.0 * std::numbers::e - 4.0);

ComplexMatrix two_state(double p, double q) { return real_matrix(2, 2, {1 - p, q, p, 1 - q}); }

ComplexMatrix uniform_chain(std::size_t n) {
  return ComplexMatrix::from_real(n, n, std::vector<double>(n * n, 1.0 / static_cast<double>(n)));
}

ComplexMatrix phase_gate_superoperator() {
  const ComplexMatrix s = ComplexMatrix::diagonal(std::vector<Complex>{1.0, Complex(0.0, 1.0)});
  return kraus_superoperator({s});
}

double zero_sum_ratio(const ComplexMatrix& z, const std::vector<double>& delta) {
  double in = 0.0, out = 0.0;
  for (double d : delta) in += std::abs(d);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < z.cols(); ++j) acc += z(i, j) * delta[j];
    out += std::abs(acc);
  }
  return out / in;
}

}  // namespace

TEST_SUITE("markov") {
  TEST_CASE("validation examples") {
    CHECK_NOTHROW(validate_stochastic(uniform_chain(5)));
    CHECK_NOTHROW(validate_stochastic(ComplexMatrix::identity(3)));
    try {
      validate_stochastic(real_matrix(2, 2, {0.5, 0.2, 0.5, 0.9}));
      FAIL("expected a column-sum error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_argument);
      const std::string msg = e.what();
      CHECK(msg.size() >= 9);
      CHECK(msg.substr(msg.size() - 9) == " column 2");
    }
    CHECK_THROWS_AS(validate_stochastic(real_matrix(2, 2, {1.1, 0, -0.1, 1})), Error);
    CHECK_THROWS_AS(validate_stochastic(ComplexMatrix(2, 3)), Error);
    ComplexMatrix complex_entry = uniform_chain(2);
    complex_entry(0, 0) = Complex(0.5, 0.1);
    CHECK_THROWS_AS(validate_stochastic(complex_entry), Error);
  }

  TEST_CASE("stationary projection examples") {
    MarkovModel u = validate_stochastic(uniform_chain(4));
    CHECK(max_abs_entry(stationary_projection(u) - uniform_chain(4)) <= 1e-12);
    MarkovModel sym = validate_stochastic(two_state(0.5, 0.5));
    CHECK(max_abs_entry(stationary_projection(sym) - uniform_chain(2)) <= 1e-12);
    MarkovModel id = validate_stochastic(ComplexMatrix::identity(3));
    CHECK(error_code_of([&] { stationary_projection(id); }) == ErrorCode::not_unique);

    MarkovModel m = validate_stochastic(two_state(0.3, 0.1));
    const std::vector<double> pi = stationary_distribution(m);
    CHECK(pi[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(0.75).epsilon(1e-12));
  }

  TEST_CASE("fundamental inverse examples") {
    MarkovModel u = validate_stochastic(uniform_chain(5));
    CHECK(max_abs_entry(fundamental_inverse(u) - ComplexMatrix::identity(5)) <= 1e-12);
    MarkovModel sym = validate_stochastic(two_state(0.5, 0.5));
    CHECK(max_abs_entry(fundamental_inverse(sym) - ComplexMatrix::identity(2)) <= 1e-12);
    MarkovModel m = validate_stochastic(two_state(0.3, 0.1));
    const ComplexMatrix shifted = ComplexMatrix::identity(2) - m.transition + stationary_projection(m);
    CHECK(max_abs_entry(fundamental_inverse(m) * shifted - ComplexMatrix::identity(2)) <= 1e-8);
  }

  TEST_CASE("exact condition number examples") {
    MarkovModel u = validate_stochastic(uniform_chain(6));
    CHECK(kappa_cl_exact(u) == doctest::Approx(1.0).epsilon(1e-12));
    MarkovModel sym = validate_stochastic(two_state(0.5, 0.5));
    CHECK(kappa_cl_exact(sym) == doctest::Approx(1.0).epsilon(1e-12));
    // Two states: Z(e1 - e2) = (e1 - e2) / (p + q).
    MarkovModel m = validate_stochastic(two_state(0.3, 0.1));
    CHECK(kappa_cl_exact(m) == doctest::Approx(2.5).epsilon(1e-12));
    MarkovModel big = validate_stochastic(uniform_chain(65));
    CHECK_THROWS_AS(kappa_cl_exact(big), Error);
  }

  TEST_CASE("classical bound examples") {
    for (std::size_t n : {2u, 4u, 7u}) {
      MarkovModel u = validate_stochastic(uniform_chain(n));
      const KappaClassicalBounds b = kappa_cl_bounds(u);
      CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(b.upper_cited == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
      CHECK(b.upper_new == doctest::Approx(2.0 * kUnitCirclePrefactor * n).epsilon(1e-12));
    }
    MarkovModel m = validate_stochastic(two_state(0.3, 0.1));
    const KappaClassicalBounds b = kappa_cl_bounds(m);
    CHECK(b.lower == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(b.subdominant_gap == doctest::Approx(0.4).epsilon(1e-12));
    REQUIRE(m.sub_spectrum);
    CHECK(multiset_distance(*m.sub_spectrum, {0.0, 0.6}) <= 1e-12);
    MarkovModel id = validate_stochastic(ComplexMatrix::identity(2));
    CHECK(error_code_of([&] { kappa_cl_bounds(id); }) == ErrorCode::not_unique);
  }

  TEST_CASE("near-reducible chain trips the gap floor") {
    const double eps = 1e-14;
    MarkovModel m = validate_stochastic(two_state(eps, eps));
    CHECK(error_code_of([&] { kappa_cl_bounds(m); }).has_value());
  }

  TEST_CASE("property: chain invariants") {
    Rng rng(301);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 2 + rng.index(9);
      MarkovModel m = validate_stochastic(random_stochastic(rng, n));
      const ComplexMatrix& tinf = stationary_projection(m);
      const ComplexMatrix& t_ = m.transition;
      CHECK(max_abs_entry(t_ * tinf - tinf) <= 1e-8);
      CHECK(max_abs_entry(tinf * t_ - tinf) <= 1e-8);
      CHECK(max_abs_entry(tinf * tinf - tinf) <= 1e-8);
      CHECK_NOTHROW(validate_stochastic(tinf));
      const ComplexMatrix shifted = ComplexMatrix::identity(n) - t_ + tinf;
      CHECK(max_abs_entry(fundamental_inverse(m) * shifted - ComplexMatrix::identity(n)) <= 1e-8);
      CHECK(power_sup_norm(t_, NormKind::one_to_one, 100) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(power_sup_norm(t_ - tinf, NormKind::one_to_one, 100) <= 2.0 + 1e-12);
    }
  }

  TEST_CASE("property: condition number sandwich") {
    Rng rng(302);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 3 + rng.index(6);
      MarkovModel m = validate_stochastic(random_stochastic(rng, n));
      const KappaClassicalBounds b = kappa_cl_bounds(m);
      const double k = kappa_cl_exact(m);
      CHECK(b.lower <= k * (1.0 + 1e-8));
      CHECK(k <= std::min(b.upper_cited, b.upper_new) * (1.0 + 1e-8));
    }
  }

  TEST_CASE("property: vertex maximum dominates sampled perturbations") {
    Rng rng(303);
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 3 + rng.index(5);
      MarkovModel m = validate_stochastic(random_stochastic(rng, n));
      const double vertex = kappa_cl_exact(m);
      const ComplexMatrix& z = fundamental_inverse(m);
      double vertex_oracle = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          std::vector<double> d(n, 0.0);
          d[i] = 0.5;
          d[j] = -0.5;
          vertex_oracle = std::max(vertex_oracle, zero_sum_ratio(z, d));
        }
      CHECK(std::abs(vertex - vertex_oracle) <= 1e-12 * vertex);
      for (int k = 0; k < 2000; ++k) {
        std::vector<double> d(n);
        double mean = 0.0;
        for (double& x : d) mean += (x = rng.normal());
        mean /= static_cast<double>(n);
        for (double& x : d) x -= mean;
        CHECK(zero_sum_ratio(z, d) <= vertex + 1e-10);
      }
    }
  }

  TEST_CASE("quantum channel validation") {
    CHECK_THROWS_AS(make_quantum_channel(ComplexMatrix::identity(3)), Error);
    CHECK_THROWS_AS(make_quantum_channel(ComplexMatrix::identity(289)), Error);
    CHECK_THROWS_AS(make_quantum_channel(ComplexMatrix::identity(4) * Complex(0.5)), Error);
    const QuantumChannelModel q = make_quantum_channel(depolarizing_superoperator(3, 0.4));
    CHECK(q.dimension == 3);
  }

  TEST_CASE("superoperator constructors agree") {
    const double p = 0.3;
    const std::size_t n = 2;
    // Depolarizing channel as a mixture of Pauli conjugations.
    const ComplexMatrix x = real_matrix(2, 2, {0, 1, 1, 0});
    const ComplexMatrix y(2, 2, {0.0, Complex(0, -1), Complex(0, 1), 0.0});
    const ComplexMatrix z = real_matrix(2, 2, {1, 0, 0, -1});
    const ComplexMatrix mixed = mixed_unitary_superoperator(
        {ComplexMatrix::identity(n), x, y, z}, {1.0 - 0.75 * p, p / 4, p / 4, p / 4});
    CHECK(max_abs_entry(mixed - depolarizing_superoperator(n, p)) <= 1e-14);
  }

  TEST_CASE("quantum bound examples") {
    const QuantumChannelModel full = make_quantum_channel(depolarizing_superoperator(2, 1.0));
    const KappaQuantumBounds b = kappa_qu_bounds(full);
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(8.0 * kUnitCirclePrefactor).epsilon(1e-12));
    CHECK(b.gap == doctest::Approx(1.0).epsilon(1e-12));

    const QuantumChannelModel phase = make_quantum_channel(phase_gate_superoperator());
    CHECK(error_code_of([&] { kappa_qu_bounds(phase); }) == ErrorCode::not_unique);

    const QuantumChannelModel partial = make_quantum_channel(depolarizing_superoperator(3, 0.25));
    CHECK(kappa_qu_bounds(partial).lower == doctest::Approx(4.0).epsilon(1e-10));
  }

  TEST_CASE("Monte Carlo witness examples") {
    const QuantumChannelModel q = make_quantum_channel(depolarizing_superoperator(2, 0.3));
    CHECK(kappa_qu_monte_carlo_lower(q, 0, 1) == 0.0);
    const double mc = kappa_qu_monte_carlo_lower(q, 1000, 7);
    const KappaQuantumBounds b = kappa_qu_bounds(q);
    CHECK(mc <= b.upper);
    CHECK(mc == doctest::Approx(1.0 / 0.3).epsilon(1e-9));
    CHECK(kappa_qu_monte_carlo_lower(q, 200, 11) == kappa_qu_monte_carlo_lower(q, 200, 11));
  }

  TEST_CASE("property: Monte Carlo witness reaches the lower bound statistically") {
    Rng rng(304);
    int runs = 0, hits = 0;
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + rng.index(3);
      const double p = rng.uniform(0.05, 0.95);
      const QuantumChannelModel q = make_quantum_channel(depolarizing_superoperator(n, p));
      const KappaQuantumBounds b = kappa_qu_bounds(q);
      const double mc = kappa_qu_monte_carlo_lower(q, 1000, rng.next_seed());
      CHECK(mc <= b.upper);
      ++runs;
      if (mc >= b.lower - 1e-8) ++hits;
    }
    CHECK(hits * 10 >= runs * 9);
  }

  TEST_CASE("property: mixed unitary channels are bracketed") {
    Rng rng(305);
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 2 + rng.index(2);
      std::vector<ComplexMatrix> us;
      std::vector<double> w;
      for (int k = 0; k < 3; ++k) {
        us.push_back(random_unitary(rng, n));
        w.push_back(rng.uniform(0.1, 1.0));
      }
      double total = 0.0;
      for (double x : w) total += x;
      for (double& x : w) x /= total;
      const QuantumChannelModel q = make_quantum_channel(mixed_unitary_superoperator(us, w));
      const KappaQuantumBounds b = kappa_qu_bounds(q);
      const double mc = kappa_qu_monte_carlo_lower(q, 300, rng.next_seed());
      CHECK(mc > 0.0);
      CHECK(mc <= b.upper);
    }
  }
}
