#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "linalg.hpp"
#include "markov.hpp"
#include "model.hpp"

using namespace ratlas;

TEST_SUITE("linalg") {
  TEST_CASE("matrix construction validates shape and finiteness") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), Error);
    const double nan = std::nan("");
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(nan, 0.0)}), Error);
    const ComplexMatrix m(2, 3);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(max_abs_entry(m) == 0.0);
  }

  TEST_CASE("spectral norm examples") {
    CHECK(spectral_norm(ComplexMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_norm(ComplexMatrix(2, 2)) == 0.0);
    const ComplexMatrix m2 = real_matrix(2, 2, {1, 0, 2, 1});
    CHECK(std::abs(spectral_norm(m2) - (1.0 + std::sqrt(2.0))) <= 1e-12 * (1.0 + std::sqrt(2.0)));
  }

  TEST_CASE("spectral norm of a rectangular matrix and a vector") {
    const ComplexMatrix v = real_matrix(3, 1, {3, 4, 12});
    CHECK(spectral_norm(v) == doctest::Approx(13.0).epsilon(1e-14));
    const ComplexMatrix wide = real_matrix(1, 2, {3, 4});
    CHECK(spectral_norm(wide) == doctest::Approx(5.0).epsilon(1e-14));
  }

  TEST_CASE("spectral norm rejects empty input") { CHECK_THROWS_AS(spectral_norm(ComplexMatrix()), Error); }

  TEST_CASE("induced one norm examples") {
    CHECK(induced_one_norm(ComplexMatrix::identity(4)) == 1.0);
    CHECK(induced_one_norm(real_matrix(2, 2, {0, 2, 0, 0})) == 2.0);
    Rng rng(11);
    CHECK(induced_one_norm(random_stochastic(rng, 6)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(induced_one_norm(ComplexMatrix(2, 3)), Error);
  }

  TEST_CASE("eigenvalues of diagonal, model and companion matrices") {
    const std::vector<Complex> diag{0.3, Complex(0.0, 0.7)};
    CHECK(multiset_distance(eigenvalues_dense(ComplexMatrix::diagonal(diag)), diag) <= 1e-14);

    const Spectrum s({Complex(0.4, 0.1), Complex(-0.6, 0.2)});
    const auto model = model_operator_matrix(s).matrix;
    CHECK(multiset_distance(eigenvalues_dense(model), {s[0], s[1]}) <= 1e-12);

    const ComplexMatrix companion = real_matrix(2, 2, {0, 1, 1, 0});
    CHECK(multiset_distance(eigenvalues_dense(companion), {1.0, -1.0}) <= 1e-12);
  }

  TEST_CASE("eigenvalues of dense random matrices carry small residuals") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + rng.index(15);
      const ComplexMatrix m = gaussian_matrix(rng, n, n);
      const double scale = spectral_norm(m);
      for (const Complex& l : eigenvalues_dense(m)) {
        const std::vector<Complex> v = eigenvector_for(m, l);
        std::vector<Complex> r = multiply(m, v);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res += std::norm(r[i] - l * v[i]);
        CHECK(std::sqrt(res) / scale <= 1e-9);
      }
    }
  }

  TEST_CASE("eigenvalues of real matrices come in conjugate pairs") {
    const ComplexMatrix rot = real_matrix(2, 2, {0, -1, 1, 0});
    CHECK(multiset_distance(eigenvalues_dense(rot), {Complex(0, 1), Complex(0, -1)}) <= 1e-12);
  }

  TEST_CASE("eigenvalues reject oversize input") { CHECK_THROWS_AS(eigenvalues_dense(ComplexMatrix(257, 257)), Error); }

  TEST_CASE("resolvent examples") {
    const ComplexMatrix r = resolvent_direct(ComplexMatrix(1, 1), 2.0);
    CHECK(r(0, 0).real() == doctest::Approx(0.5));
    const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<Complex>{0.2, Complex(0, 0.5)});
    const Complex zeta(0.3, -0.4);
    const ComplexMatrix rd = resolvent_direct(d, zeta);
    CHECK(std::abs(rd(0, 0) - 1.0 / (zeta - 0.2)) <= 1e-14);
    CHECK(std::abs(rd(1, 1) - 1.0 / (zeta - Complex(0, 0.5))) <= 1e-14);
    CHECK(std::abs(rd(0, 1)) == 0.0);

    const Spectrum s({0.5, -0.3});
    const ComplexMatrix direct = resolvent_direct(model_operator_matrix(s).matrix, 1.0);
    CHECK(max_abs_entry(direct - model_resolvent_matrix(s, 1.0)) <= 1e-9);
  }

  TEST_CASE("resolvent residual certificate") {
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 1 + rng.index(10);
      const ComplexMatrix m = gaussian_matrix(rng, n, n);
      const Complex zeta = rng.complex_normal() * 3.0;
      const ComplexMatrix r = resolvent_direct(m, zeta);
      const ComplexMatrix shifted = ComplexMatrix::identity(n) * zeta - m;
      CHECK(spectral_norm(shifted * r - ComplexMatrix::identity(n)) <= 1e-10 * spectral_norm(r));
    }
  }

  TEST_CASE("resolvent on the spectrum is singular") {
    const ComplexMatrix d = ComplexMatrix::diagonal(std::vector<Complex>{0.5, 0.25});
    CHECK(error_code_of([&] { resolvent_direct(d, 0.5); }) == ErrorCode::singular);
  }

  TEST_CASE("power sup norm examples") {
    Rng rng(3);
    const ComplexMatrix c = random_contraction(rng, 5);
    CHECK(power_sup_norm(c, NormKind::spectral, 40) == doctest::Approx(1.0).epsilon(1e-12));
    MarkovModel chain = validate_stochastic(random_stochastic(rng, 5));
    CHECK(power_sup_norm(chain.transition, NormKind::one_to_one, 100) == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix a = chain.transition - stationary_projection(chain);
    CHECK(power_sup_norm(a, NormKind::one_to_one, 100) <= 2.0 + 1e-12);
  }

  TEST_CASE("power sup norm detects growth and bad arguments") {
    CHECK(error_code_of([] { power_sup_norm(ComplexMatrix::identity(2) * Complex(1e3), NormKind::spectral, 200); }) ==
          ErrorCode::overflow);
    CHECK_THROWS_AS(power_sup_norm(ComplexMatrix::identity(2), NormKind::spectral, 10001), Error);
    CHECK(power_sup_norm(ComplexMatrix::identity(2) * Complex(2.0), NormKind::spectral, 3) ==
          doctest::Approx(8.0));
  }

  TEST_CASE("property: unitary invariance of the spectral norm") {
    Rng rng(101);
    for (int t = 0; t < 25; ++t) {
      const std::size_t n = 1 + rng.index(8);
      const ComplexMatrix m = gaussian_matrix(rng, n, n);
      const ComplexMatrix u = random_unitary(rng, n), v = random_unitary(rng, n);
      const double base = spectral_norm(m);
      CHECK(std::abs(spectral_norm(u * m * v) - base) <= 1e-10 * base);
    }
  }

  TEST_CASE("property: squared spectral norm is the top eigenvalue of the Gram matrix") {
    Rng rng(102);
    for (int t = 0; t < 25; ++t) {
      const std::size_t n = 1 + rng.index(8);
      const ComplexMatrix m = gaussian_matrix(rng, n, 1 + rng.index(8));
      const std::vector<double> eig = hermitian_eigenvalues(m.adjoint() * m);
      const double top = *std::max_element(eig.begin(), eig.end());
      const double s = spectral_norm(m);
      CHECK(std::abs(s * s - top) <= 1e-10 * top);
    }
  }

  TEST_CASE("property: powers of a contraction stay contractive") {
    Rng rng(103);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix m = random_contraction(rng, 1 + rng.index(6));
      CHECK(power_sup_norm(m, NormKind::spectral, 50) == 1.0);
      ComplexMatrix p = m;
      for (int k = 1; k <= 50; ++k, p = p * m) CHECK(spectral_norm(p) <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("property: triangular matrices return their diagonal") {
    Rng rng(104);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 1 + rng.index(10);
      ComplexMatrix m = gaussian_matrix(rng, n, n);
      const bool lower = rng.uniform() < 0.5;
      std::vector<Complex> diag(n);
      for (std::size_t i = 0; i < n; ++i) {
        diag[i] = m(i, i);
        for (std::size_t j = 0; j < n; ++j)
          if (lower ? j > i : j < i) m(i, j) = 0.0;
      }
      CHECK(multiset_distance(eigenvalues_dense(m), diag) <= 1e-10);
    }
  }

  TEST_CASE("Hessenberg form is similar to its input") {
    Rng rng(105);
    const ComplexMatrix m = gaussian_matrix(rng, 7, 7);
    const ComplexMatrix h = hessenberg(m);
    for (std::size_t i = 2; i < 7; ++i)
      for (std::size_t j = 0; j + 1 < i; ++j) CHECK(std::abs(h(i, j)) <= 1e-12);
    CHECK(multiset_distance(eigenvalues_dense(h), eigenvalues_dense(m)) <= 1e-9);
  }

  TEST_CASE("Schatten one norm of Hermitian and general matrices") {
    const ComplexMatrix h = real_matrix(2, 2, {1, 0, 0, -2});
    CHECK(schatten_one_norm(h) == doctest::Approx(3.0));
    const ComplexMatrix g = real_matrix(2, 2, {0, 3, 0, 0});
    CHECK(schatten_one_norm(g) == doctest::Approx(3.0));
  }

  TEST_CASE("solve rejects singular systems") {
    const ComplexMatrix a = real_matrix(2, 2, {1, 2, 2, 4});
    CHECK(error_code_of([&] { inverse(a); }) == ErrorCode::singular);
  }
}
