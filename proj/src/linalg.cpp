#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace ratlas {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDeflationTol = 1e-13;
constexpr int kMaxJacobiSweeps = 100;

void require_square(const ComplexMatrix& m, const char* what) {
  require(!m.empty(), ErrorCode::invalid_argument, what);
  require(m.is_square(), ErrorCode::invalid_argument, what);
}

void require_finite(const ComplexMatrix& m) {
  require(m.all_finite(), ErrorCode::non_finite, "matrix has non-finite entries");
}

// Unitary G = [[c, s], [-conj(s), c]] with G * [a; b] = [r; 0], c real.
struct Givens {
  double c = 1.0;
  Complex s{};
  Complex r{};
};

Givens make_givens(Complex a, Complex b) {
  Givens g;
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  if (abs_b == 0.0) {
    g.r = a;
    return g;
  }
  if (abs_a == 0.0) {
    g.c = 0.0;
    g.s = std::conj(b) / abs_b;
    g.r = abs_b;
    return g;
  }
  const double rho = std::hypot(abs_a, abs_b);
  const Complex phase = a / abs_a;
  g.c = abs_a / rho;
  g.s = phase * std::conj(b) / rho;
  g.r = phase * rho;
  return g;
}

// Rows p, q <- G * rows p, q over columns [c0, c1].
void rotate_rows(ComplexMatrix& h, const Givens& g, std::size_t p, std::size_t q, std::size_t c0, std::size_t c1) {
  for (std::size_t k = c0; k <= c1; ++k) {
    const Complex x = h(p, k);
    const Complex y = h(q, k);
    h(p, k) = g.c * x + g.s * y;
    h(q, k) = -std::conj(g.s) * x + g.c * y;
  }
}

// Columns p, q <- columns p, q * G^H over rows [r0, r1].
void rotate_cols(ComplexMatrix& h, const Givens& g, std::size_t p, std::size_t q, std::size_t r0, std::size_t r1) {
  for (std::size_t k = r0; k <= r1; ++k) {
    const Complex x = h(k, p);
    const Complex y = h(k, q);
    h(k, p) = g.c * x + std::conj(g.s) * y;
    h(k, q) = -g.s * x + g.c * y;
  }
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t il, std::size_t iu, int iter) {
  if (iter == 10 || iter == 20) {
    double s = std::abs(h(iu, iu - 1).real());
    if (iu >= il + 2) s += std::abs(h(iu - 1, iu - 2).real());
    return s;
  }
  Complex a = h(iu - 1, iu - 1);
  Complex b = h(iu - 1, iu);
  Complex c = h(iu, iu - 1);
  Complex d = h(iu, iu);
  const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
  if (scale == 0.0) return 0.0;
  a /= scale;
  b /= scale;
  c /= scale;
  d /= scale;
  const Complex half_trace = 0.5 * (a + d);
  const Complex half_diff = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_diff * half_diff + b * c);
  const Complex e1 = half_trace + disc;
  const Complex e2 = half_trace - disc;
  const Complex mu = std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
  return mu * scale;
}

bool strictly_lower_zero(const ComplexMatrix& m) {
  for (std::size_t i = 1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != Complex{}) return false;
  return true;
}

bool strictly_upper_zero(const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != Complex{}) return false;
  return true;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  require_square(h, "hermitian_eigenvalues needs a non-empty square matrix");
  require_finite(h);
  const std::size_t n = h.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = 0; j < i; ++j) {
      a(i, j) = h(i, j);
      a(j, i) = std::conj(h(i, j));
    }
  }

  const double frob = frobenius_norm(a);
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) off += std::norm(a(i, j));
    if (std::sqrt(2.0 * off) <= 1e-15 * frob) break;

    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double abs_b = std::abs(b);
        if (abs_b == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (abs_b <= 0.5 * kEps * std::sqrt(std::abs(app) * std::abs(aqq)) || abs_b <= 1e-300) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * abs_b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex w = std::conj(b) / abs_b;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = a(k, p);
          const Complex xq = a(k, q);
          a(k, p) = c * xp - s * w * xq;
          a(k, q) = s * xp + c * w * xq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = a(p, k);
          const Complex xq = a(q, k);
          a(p, k) = c * xp - s * std::conj(w) * xq;
          a(q, k) = s * xp + c * std::conj(w) * xq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * abs_b;
        a(q, q) = aqq + t * abs_b;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  require(!m.empty(), ErrorCode::invalid_argument, "singular_values needs a non-empty matrix");
  require_finite(m);
  // Unit-scale first so the Gram product cannot overflow or underflow.
  const double scale = max_abs_entry(m);
  if (scale == 0.0) return std::vector<double>(std::min(m.rows(), m.cols()), 0.0);
  const ComplexMatrix unit = m * Complex(1.0 / scale);
  const ComplexMatrix adj = unit.adjoint();
  const ComplexMatrix gram = unit.rows() >= unit.cols() ? adj * unit : unit * adj;
  std::vector<double> eig = hermitian_eigenvalues(gram);
  std::vector<double> sv(eig.size());
  std::transform(eig.rbegin(), eig.rend(), sv.begin(), [scale](double x) { return scale * std::sqrt(std::max(x, 0.0)); });
  return sv;
}

double spectral_norm(const ComplexMatrix& m) {
  require(!m.empty(), ErrorCode::invalid_argument, "spectral_norm needs a non-empty matrix");
  require_finite(m);
  if (m.rows() == 1 || m.cols() == 1) return frobenius_norm(m);
  return singular_values(m).front();
}

double induced_one_norm(const ComplexMatrix& m) {
  require_square(m, "induced_one_norm needs a non-empty square matrix");
  require_finite(m);
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

double matrix_norm(const ComplexMatrix& m, NormKind kind) {
  return kind == NormKind::spectral ? spectral_norm(m) : induced_one_norm(m);
}

double schatten_one_norm(const ComplexMatrix& m) {
  require(!m.empty(), ErrorCode::invalid_argument, "schatten_one_norm needs a non-empty matrix");
  require_finite(m);
  if (m.is_square()) {
    const double scale = max_abs_entry(m);
    bool hermitian = true;
    for (std::size_t i = 0; i < m.rows() && hermitian; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12 * scale) {
          hermitian = false;
          break;
        }
    if (hermitian) {
      double sum = 0.0;
      for (double e : hermitian_eigenvalues(m)) sum += std::abs(e);
      return sum;
    }
  }
  double sum = 0.0;
  for (double s : singular_values(m)) sum += s;
  return sum;
}

ComplexMatrix hessenberg(const ComplexMatrix& m) {
  require_square(m, "hessenberg needs a non-empty square matrix");
  const std::size_t n = m.rows();
  ComplexMatrix h = m;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm_x = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm_x += std::norm(h(i, k));
    norm_x = std::sqrt(norm_x);
    if (norm_x == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * norm_x;

    double norm_v = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h(i, k);
      if (i == k + 1) v[i] -= alpha;
      norm_v += std::norm(v[i]);
    }
    norm_v = std::sqrt(norm_v);
    if (norm_v == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= norm_v;

    for (std::size_t j = k; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i] * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += h(r, i) * v[i];
      for (std::size_t i = k + 1; i < n; ++i) h(r, i) -= 2.0 * s * std::conj(v[i]);
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

std::vector<Complex> eigenvalues_dense(const ComplexMatrix& m) {
  require_square(m, "eigenvalues_dense needs a non-empty square matrix");
  require(m.rows() <= 256, ErrorCode::invalid_argument, "eigenvalues_dense supports dimension <= 256");
  require_finite(m);
  const std::size_t n = m.rows();

  if (strictly_lower_zero(m) || strictly_upper_zero(m)) {
    std::vector<Complex> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = m(i, i);
    return diag;
  }

  ComplexMatrix h = hessenberg(m);
  const double norm_h = std::max(frobenius_norm(h), std::numeric_limits<double>::min());
  const std::size_t cap = 100 * n;
  std::size_t total = 0;
  int iter = 0;
  std::size_t iu = n - 1;

  while (iu > 0) {
    std::size_t il = iu;
    while (il > 0) {
      double s = std::abs(h(il, il)) + std::abs(h(il - 1, il - 1));
      if (s == 0.0) s = norm_h;
      if (std::abs(h(il, il - 1)) <= kDeflationTol * s) {
        h(il, il - 1) = 0.0;
        break;
      }
      --il;
    }
    if (il == iu) {
      --iu;
      iter = 0;
      continue;
    }
    if (++total > cap) fail(ErrorCode::no_convergence, "QR iteration did not converge");
    ++iter;

    const Complex mu = wilkinson_shift(h, il, iu, iter);
    Givens g = make_givens(h(il, il) - mu, h(il + 1, il));
    rotate_rows(h, g, il, il + 1, il, iu);
    rotate_cols(h, g, il, il + 1, il, std::min(il + 2, iu));
    for (std::size_t i = il + 1; i < iu; ++i) {
      g = make_givens(h(i, i - 1), h(i + 1, i - 1));
      rotate_rows(h, g, i, i + 1, i - 1, iu);
      h(i + 1, i - 1) = 0.0;
      rotate_cols(h, g, i, i + 1, il, std::min(i + 2, iu));
    }
  }

  std::vector<Complex> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = h(i, i);
  return eig;
}

std::vector<Complex> eigenvector_for(const ComplexMatrix& m, Complex lambda) {
  require_square(m, "eigenvector_for needs a non-empty square matrix");
  const std::size_t n = m.rows();
  const double scale = std::max(1.0, max_abs_entry(m));
  ComplexMatrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = Complex(1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i % 3));

  double offset = 1e-12 * scale;
  for (int attempt = 0; attempt < 8; ++attempt, offset *= 100.0) {
    ComplexMatrix shifted = m;
    const Complex sigma = lambda + Complex(offset, offset);
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= sigma;
    try {
      ComplexMatrix x = v;
      for (int it = 0; it < 3; ++it) {
        x = solve(shifted, x);
        const double nrm = frobenius_norm(x);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error(ErrorCode::singular, "inverse iteration breakdown");
        x *= Complex(1.0 / nrm);
      }
      return {x.entries().begin(), x.entries().end()};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::singular) throw;
    }
  }
  fail(ErrorCode::singular, "inverse iteration failed");
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "solve needs a non-empty square matrix");
  require(b.rows() == a.rows(), ErrorCode::invalid_argument, "solve right-hand side shape mismatch");
  const std::size_t n = a.rows();
  const std::size_t nrhs = b.cols();
  ComplexMatrix lu = a;
  ComplexMatrix x = b;
  const double scale = max_abs_entry(a);
  const double tol = static_cast<double>(n) * kEps * scale;
  if (!(scale > 0.0)) fail(ErrorCode::singular, "matrix is singular to working precision");

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= tol) fail(ErrorCode::singular, "matrix is singular to working precision");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (std::size_t j = 0; j < nrhs; ++j) std::swap(x(k, j), x(piv, j));
    }
    const Complex pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / pivot;
      if (f == Complex{}) continue;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < nrhs; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < nrhs; ++j) {
      Complex acc = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) acc -= lu(kk, c) * x(c, j);
      x(kk, j) = acc / lu(kk, kk);
    }
  }
  return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_square(a, "inverse needs a non-empty square matrix");
  return solve(a, ComplexMatrix::identity(a.rows()));
}

ComplexMatrix resolvent_direct(const ComplexMatrix& m, Complex zeta) {
  require_square(m, "resolvent needs a non-empty square matrix");
  require_finite(m);
  ComplexMatrix shifted = -1.0 * m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) += zeta;
  return inverse(shifted);
}

double power_sup_norm(const ComplexMatrix& m, NormKind kind, int max_power) {
  require_square(m, "power_sup_norm needs a non-empty square matrix");
  require(max_power >= 0 && max_power <= 10000, ErrorCode::invalid_argument, "power count must lie in [0, 10000]");
  require_finite(m);
  ComplexMatrix power = ComplexMatrix::identity(m.rows());
  double best = matrix_norm(power, kind);
  for (int k = 1; k <= max_power; ++k) {
    power = power * m;
    const double biggest = max_abs_entry(power);
    if (!std::isfinite(biggest) || biggest > 1e300) fail(ErrorCode::overflow, "matrix powers overflow: not power bounded");
    if (biggest == 0.0) break;
    best = std::max(best, matrix_norm(power, kind));
  }
  return best;
}

}  // namespace ratlas
