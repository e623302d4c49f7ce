#include "resolvent_atlas.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "blaschke.hpp"
#include "bounds.hpp"
#include "error.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "markov.hpp"
#include "model.hpp"
#include "toeplitz.hpp"
#include "verify.hpp"

using namespace ratlas;

struct ra_matrix {
  ComplexMatrix value;
};
struct ra_spectrum {
  Spectrum value;
};
struct ra_bound_sweep {
  BoundSweep value;
};
struct ra_markov {
  MarkovModel value;
};
struct ra_quantum {
  QuantumChannelModel value;
};
struct ra_verify_report {
  std::vector<CriterionResult> value;
};

namespace {

thread_local std::string g_last_error;

template <class F>
ra_status guarded(F&& body) noexcept {
  try {
    body();
    return RA_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<ra_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return RA_ERR_INTERNAL;
}

template <class T>
const T& need(const T* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
  return *p;
}

template <class T>
T& need_out(T* p) {
  if (!p) fail(ErrorCode::invalid_argument, "output pointer must not be NULL");
  return *p;
}

const char* need_text(const char* p) {
  if (!p) fail(ErrorCode::invalid_argument, "text must not be NULL");
  return p;
}

Complex to_cpp(ra_complex z) { return {z.re, z.im}; }
ra_complex to_c(Complex z) { return {z.real(), z.imag()}; }

NormKind to_norm(ra_norm_kind k) {
  switch (k) {
    case RA_NORM_SPECTRAL: return NormKind::spectral;
    case RA_NORM_ONE_TO_ONE: return NormKind::one_to_one;
  }
  fail(ErrorCode::invalid_argument, "unknown norm kind");
}

BoundQuery to_query(const ra_spectrum* s, const ra_bound_query* q) {
  const ra_bound_query& query = need(q, "query");
  return BoundQuery{need(s, "spectrum").value, to_cpp(query.zeta), query.power_bound_constant,
                    query.has_r ? std::optional<double>(query.r) : std::nullopt};
}

void emit(ra_matrix** out, ComplexMatrix m) {
  ra_matrix*& slot = need_out(out);
  slot = new ra_matrix{std::move(m)};
}

void emit(ra_spectrum** out, Spectrum s) {
  ra_spectrum*& slot = need_out(out);
  slot = new ra_spectrum{std::move(s)};
}

char* copy_string(const std::string& s) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return buf;
}

void write_points(const std::vector<Complex>& pts, ra_complex* out, std::size_t capacity) {
  if (!out) fail(ErrorCode::invalid_argument, "output pointer must not be NULL");
  if (capacity < pts.size()) fail(ErrorCode::invalid_argument, "output capacity too small");
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = to_c(pts[i]);
}

}  // namespace

extern "C" {

const char* ra_version(void) { return "1.0.0"; }

const char* ra_status_name(ra_status status) {
  switch (status) {
    case RA_OK: return "ok";
    case RA_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case RA_ERR_HYPOTHESIS: return "hypothesis_violation";
    case RA_ERR_NON_FINITE: return "non_finite";
    case RA_ERR_SINGULAR: return "singular";
    case RA_ERR_NO_CONVERGENCE: return "no_convergence";
    case RA_ERR_NOT_UNIQUE: return "not_unique";
    case RA_ERR_PARSE: return "parse";
    case RA_ERR_OVERFLOW: return "overflow";
    case RA_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ra_last_error(void) { return g_last_error.c_str(); }

void ra_string_free(char* s) { std::free(s); }

/* matrices */

ra_status ra_matrix_create(size_t rows, size_t cols, const ra_complex* entries, ra_matrix** out) {
  return guarded([&] {
    require(rows > 0 && cols > 0, ErrorCode::invalid_argument, "matrix dimensions must be positive");
    if (!entries) return emit(out, ComplexMatrix(rows, cols));
    std::vector<Complex> values(rows * cols);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = to_cpp(entries[k]);
    emit(out, ComplexMatrix(rows, cols, std::move(values)));
  });
}

ra_status ra_matrix_clone(const ra_matrix* m, ra_matrix** out) {
  return guarded([&] { emit(out, need(m, "matrix").value); });
}

void ra_matrix_destroy(ra_matrix* m) { delete m; }

size_t ra_matrix_rows(const ra_matrix* m) { return m ? m->value.rows() : 0; }

size_t ra_matrix_cols(const ra_matrix* m) { return m ? m->value.cols() : 0; }

ra_status ra_matrix_get(const ra_matrix* m, size_t row, size_t col, ra_complex* out) {
  return guarded([&] {
    const ComplexMatrix& mat = need(m, "matrix").value;
    require(row < mat.rows() && col < mat.cols(), ErrorCode::invalid_argument, "index out of range");
    need_out(out) = to_c(mat(row, col));
  });
}

ra_status ra_matrix_entries(const ra_matrix* m, ra_complex* out, size_t capacity) {
  return guarded([&] {
    const auto e = need(m, "matrix").value.entries();
    write_points(std::vector<Complex>(e.begin(), e.end()), out, capacity);
  });
}

ra_status ra_matrix_subtract(const ra_matrix* a, const ra_matrix* b, ra_matrix** out) {
  return guarded([&] {
    const ComplexMatrix& x = need(a, "lhs").value;
    const ComplexMatrix& y = need(b, "rhs").value;
    require(x.rows() == y.rows() && x.cols() == y.cols(), ErrorCode::invalid_argument, "shape mismatch");
    emit(out, x - y);
  });
}

ra_status ra_matrix_from_json(const char* text, ra_matrix** out) {
  return guarded([&] { emit(out, parse_matrix_json(need_text(text))); });
}

ra_status ra_matrix_from_csv(const char* text, ra_matrix** out) {
  return guarded([&] { emit(out, parse_matrix_csv(need_text(text))); });
}

ra_status ra_matrix_load(const char* path, ra_matrix** out) {
  return guarded([&] { emit(out, load_matrix_file(need_text(path))); });
}

ra_status ra_matrix_to_json(const ra_matrix* m, char** out) {
  return guarded([&] {
    const std::string text = matrix_to_json(need(m, "matrix").value);
    need_out(out) = copy_string(text);
  });
}

/* dense kernels */

ra_status ra_spectral_norm(const ra_matrix* m, double* out) {
  return guarded([&] { need_out(out) = spectral_norm(need(m, "matrix").value); });
}

ra_status ra_induced_one_norm(const ra_matrix* m, double* out) {
  return guarded([&] { need_out(out) = induced_one_norm(need(m, "matrix").value); });
}

ra_status ra_matrix_norm(const ra_matrix* m, ra_norm_kind kind, double* out) {
  return guarded([&] { need_out(out) = matrix_norm(need(m, "matrix").value, to_norm(kind)); });
}

ra_status ra_eigenvalues(const ra_matrix* m, ra_complex* out, size_t capacity) {
  return guarded([&] { write_points(eigenvalues_dense(need(m, "matrix").value), out, capacity); });
}

ra_status ra_resolvent_direct(const ra_matrix* m, ra_complex zeta, ra_matrix** out) {
  return guarded([&] { emit(out, resolvent_direct(need(m, "matrix").value, to_cpp(zeta))); });
}

ra_status ra_power_sup_norm(const ra_matrix* m, ra_norm_kind kind, int max_power, double* out) {
  return guarded([&] { need_out(out) = power_sup_norm(need(m, "matrix").value, to_norm(kind), max_power); });
}

/* spectra */

ra_status ra_spectrum_create(const ra_complex* points, size_t count, ra_spectrum** out) {
  return guarded([&] {
    require(points != nullptr || count == 0, ErrorCode::invalid_argument, "points must not be NULL");
    std::vector<Complex> pts(count);
    for (std::size_t k = 0; k < count; ++k) pts[k] = to_cpp(points[k]);
    emit(out, Spectrum(std::move(pts)));
  });
}

ra_status ra_spectrum_parse(const char* text, ra_spectrum** out) {
  return guarded([&] { emit(out, parse_spectrum(need_text(text))); });
}

ra_status ra_spectrum_from_matrix(const ra_matrix* m, ra_spectrum** out) {
  return guarded([&] { emit(out, Spectrum(eigenvalues_dense(need(m, "matrix").value))); });
}

ra_status ra_spectrum_sorted_by_modulus(const ra_spectrum* s, ra_spectrum** out) {
  return guarded([&] { emit(out, need(s, "spectrum").value.sorted_by_modulus()); });
}

void ra_spectrum_destroy(ra_spectrum* s) { delete s; }

size_t ra_spectrum_degree(const ra_spectrum* s) { return s ? s->value.degree() : 0; }

ra_status ra_spectrum_get(const ra_spectrum* s, size_t index, ra_complex* out) {
  return guarded([&] {
    const Spectrum& sp = need(s, "spectrum").value;
    require(index < sp.degree(), ErrorCode::invalid_argument, "index out of range");
    need_out(out) = to_c(sp[index]);
  });
}

ra_status ra_blaschke_eval(const ra_spectrum* s, ra_complex z, ra_complex* out) {
  return guarded([&] { need_out(out) = to_c(blaschke_eval(need(s, "spectrum").value, to_cpp(z))); });
}

ra_status ra_blaschke_truncated_eval(const ra_spectrum* s, size_t first, size_t last, ra_complex z, ra_complex* out) {
  return guarded(
      [&] { need_out(out) = to_c(blaschke_truncated_eval(need(s, "spectrum").value, first, last, to_cpp(z))); });
}

ra_status ra_combi1_sides(const ra_spectrum* s, ra_complex zeta, size_t j, size_t i, ra_complex* lhs, ra_complex* rhs) {
  return guarded([&] {
    need_out(lhs);
    need_out(rhs);
    const IdentitySides sides = combi1_sides(need(s, "spectrum").value, to_cpp(zeta), j, i);
    *lhs = to_c(sides.lhs);
    *rhs = to_c(sides.rhs);
  });
}

ra_status ra_combi2_sides(const ra_spectrum* s, ra_complex zeta, double r, int part, size_t l, ra_complex* lhs,
                          ra_complex* rhs) {
  return guarded([&] {
    need_out(lhs);
    need_out(rhs);
    require(part == 1 || part == 2, ErrorCode::invalid_argument, "part must be 1 or 2");
    const IdentitySides sides =
        combi2_sides(need(s, "spectrum").value, to_cpp(zeta), r, part == 1 ? Combi2Part::first : Combi2Part::second, l);
    *lhs = to_c(sides.lhs);
    *rhs = to_c(sides.rhs);
  });
}

ra_status ra_gtilde_h2_norm(const ra_spectrum* s, ra_complex zeta, double r, double* out) {
  return guarded([&] {
    need_out(out) = gtilde_h2_norm(SmoothedInterpolant(need(s, "spectrum").value, to_cpp(zeta), r));
  });
}

ra_status ra_gtilde_taylor_h2(const ra_spectrum* s, ra_complex zeta, double r, size_t degree, double* norm,
                              double* tail_bound) {
  return guarded([&] {
    need_out(norm);
    const TaylorH2 t =
        gtilde_taylor_h2_oracle(SmoothedInterpolant(need(s, "spectrum").value, to_cpp(zeta), r), degree);
    *norm = t.norm;
    if (tail_bound) *tail_bound = t.tail_bound;
  });
}

/* model operator */

ra_status ra_model_operator(const ra_spectrum* s, ra_matrix** out) {
  return guarded([&] { emit(out, model_operator_matrix(need(s, "spectrum").value).matrix); });
}

ra_status ra_model_resolvent(const ra_spectrum* s, ra_complex zeta, ra_matrix** out) {
  return guarded([&] { emit(out, model_resolvent_matrix(need(s, "spectrum").value, to_cpp(zeta))); });
}

ra_status ra_malmquist_walsh(const ra_spectrum* s, size_t k, ra_complex z, ra_complex* out) {
  return guarded([&] { need_out(out) = to_c(malmquist_walsh_eval(need(s, "spectrum").value, k, to_cpp(z))); });
}

ra_status ra_extremal_contraction(size_t n, double a, ra_matrix** out) {
  return guarded([&] { emit(out, extremal_contraction(n, a)); });
}

/* Toeplitz */

ra_status ra_toeplitz_matrix(size_t n, double beta, ra_matrix** out) {
  return guarded([&] { emit(out, toeplitz_matrix(ToeplitzSpec{n, beta, std::nullopt})); });
}

ra_status ra_cot_residual(size_t n, double beta, double theta, double* out) {
  return guarded([&] { need_out(out) = cot_residual(n, beta, theta); });
}

ra_status ra_solve_theta_star(size_t n, double beta, double* out) {
  return guarded([&] { need_out(out) = solve_theta_star(n, beta); });
}

ra_status ra_toeplitz_norm(size_t n, double beta, double* out) {
  return guarded([&] { need_out(out) = toeplitz_norm(n, beta); });
}

/* bounds */

ra_status ra_contraction_bound_optimal(const ra_spectrum* s, const ra_bound_query* q, double* out) {
  return guarded([&] { need_out(out) = contraction_bound_optimal(to_query(s, q)); });
}

ra_status ra_contraction_bound_corollary(const ra_spectrum* s, const ra_bound_query* q, double* out) {
  return guarded([&] { need_out(out) = contraction_bound_corollary(to_query(s, q)); });
}

ra_status ra_contraction_bound_beta_refined(const ra_spectrum* s, double* out) {
  return guarded([&] { need_out(out) = contraction_bound_beta_refined(need(s, "spectrum").value); });
}

ra_status ra_power_bounded_bound(const ra_spectrum* s, const ra_bound_query* q, double* out) {
  return guarded([&] { need_out(out) = power_bounded_bound(to_query(s, q)); });
}

ra_status ra_unit_circle_bound(const ra_spectrum* s, double c, ra_complex zeta, double* out) {
  return guarded([&] { need_out(out) = unit_circle_bound(need(s, "spectrum").value, c, to_cpp(zeta)); });
}

ra_status ra_qualitative_interior_bound(const ra_spectrum* s, const ra_bound_query* q, double* out) {
  return guarded([&] { need_out(out) = qualitative_interior_bound(to_query(s, q)); });
}

ra_status ra_raw_wiener_bound(const ra_spectrum* s, const ra_bound_query* q, int refine, double* out) {
  return guarded([&] {
    need_out(out) = raw_wiener_bound(to_query(s, q), refine ? RChoice::refined : RChoice::given_or_default);
  });
}

ra_status ra_bound_report(const ra_matrix* matrix, const ra_spectrum* spectrum, const ra_complex* grid,
                          size_t grid_count, ra_assumption assumption, double power_bound_constant, ra_norm_kind norm,
                          unsigned threads, ra_bound_sweep** out) {
  return guarded([&] {
    ra_bound_sweep*& slot = need_out(out);
    require(grid != nullptr && grid_count > 0, ErrorCode::invalid_argument, "grid must not be empty");
    require(assumption == RA_ASSUME_CONTRACTION || assumption == RA_ASSUME_POWER_BOUNDED,
            ErrorCode::invalid_argument, "unknown assumption");
    BoundRequest req;
    if (matrix) req.matrix = matrix->value;
    if (spectrum) req.spectrum = spectrum->value;
    req.grid.reserve(grid_count);
    for (std::size_t k = 0; k < grid_count; ++k) req.grid.push_back(to_cpp(grid[k]));
    req.assumption = assumption == RA_ASSUME_CONTRACTION ? Assumption::contraction : Assumption::power_bounded;
    req.power_bound_constant = power_bound_constant;
    req.norm = to_norm(norm);
    req.threads = threads;
    slot = new ra_bound_sweep{bound_report(req)};
  });
}

void ra_bound_sweep_destroy(ra_bound_sweep* sweep) { delete sweep; }

size_t ra_bound_sweep_size(const ra_bound_sweep* sweep) { return sweep ? sweep->value.reports.size() : 0; }

int ra_bound_sweep_hypothesis_holds(const ra_bound_sweep* sweep) { return sweep && sweep->value.hypothesis_holds; }

size_t ra_bound_sweep_violation_count(const ra_bound_sweep* sweep) {
  return sweep ? sweep->value.violation_count() : 0;
}

ra_status ra_bound_sweep_spectrum(const ra_bound_sweep* sweep, ra_spectrum** out) {
  return guarded([&] { emit(out, need(sweep, "sweep").value.spectrum); });
}

ra_status ra_bound_sweep_record(const ra_bound_sweep* sweep, size_t index, ra_bound_record* out) {
  return guarded([&] {
    const auto& reports = need(sweep, "sweep").value.reports;
    require(index < reports.size(), ErrorCode::invalid_argument, "index out of range");
    ra_bound_record& rec = need_out(out);
    const BoundReport& r = reports[index];
    rec = ra_bound_record{};
    rec.zeta = to_c(r.zeta);
    rec.skipped = r.skipped;
    auto put = [&rec](const std::optional<double>& v, uint32_t bit, double& field) {
      if (!v) return;
      rec.present |= bit;
      field = *v;
    };
    put(r.optimal_contraction_bound, RA_HAS_OPTIMAL, rec.optimal_contraction);
    put(r.corollary_bound, RA_HAS_COROLLARY, rec.corollary);
    put(r.beta_refined_bound, RA_HAS_BETA_REFINED, rec.beta_refined);
    put(r.power_bounded_bound, RA_HAS_POWER_BOUNDED, rec.power_bounded);
    put(r.unit_circle_bound, RA_HAS_UNIT_CIRCLE, rec.unit_circle);
    put(r.raw_wiener_bound, RA_HAS_RAW_WIENER, rec.raw_wiener);
    put(r.actual_norm, RA_HAS_ACTUAL, rec.actual_norm);
    rec.equality = r.equality;
    rec.violation_count = r.violations.size();
  });
}

const char* ra_bound_sweep_warning(const ra_bound_sweep* sweep, size_t index) {
  if (!sweep || index >= sweep->value.reports.size()) return "";
  return sweep->value.reports[index].warning.c_str();
}

const char* ra_bound_sweep_violation(const ra_bound_sweep* sweep, size_t index, size_t k) {
  if (!sweep || index >= sweep->value.reports.size()) return "";
  const auto& v = sweep->value.reports[index].violations;
  return k < v.size() ? v[k].c_str() : "";
}

/* Markov chains */

ra_status ra_markov_create(const ra_matrix* transition, ra_markov** out) {
  return guarded([&] {
    ra_markov*& slot = need_out(out);
    slot = new ra_markov{validate_stochastic(need(transition, "transition").value)};
  });
}

void ra_markov_destroy(ra_markov* m) { delete m; }

ra_status ra_markov_stationary_projection(ra_markov* m, ra_matrix** out) {
  return guarded([&] {
    if (!m) fail(ErrorCode::invalid_argument, "chain must not be NULL");
    emit(out, stationary_projection(m->value));
  });
}

ra_status ra_markov_fundamental_inverse(ra_markov* m, ra_matrix** out) {
  return guarded([&] {
    if (!m) fail(ErrorCode::invalid_argument, "chain must not be NULL");
    emit(out, fundamental_inverse(m->value));
  });
}

ra_status ra_markov_kappa_exact(ra_markov* m, double* out) {
  return guarded([&] {
    if (!m) fail(ErrorCode::invalid_argument, "chain must not be NULL");
    need_out(out) = kappa_cl_exact(m->value);
  });
}

ra_status ra_markov_kappa_bounds(ra_markov* m, ra_kappa_cl_bounds* out) {
  return guarded([&] {
    if (!m) fail(ErrorCode::invalid_argument, "chain must not be NULL");
    ra_kappa_cl_bounds& slot = need_out(out);
    const KappaClassicalBounds b = kappa_cl_bounds(m->value);
    slot = ra_kappa_cl_bounds{b.lower, b.upper_cited, b.upper_new, b.subdominant_gap, b.sub_spectrum_gap};
  });
}

ra_status ra_markov_sub_spectrum(ra_markov* m, ra_complex* out, size_t capacity) {
  return guarded([&] {
    if (!m) fail(ErrorCode::invalid_argument, "chain must not be NULL");
    kappa_cl_bounds(m->value);
    write_points(*m->value.sub_spectrum, out, capacity);
  });
}

ra_status ra_quantum_create(const ra_matrix* superoperator, ra_quantum** out) {
  return guarded([&] {
    ra_quantum*& slot = need_out(out);
    slot = new ra_quantum{make_quantum_channel(need(superoperator, "superoperator").value)};
  });
}

void ra_quantum_destroy(ra_quantum* q) { delete q; }

size_t ra_quantum_dimension(const ra_quantum* q) { return q ? q->value.dimension : 0; }

ra_status ra_quantum_kappa_bounds(const ra_quantum* q, ra_kappa_qu_bounds* out) {
  return guarded([&] {
    ra_kappa_qu_bounds& slot = need_out(out);
    const KappaQuantumBounds b = kappa_qu_bounds(need(q, "channel").value);
    slot = ra_kappa_qu_bounds{b.lower, b.upper, b.gap};
  });
}

ra_status ra_quantum_monte_carlo_lower(const ra_quantum* q, size_t samples, uint64_t seed, double* out) {
  return guarded([&] { need_out(out) = kappa_qu_monte_carlo_lower(need(q, "channel").value, samples, seed); });
}

ra_status ra_depolarizing_superoperator(size_t n, double p, ra_matrix** out) {
  return guarded([&] { emit(out, depolarizing_superoperator(n, p)); });
}

/* identity suites and verification */

ra_status ra_identity_suite(ra_identity_kind kind, size_t instances, uint64_t seed, ra_identity_result* out) {
  return guarded([&] {
    ra_identity_result& slot = need_out(out);
    IdentityKind k;
    switch (kind) {
      case RA_IDENTITY_COMBI1: k = IdentityKind::combi1; break;
      case RA_IDENTITY_COMBI2_PART1: k = IdentityKind::combi2_first; break;
      case RA_IDENTITY_COMBI2_PART2: k = IdentityKind::combi2_second; break;
      case RA_IDENTITY_GTILDE_H2: k = IdentityKind::gtilde_h2; break;
      default: fail(ErrorCode::invalid_argument, "unknown identity kind");
    }
    const IdentitySuiteResult r = identity_suite(k, instances, seed);
    slot = ra_identity_result{r.instances, r.failures, r.max_relative_gap, r.tolerance};
  });
}

ra_status ra_verify_run(uint64_t seed, ra_verify_report** out) {
  return guarded([&] {
    ra_verify_report*& slot = need_out(out);
    slot = new ra_verify_report{run_verification(seed)};
  });
}

void ra_verify_destroy(ra_verify_report* r) { delete r; }

size_t ra_verify_count(const ra_verify_report* r) { return r ? r->value.size() : 0; }

ra_status ra_verify_get(const ra_verify_report* r, size_t index, int* id, int* passed, const char** name,
                        const char** detail) {
  return guarded([&] {
    const auto& results = need(r, "report").value;
    require(index < results.size(), ErrorCode::invalid_argument, "index out of range");
    const CriterionResult& c = results[index];
    if (id) *id = c.id;
    if (passed) *passed = c.passed;
    if (name) *name = c.name.c_str();
    if (detail) *detail = c.detail.c_str();
  });
}

/* parsing */

ra_status ra_parse_complex(const char* text, ra_complex* out) {
  return guarded([&] { need_out(out) = to_c(parse_complex(need_text(text))); });
}

ra_status ra_parse_grid(const char* text, ra_complex** points, size_t* count) {
  return guarded([&] {
    need_out(points);
    need_out(count);
    const std::vector<Complex> grid = parse_grid(need_text(text));
    auto* buf = static_cast<ra_complex*>(std::malloc(grid.size() * sizeof(ra_complex)));
    if (!buf) throw std::bad_alloc();
    for (std::size_t k = 0; k < grid.size(); ++k) buf[k] = to_c(grid[k]);
    *points = buf;
    *count = grid.size();
  });
}

void ra_complex_array_free(ra_complex* points) { std::free(points); }

}  // extern "C"
