/*
 * resolvent_atlas: resolvent-norm bounds for non-normal matrices.
 *
 * Conventions
 *   - Every fallible call returns ra_status; RA_OK is 0. On failure the
 *     thread-local message from ra_last_error() describes the cause and no
 *     output parameter is written.
 *   - Objects are opaque handles created by *_create / producer calls and
 *     released by the matching *_destroy. Destroy functions accept NULL.
 *   - Matrices are row-major; indices are 0-based.
 *   - Strings returned through char** are owned by the caller and released
 *     with ra_string_free.
 *   - Handles are immutable except ra_markov, which caches derived data and
 *     must not be used from several threads at once.
 */
#ifndef RESOLVENT_ATLAS_H
#define RESOLVENT_ATLAS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RESOLVENT_ATLAS_BUILD)
#define RA_API __declspec(dllexport)
#else
#define RA_API __declspec(dllimport)
#endif
#else
#define RA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ra_status {
  RA_OK = 0,
  RA_ERR_INVALID_ARGUMENT = 1,
  RA_ERR_HYPOTHESIS = 2,
  RA_ERR_NON_FINITE = 3,
  RA_ERR_SINGULAR = 4,
  RA_ERR_NO_CONVERGENCE = 5,
  RA_ERR_NOT_UNIQUE = 6,
  RA_ERR_PARSE = 7,
  RA_ERR_OVERFLOW = 8,
  RA_ERR_INTERNAL = 99
} ra_status;

typedef enum ra_norm_kind { RA_NORM_SPECTRAL = 0, RA_NORM_ONE_TO_ONE = 1 } ra_norm_kind;

typedef struct ra_complex {
  double re;
  double im;
} ra_complex;

typedef struct ra_matrix ra_matrix;
typedef struct ra_spectrum ra_spectrum;
typedef struct ra_bound_sweep ra_bound_sweep;
typedef struct ra_markov ra_markov;
typedef struct ra_quantum ra_quantum;
typedef struct ra_verify_report ra_verify_report;

RA_API const char* ra_version(void);
RA_API const char* ra_status_name(ra_status status);
/* Message of the most recent failure on this thread; "" if none. */
RA_API const char* ra_last_error(void);
RA_API void ra_string_free(char* s);

/* ---- matrices --------------------------------------------------------- */

/* entries may be NULL for a zero matrix; otherwise rows*cols values. */
RA_API ra_status ra_matrix_create(size_t rows, size_t cols, const ra_complex* entries, ra_matrix** out);
RA_API ra_status ra_matrix_clone(const ra_matrix* m, ra_matrix** out);
RA_API void ra_matrix_destroy(ra_matrix* m);
RA_API size_t ra_matrix_rows(const ra_matrix* m);
RA_API size_t ra_matrix_cols(const ra_matrix* m);
RA_API ra_status ra_matrix_get(const ra_matrix* m, size_t row, size_t col, ra_complex* out);
/* Copies all entries when capacity >= rows*cols. */
RA_API ra_status ra_matrix_entries(const ra_matrix* m, ra_complex* out, size_t capacity);
/* a - b */
RA_API ra_status ra_matrix_subtract(const ra_matrix* a, const ra_matrix* b, ra_matrix** out);

RA_API ra_status ra_matrix_from_json(const char* text, ra_matrix** out);
RA_API ra_status ra_matrix_from_csv(const char* text, ra_matrix** out);
/* CSV when the path ends in .csv, JSON otherwise. */
RA_API ra_status ra_matrix_load(const char* path, ra_matrix** out);
RA_API ra_status ra_matrix_to_json(const ra_matrix* m, char** out);

/* ---- dense kernels ---------------------------------------------------- */

RA_API ra_status ra_spectral_norm(const ra_matrix* m, double* out);
RA_API ra_status ra_induced_one_norm(const ra_matrix* m, double* out);
RA_API ra_status ra_matrix_norm(const ra_matrix* m, ra_norm_kind kind, double* out);
/* Writes n = rows eigenvalues; capacity must be >= n. */
RA_API ra_status ra_eigenvalues(const ra_matrix* m, ra_complex* out, size_t capacity);
RA_API ra_status ra_resolvent_direct(const ra_matrix* m, ra_complex zeta, ra_matrix** out);
RA_API ra_status ra_power_sup_norm(const ra_matrix* m, ra_norm_kind kind, int max_power, double* out);

/* ---- spectra and Blaschke products ------------------------------------ */

RA_API ra_status ra_spectrum_create(const ra_complex* points, size_t count, ra_spectrum** out);
/* Comma-separated complex literals such as "0.5,0.3+0.2i,-i". */
RA_API ra_status ra_spectrum_parse(const char* text, ra_spectrum** out);
/* All eigenvalues of a square matrix. */
RA_API ra_status ra_spectrum_from_matrix(const ra_matrix* m, ra_spectrum** out);
/* Same points reordered by increasing modulus. */
RA_API ra_status ra_spectrum_sorted_by_modulus(const ra_spectrum* s, ra_spectrum** out);
RA_API void ra_spectrum_destroy(ra_spectrum* s);
RA_API size_t ra_spectrum_degree(const ra_spectrum* s);
RA_API ra_status ra_spectrum_get(const ra_spectrum* s, size_t index, ra_complex* out);

RA_API ra_status ra_blaschke_eval(const ra_spectrum* s, ra_complex z, ra_complex* out);
/* Factors first..last inclusive. */
RA_API ra_status ra_blaschke_truncated_eval(const ra_spectrum* s, size_t first, size_t last, ra_complex z,
                                            ra_complex* out);
RA_API ra_status ra_combi1_sides(const ra_spectrum* s, ra_complex zeta, size_t j, size_t i, ra_complex* lhs,
                                 ra_complex* rhs);
/* part is 1 or 2; l is used by part 1 only. */
RA_API ra_status ra_combi2_sides(const ra_spectrum* s, ra_complex zeta, double r, int part, size_t l,
                                 ra_complex* lhs, ra_complex* rhs);
RA_API ra_status ra_gtilde_h2_norm(const ra_spectrum* s, ra_complex zeta, double r, double* out);
/* tail_bound may be NULL. */
RA_API ra_status ra_gtilde_taylor_h2(const ra_spectrum* s, ra_complex zeta, double r, size_t degree, double* norm,
                                     double* tail_bound);

/* ---- model operator --------------------------------------------------- */

RA_API ra_status ra_model_operator(const ra_spectrum* s, ra_matrix** out);
RA_API ra_status ra_model_resolvent(const ra_spectrum* s, ra_complex zeta, ra_matrix** out);
RA_API ra_status ra_malmquist_walsh(const ra_spectrum* s, size_t k, ra_complex z, ra_complex* out);
RA_API ra_status ra_extremal_contraction(size_t n, double a, ra_matrix** out);

/* ---- Toeplitz family -------------------------------------------------- */

RA_API ra_status ra_toeplitz_matrix(size_t n, double beta, ra_matrix** out);
RA_API ra_status ra_cot_residual(size_t n, double beta, double theta, double* out);
RA_API ra_status ra_solve_theta_star(size_t n, double beta, double* out);
RA_API ra_status ra_toeplitz_norm(size_t n, double beta, double* out);

/* ---- bounds ----------------------------------------------------------- */

typedef struct ra_bound_query {
  ra_complex zeta;
  double power_bound_constant; /* 1 for contractions */
  int has_r;                   /* nonzero: use r below */
  double r;
} ra_bound_query;

RA_API ra_status ra_contraction_bound_optimal(const ra_spectrum* s, const ra_bound_query* q, double* out);
RA_API ra_status ra_contraction_bound_corollary(const ra_spectrum* s, const ra_bound_query* q, double* out);
RA_API ra_status ra_contraction_bound_beta_refined(const ra_spectrum* s, double* out);
RA_API ra_status ra_power_bounded_bound(const ra_spectrum* s, const ra_bound_query* q, double* out);
RA_API ra_status ra_unit_circle_bound(const ra_spectrum* s, double c, ra_complex zeta, double* out);
RA_API ra_status ra_qualitative_interior_bound(const ra_spectrum* s, const ra_bound_query* q, double* out);
/* refine nonzero: golden-section minimization over r. */
RA_API ra_status ra_raw_wiener_bound(const ra_spectrum* s, const ra_bound_query* q, int refine, double* out);

typedef enum ra_assumption { RA_ASSUME_CONTRACTION = 0, RA_ASSUME_POWER_BOUNDED = 1 } ra_assumption;

enum {
  RA_HAS_OPTIMAL = 1u << 0,
  RA_HAS_COROLLARY = 1u << 1,
  RA_HAS_BETA_REFINED = 1u << 2,
  RA_HAS_POWER_BOUNDED = 1u << 3,
  RA_HAS_UNIT_CIRCLE = 1u << 4,
  RA_HAS_RAW_WIENER = 1u << 5,
  RA_HAS_ACTUAL = 1u << 6
};

typedef struct ra_bound_record {
  ra_complex zeta;
  int skipped;
  uint32_t present; /* RA_HAS_* bits */
  double optimal_contraction;
  double corollary;
  double beta_refined;
  double power_bounded;
  double unit_circle;
  double raw_wiener;
  double actual_norm;
  int equality;
  size_t violation_count;
} ra_bound_record;

/* Exactly one of matrix / spectrum must be non-NULL. threads = 0 picks a default. */
RA_API ra_status ra_bound_report(const ra_matrix* matrix, const ra_spectrum* spectrum, const ra_complex* grid,
                                 size_t grid_count, ra_assumption assumption, double power_bound_constant,
                                 ra_norm_kind norm, unsigned threads, ra_bound_sweep** out);
RA_API void ra_bound_sweep_destroy(ra_bound_sweep* sweep);
RA_API size_t ra_bound_sweep_size(const ra_bound_sweep* sweep);
RA_API int ra_bound_sweep_hypothesis_holds(const ra_bound_sweep* sweep);
RA_API size_t ra_bound_sweep_violation_count(const ra_bound_sweep* sweep);
/* Spectrum used for the bounds (eigenvalues when a matrix was given). */
RA_API ra_status ra_bound_sweep_spectrum(const ra_bound_sweep* sweep, ra_spectrum** out);
RA_API ra_status ra_bound_sweep_record(const ra_bound_sweep* sweep, size_t index, ra_bound_record* out);
/* Borrowed strings valid until the sweep is destroyed; "" when absent. */
RA_API const char* ra_bound_sweep_warning(const ra_bound_sweep* sweep, size_t index);
RA_API const char* ra_bound_sweep_violation(const ra_bound_sweep* sweep, size_t index, size_t k);

/* ---- Markov chains ---------------------------------------------------- */

typedef struct ra_kappa_cl_bounds {
  double lower;
  double upper_cited;
  double upper_new;
  double subdominant_gap;
  double sub_spectrum_gap;
} ra_kappa_cl_bounds;

typedef struct ra_kappa_qu_bounds {
  double lower;
  double upper;
  double gap;
} ra_kappa_qu_bounds;

/* Validates a column-stochastic matrix. */
RA_API ra_status ra_markov_create(const ra_matrix* transition, ra_markov** out);
RA_API void ra_markov_destroy(ra_markov* m);
RA_API ra_status ra_markov_stationary_projection(ra_markov* m, ra_matrix** out);
RA_API ra_status ra_markov_fundamental_inverse(ra_markov* m, ra_matrix** out);
RA_API ra_status ra_markov_kappa_exact(ra_markov* m, double* out);
RA_API ra_status ra_markov_kappa_bounds(ra_markov* m, ra_kappa_cl_bounds* out);
/* Spectrum of T - T_inf; capacity must be >= n. */
RA_API ra_status ra_markov_sub_spectrum(ra_markov* m, ra_complex* out, size_t capacity);

RA_API ra_status ra_quantum_create(const ra_matrix* superoperator, ra_quantum** out);
RA_API void ra_quantum_destroy(ra_quantum* q);
RA_API size_t ra_quantum_dimension(const ra_quantum* q);
RA_API ra_status ra_quantum_kappa_bounds(const ra_quantum* q, ra_kappa_qu_bounds* out);
RA_API ra_status ra_quantum_monte_carlo_lower(const ra_quantum* q, size_t samples, uint64_t seed, double* out);
RA_API ra_status ra_depolarizing_superoperator(size_t n, double p, ra_matrix** out);

/* ---- identity suites and verification ---------------------------------- */

typedef enum ra_identity_kind {
  RA_IDENTITY_COMBI1 = 0,
  RA_IDENTITY_COMBI2_PART1 = 1,
  RA_IDENTITY_COMBI2_PART2 = 2,
  RA_IDENTITY_GTILDE_H2 = 3
} ra_identity_kind;

typedef struct ra_identity_result {
  size_t instances;
  size_t failures;
  double max_relative_gap;
  double tolerance;
} ra_identity_result;

RA_API ra_status ra_identity_suite(ra_identity_kind kind, size_t instances, uint64_t seed, ra_identity_result* out);

RA_API ra_status ra_verify_run(uint64_t seed, ra_verify_report** out);
RA_API void ra_verify_destroy(ra_verify_report* r);
RA_API size_t ra_verify_count(const ra_verify_report* r);
/* Borrowed strings valid until the report is destroyed. */
RA_API ra_status ra_verify_get(const ra_verify_report* r, size_t index, int* id, int* passed, const char** name,
                               const char** detail);

/* ---- parsing helpers -------------------------------------------------- */

RA_API ra_status ra_parse_complex(const char* text, ra_complex* out);
/* circle:R:N | segment:Z1:Z2:N | list:Z1,Z2,...; free *points with ra_complex_array_free. */
RA_API ra_status ra_parse_grid(const char* text, ra_complex** points, size_t* count);
RA_API void ra_complex_array_free(ra_complex* points);

#ifdef __cplusplus
}
#endif

#endif /* RESOLVENT_ATLAS_H */
