#ifndef QPENT_QPENT_H
#define QPENT_QPENT_H

/*
 * C API of the qpent shared library.
 *
 * The library verifies, exactly and numerically, the chain linking the
 * q-binomial formula, the quantum pentagon identity in the algebra with
 * uv = q vu, and the Rogers five-term dilogarithm identity reached in the
 * q -> 1^- limit.
 *
 * Conventions:
 *   - every fallible call returns a qpent_status; QPENT_OK is 0;
 *   - results come back through out parameters;
 *   - opaque handles are created and destroyed by matching
 *     qpent_*_create / qpent_*_destroy pairs (destroy accepts NULL);
 *   - qpent_last_error() returns a thread-local message for the most
 *     recent failure on the calling thread.
 */

#include <stddef.h>

#if defined(__cplusplus)
extern "C" {
#endif

typedef enum qpent_status {
  QPENT_OK = 0,
  QPENT_ERR_DOMAIN = 1,  /* input outside the mathematical domain */
  QPENT_ERR_USAGE = 2,   /* API misuse: null pointer, mismatched sizes, bad enum */
  QPENT_ERR_NUMERIC = 3, /* computation failed to produce a trustworthy value */
  QPENT_ERR_INTERNAL = 4
} qpent_status;

const char* qpent_status_name(qpent_status status);
const char* qpent_last_error(void);
const char* qpent_version(void);

/* ------------------------------------------------------------------ */
/* Parameters                                                          */
/* ------------------------------------------------------------------ */

/* Numeric triple (q, a, z) in (0,1)^3 plus tolerances. */
typedef struct qpent_params qpent_params;

qpent_status qpent_params_create(double q, double a, double z, qpent_params** out);
void qpent_params_destroy(qpent_params* params);
/* tol_rel: report slack; tol_term: certified series tail cutoff. */
qpent_status qpent_params_set_tolerances(qpent_params* params, double tol_rel, double tol_term);
/* 1 iff q > 1 - z(1-a), the single-peak regime. */
qpent_status qpent_params_unimodal_ok(const qpent_params* params, int* out);

/* ------------------------------------------------------------------ */
/* Exact layer                                                         */
/* ------------------------------------------------------------------ */

/* Exact check of q^{mn}/((q;q)_m (q;q)_n) = sum_k (-1)^k q^{k(k-1)/2} /
 * ((q;q)_{m-k} (q;q)_{n-k} (q;q)_k) for one pair. */
qpent_status qpent_verify_coeff_identity(unsigned m, unsigned n, int* pass);

typedef struct qpent_coeff_report qpent_coeff_report;

qpent_status qpent_verify_coeff_identity_range(unsigned max_m, unsigned max_n,
                                               qpent_coeff_report** out);
void qpent_coeff_report_destroy(qpent_coeff_report* report);
int qpent_coeff_report_all_pass(const qpent_coeff_report* report);
size_t qpent_coeff_report_pairs(const qpent_coeff_report* report);
size_t qpent_coeff_report_failures(const qpent_coeff_report* report);
size_t qpent_coeff_report_max_degree(const qpent_coeff_report* report);
/* Entry i in row-major (m, n) order. */
qpent_status qpent_coeff_report_entry(const qpent_coeff_report* report, size_t i, unsigned* m,
                                      unsigned* n, int* pass);

/* Quantum pentagon identity phi(u)phi(v) = phi(v)phi(-vu)phi(u), compared
 * coefficientwise over the exact rational-function field up to total
 * degree N. */
typedef struct qpent_pentagon_report qpent_pentagon_report;

qpent_status qpent_verify_pentagon(unsigned degree, qpent_pentagon_report** out);
void qpent_pentagon_report_destroy(qpent_pentagon_report* report);
int qpent_pentagon_report_pass(const qpent_pentagon_report* report);
unsigned qpent_pentagon_report_degree(const qpent_pentagon_report* report);
/* 0 if the identity held; otherwise fills the first mismatching monomial
 * v^vpow u^upow. The strings stay owned by the report. */
int qpent_pentagon_report_mismatch(const qpent_pentagon_report* report, unsigned* vpow,
                                   unsigned* upow, const char** lhs, const char** rhs);

/* Pentagon-side coefficients evaluated exactly at q = num/den and compared
 * against the independent floating-point term sums, for all monomials of
 * total degree <= max_degree. */
qpent_status qpent_pentagon_coeff_check(unsigned max_degree, long q_num, long q_den, double tol,
                                        double* max_abs_err, int* pass);

/* ------------------------------------------------------------------ */
/* Numeric layer                                                       */
/* ------------------------------------------------------------------ */

typedef struct qpent_bounds_report {
  double lower;
  double value;
  double upper;
  int pass;
  char label[96];
} qpent_bounds_report;

qpent_status qpent_li2(double x, double* out);
qpent_status qpent_ln_phi(const qpent_params* params, double x, double* out);
qpent_status qpent_ln_g(const qpent_params* params, double x, double* out);
qpent_status qpent_log_derivative_g(const qpent_params* params, double x, double* out);
qpent_status qpent_h_sum(const qpent_params* params, double x, double* out);
qpent_status qpent_h_integral(const qpent_params* params, double x, double* out);
qpent_status qpent_find_x0(const qpent_params* params, double* out);
qpent_status qpent_find_n0(const qpent_params* params, long* out);
qpent_status qpent_ln_sum_g(const qpent_params* params, double* out);
qpent_status qpent_ln_integral_g(const qpent_params* params, double* out);

/* 0 <= ln phi(x) + Li2(x)/ln q <= -ln(1-x). */
qpent_status qpent_check_phi_sandwich(const qpent_params* params, double x,
                                      qpent_bounds_report* report);
/* ln g(n0) <= ln S(g) <= ln(I(g) + g(n0)). */
qpent_status qpent_check_peak_sum_bounds(const qpent_params* params,
                                         qpent_bounds_report* report);
/* ln S(g) against ln phi(a) + ln phi(z) - ln phi(q) - ln phi(az). */
qpent_status qpent_verify_qbinomial(const qpent_params* params, qpent_bounds_report* report);

/* ------------------------------------------------------------------ */
/* Limit layer                                                         */
/* ------------------------------------------------------------------ */

qpent_status qpent_xi0(double a, double z, double* out);
/* F(xi) = Li2(xi) - Li2(a xi) + ln(xi) ln(z). */
qpent_status qpent_F_eval(double xi, double a, double z, double* out);
qpent_status qpent_rogers_residual(double a, double z, double* out);
qpent_status qpent_reflection_residual(double x, double* out);

typedef struct qpent_scan_record {
  int k;
  int flagged; /* 1: peak condition violated, numeric fields are NaN */
  double q;
  double h;
  double ln_sum_g;
  double L;
  double R;
  double target_F;
  double target_R;
  double residual_L;
  double residual_R;
} qpent_scan_record;

/* Scan q_k = 1 - 2^-k for k = k_min..k_max; writes min(count, capacity)
 * records and always reports the full count. Pass tol_rel/tol_term <= 0
 * for the defaults (1e-9, 1e-18). */
qpent_status qpent_limit_scan(double a, double z, int k_min, int k_max, double tol_rel,
                              double tol_term, qpent_scan_record* records, size_t capacity,
                              size_t* count);

/* Least-squares fit L(h) = L* + c1 h + ... + c_order h^order over the
 * smallest-h half of the non-flagged records. */
qpent_status qpent_extrapolate(const qpent_scan_record* records, size_t count, int order,
                               double* l_star, double* fit_rms);

#if defined(__cplusplus)
} /* extern "C" */
#endif

#endif /* QPENT_QPENT_H */
