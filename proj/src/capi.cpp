#include "qpent/qpent.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpent/errors.hpp"
#include "qpent/exactq.hpp"
#include "qpent/limitscan.hpp"
#include "qpent/qnumeric.hpp"
#include "qpent/skewalg.hpp"

// Opaque handle bodies.
struct qpent_params {
  qpent::qnum::QParams p;
};

struct qpent_coeff_report {
  qpent::exactq::CoeffIdentityReport report;
};

struct qpent_pentagon_report {
  qpent::skew::PentagonReport report;
};

namespace {

thread_local std::string g_last_error;

void set_last_error(const char* what) { g_last_error = what ? what : ""; }

// Runs fn, translating exceptions into status codes. All exported calls
// funnel through here so no exception crosses the C boundary.
template <typename Fn>
qpent_status guarded(Fn&& fn) {
  try {
    fn();
    return QPENT_OK;
  } catch (const qpent::numeric_error& e) {
    set_last_error(e.what());
    return QPENT_ERR_NUMERIC;
  } catch (const std::invalid_argument& e) {
    set_last_error(e.what());
    return QPENT_ERR_USAGE;
  } catch (const std::domain_error& e) {
    set_last_error(e.what());
    return QPENT_ERR_DOMAIN;
  } catch (const std::bad_alloc& e) {
    set_last_error("out of memory");
    return QPENT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_last_error(e.what());
    return QPENT_ERR_INTERNAL;
  } catch (...) {
    set_last_error("unknown error");
    return QPENT_ERR_INTERNAL;
  }
}

qpent_status usage_error(const char* what) {
  set_last_error(what);
  return QPENT_ERR_USAGE;
}

void fill_bounds(const qpent::qnum::BoundsReport& src, qpent_bounds_report* dst) {
  dst->lower = src.lower;
  dst->value = src.value;
  dst->upper = src.upper;
  dst->pass = src.pass ? 1 : 0;
  std::snprintf(dst->label, sizeof(dst->label), "%s", src.label.c_str());
}

}  // namespace

extern "C" {

const char* qpent_status_name(qpent_status status) {
  switch (status) {
    case QPENT_OK: return "ok";
    case QPENT_ERR_DOMAIN: return "domain error";
    case QPENT_ERR_USAGE: return "usage error";
    case QPENT_ERR_NUMERIC: return "numeric error";
    case QPENT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qpent_last_error(void) { return g_last_error.c_str(); }

const char* qpent_version(void) { return "1.0.0"; }

/* ------------------------------------------------------------------ */

qpent_status qpent_params_create(double q, double a, double z, qpent_params** out) {
  if (!out) return usage_error("qpent_params_create: null out");
  *out = nullptr;
  return guarded([&] { *out = new qpent_params{qpent::qnum::QParams(q, a, z)}; });
}

void qpent_params_destroy(qpent_params* params) { delete params; }

qpent_status qpent_params_set_tolerances(qpent_params* params, double tol_rel, double tol_term) {
  if (!params) return usage_error("qpent_params_set_tolerances: null params");
  return guarded([&] {
    params->p = qpent::qnum::QParams(params->p.q, params->p.a, params->p.z, tol_rel, tol_term);
  });
}

qpent_status qpent_params_unimodal_ok(const qpent_params* params, int* out) {
  if (!params || !out) return usage_error("qpent_params_unimodal_ok: null argument");
  *out = params->p.unimodal_ok() ? 1 : 0;
  return QPENT_OK;
}

/* ------------------------------------------------------------------ */

qpent_status qpent_verify_coeff_identity(unsigned m, unsigned n, int* pass) {
  if (!pass) return usage_error("qpent_verify_coeff_identity: null out");
  return guarded([&] { *pass = qpent::exactq::verify_coeff_identity(m, n) ? 1 : 0; });
}

qpent_status qpent_verify_coeff_identity_range(unsigned max_m, unsigned max_n,
                                               qpent_coeff_report** out) {
  if (!out) return usage_error("qpent_verify_coeff_identity_range: null out");
  *out = nullptr;
  return guarded([&] {
    *out = new qpent_coeff_report{qpent::exactq::verify_coeff_identity_range(max_m, max_n)};
  });
}

void qpent_coeff_report_destroy(qpent_coeff_report* report) { delete report; }

int qpent_coeff_report_all_pass(const qpent_coeff_report* report) {
  return report && report->report.all_pass() ? 1 : 0;
}

size_t qpent_coeff_report_pairs(const qpent_coeff_report* report) {
  return report ? report->report.pairs_checked : 0;
}

size_t qpent_coeff_report_failures(const qpent_coeff_report* report) {
  return report ? report->report.failures.size() : 0;
}

size_t qpent_coeff_report_max_degree(const qpent_coeff_report* report) {
  return report ? report->report.max_degree : 0;
}

qpent_status qpent_coeff_report_entry(const qpent_coeff_report* report, size_t i, unsigned* m,
                                      unsigned* n, int* pass) {
  if (!report || !m || !n || !pass) return usage_error("qpent_coeff_report_entry: null argument");
  if (i >= report->report.pass.size()) return usage_error("qpent_coeff_report_entry: index out of range");
  const unsigned cols = report->report.max_n + 1;
  *m = static_cast<unsigned>(i / cols);
  *n = static_cast<unsigned>(i % cols);
  *pass = report->report.pass[i] ? 1 : 0;
  return QPENT_OK;
}

qpent_status qpent_verify_pentagon(unsigned degree, qpent_pentagon_report** out) {
  if (!out) return usage_error("qpent_verify_pentagon: null out");
  *out = nullptr;
  return guarded([&] {
    *out = new qpent_pentagon_report{qpent::skew::verify_pentagon(degree)};
  });
}

void qpent_pentagon_report_destroy(qpent_pentagon_report* report) { delete report; }

int qpent_pentagon_report_pass(const qpent_pentagon_report* report) {
  return report && report->report.pass ? 1 : 0;
}

unsigned qpent_pentagon_report_degree(const qpent_pentagon_report* report) {
  return report ? report->report.degree : 0;
}

int qpent_pentagon_report_mismatch(const qpent_pentagon_report* report, unsigned* vpow,
                                   unsigned* upow, const char** lhs, const char** rhs) {
  if (!report || !report->report.first_mismatch) return 0;
  const auto& mm = *report->report.first_mismatch;
  if (vpow) *vpow = mm.vpow;
  if (upow) *upow = mm.upow;
  if (lhs) *lhs = mm.lhs.c_str();
  if (rhs) *rhs = mm.rhs.c_str();
  return 1;
}

qpent_status qpent_pentagon_coeff_check(unsigned max_degree, long q_num, long q_den, double tol,
                                        double* max_abs_err, int* pass) {
  if (!max_abs_err || !pass) return usage_error("qpent_pentagon_coeff_check: null out");
  return guarded([&] {
    using qpent::exactq::BigRat;
    if (q_den == 0) throw std::domain_error("pentagon_coeff_check: zero denominator");
    const BigRat q0(q_num, q_den);
    if (!(q0 > 0 && q0 < 1)) throw std::domain_error("pentagon_coeff_check: q0 outside (0,1)");
    const double qd = static_cast<double>(q_num) / static_cast<double>(q_den);
    if (!(tol > 0.0)) throw std::invalid_argument("pentagon_coeff_check: tol must be positive");

    const auto lhs = qpent::skew::pentagon_lhs(max_degree);
    const auto rhs = qpent::skew::pentagon_rhs(max_degree);
    double worst = 0.0;
    for (unsigned n = 0; n <= max_degree; ++n) {
      for (unsigned m = 0; n + m <= max_degree; ++m) {
        const double exact_l = static_cast<double>(lhs.coeff(n, m).eval(q0));
        const double exact_r = static_cast<double>(rhs.coeff(n, m).eval(q0));
        const double num_l = qpent::qnum::coeff_identity_lhs_value(m, n, qd);
        const double num_r = qpent::qnum::coeff_identity_rhs_value(m, n, qd);
        worst = std::max(worst, std::abs(exact_l - num_l));
        worst = std::max(worst, std::abs(exact_r - num_r));
      }
    }
    *max_abs_err = worst;
    *pass = worst <= tol ? 1 : 0;
  });
}

/* ------------------------------------------------------------------ */

qpent_status qpent_li2(double x, double* out) {
  if (!out) return usage_error("qpent_li2: null out");
  return guarded([&] { *out = qpent::qnum::li2(x); });
}

qpent_status qpent_ln_phi(const qpent_params* params, double x, double* out) {
  if (!params || !out) return usage_error("qpent_ln_phi: null argument");
  return guarded([&] { *out = qpent::qnum::ln_phi(x, params->p); });
}

qpent_status qpent_ln_g(const qpent_params* params, double x, double* out) {
  if (!params || !out) return usage_error("qpent_ln_g: null argument");
  return guarded([&] { *out = qpent::qnum::ln_g(x, params->p); });
}

qpent_status qpent_log_derivative_g(const qpent_params* params, double x, double* out) {
  if (!params || !out) return usage_error("qpent_log_derivative_g: null argument");
  return guarded([&] { *out = qpent::qnum::log_derivative_g(x, params->p); });
}

qpent_status qpent_h_sum(const qpent_params* params, double x, double* out) {
  if (!params || !out) return usage_error("qpent_h_sum: null argument");
  return guarded([&] { *out = qpent::qnum::h_sum(x, params->p); });
}

qpent_status qpent_h_integral(const qpent_params* params, double x, double* out) {
  if (!params || !out) return usage_error("qpent_h_integral: null argument");
  return guarded([&] { *out = qpent::qnum::h_integral(x, params->p); });
}

qpent_status qpent_find_x0(const qpent_params* params, double* out) {
  if (!params || !out) return usage_error("qpent_find_x0: null argument");
  return guarded([&] { *out = qpent::qnum::find_x0(params->p); });
}

qpent_status qpent_find_n0(const qpent_params* params, long* out) {
  if (!params || !out) return usage_error("qpent_find_n0: null argument");
  return guarded([&] { *out = qpent::qnum::find_n0(params->p); });
}

qpent_status qpent_ln_sum_g(const qpent_params* params, double* out) {
  if (!params || !out) return usage_error("qpent_ln_sum_g: null argument");
  return guarded([&] { *out = qpent::qnum::ln_sum_g(params->p); });
}

qpent_status qpent_ln_integral_g(const qpent_params* params, double* out) {
  if (!params || !out) return usage_error("qpent_ln_integral_g: null argument");
  return guarded([&] { *out = qpent::qnum::ln_integral_g(params->p); });
}

qpent_status qpent_check_phi_sandwich(const qpent_params* params, double x,
                                      qpent_bounds_report* report) {
  if (!params || !report) return usage_error("qpent_check_phi_sandwich: null argument");
  return guarded([&] { fill_bounds(qpent::qnum::check_phi_sandwich(x, params->p), report); });
}

qpent_status qpent_check_peak_sum_bounds(const qpent_params* params, qpent_bounds_report* report) {
  if (!params || !report) return usage_error("qpent_check_peak_sum_bounds: null argument");
  return guarded([&] { fill_bounds(qpent::qnum::check_peak_sum_bounds(params->p), report); });
}

qpent_status qpent_verify_qbinomial(const qpent_params* params, qpent_bounds_report* report) {
  if (!params || !report) return usage_error("qpent_verify_qbinomial: null argument");
  return guarded([&] { fill_bounds(qpent::qnum::verify_qbinomial(params->p), report); });
}

/* ------------------------------------------------------------------ */

qpent_status qpent_xi0(double a, double z, double* out) {
  if (!out) return usage_error("qpent_xi0: null out");
  return guarded([&] { *out = qpent::limits::xi0(a, z); });
}

qpent_status qpent_F_eval(double xi, double a, double z, double* out) {
  if (!out) return usage_error("qpent_F_eval: null out");
  return guarded([&] { *out = qpent::limits::F_eval(xi, a, z); });
}

qpent_status qpent_rogers_residual(double a, double z, double* out) {
  if (!out) return usage_error("qpent_rogers_residual: null out");
  return guarded([&] { *out = qpent::limits::rogers_residual(a, z); });
}

qpent_status qpent_reflection_residual(double x, double* out) {
  if (!out) return usage_error("qpent_reflection_residual: null out");
  return guarded([&] { *out = qpent::limits::reflection_residual(x); });
}

qpent_status qpent_limit_scan(double a, double z, int k_min, int k_max, double tol_rel,
                              double tol_term, qpent_scan_record* records, size_t capacity,
                              size_t* count) {
  if (!count || (capacity > 0 && !records)) return usage_error("qpent_limit_scan: null argument");
  *count = 0;
  return guarded([&] {
    const double rel = tol_rel > 0.0 ? tol_rel : 1e-9;
    const double term = tol_term > 0.0 ? tol_term : 1e-18;
    const auto rows = qpent::limits::limit_scan(a, z, k_min, k_max, rel, term);
    *count = rows.size();
    const size_t n = std::min(capacity, rows.size());
    for (size_t i = 0; i < n; ++i) {
      const auto& r = rows[i];
      records[i] = qpent_scan_record{r.k,        r.flagged ? 1 : 0,
                                     r.q,        r.h,
                                     r.ln_sum_g, r.L,
                                     r.R,        r.target_F,
                                     r.target_R, r.residual_L,
                                     r.residual_R};
    }
  });
}

qpent_status qpent_extrapolate(const qpent_scan_record* records, size_t count, int order,
                               double* l_star, double* fit_rms) {
  if (!records || !l_star) return usage_error("qpent_extrapolate: null argument");
  return guarded([&] {
    std::vector<qpent::limits::LimitScanRecord> rows(count);
    for (size_t i = 0; i < count; ++i) {
      const auto& r = records[i];
      rows[i].k = r.k;
      rows[i].flagged = r.flagged != 0;
      rows[i].q = r.q;
      rows[i].h = r.h;
      rows[i].ln_sum_g = r.ln_sum_g;
      rows[i].L = r.L;
      rows[i].R = r.R;
      rows[i].target_F = r.target_F;
      rows[i].target_R = r.target_R;
      rows[i].residual_L = r.residual_L;
      rows[i].residual_R = r.residual_R;
    }
    const auto fit = qpent::limits::extrapolate(rows, order);
    *l_star = fit.l_star;
    if (fit_rms) *fit_rms = fit.fit_rms;
  });
}

} /* extern "C" */
