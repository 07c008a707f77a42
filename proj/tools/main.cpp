// qpent command-line front end. Talks to the core exclusively through the
// C API in qpent/qpent.h; every number printed goes through one fixed
// 17-significant-digit formatter so identical configs give byte-identical
// output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpent/qpent.h"

namespace {

enum ExitCode { kPass = 0, kVerificationFailed = 1, kUsage = 2 };

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

// Minimal deterministic JSON emitter: fixed key order, %.17g numbers.
class JsonWriter {
 public:
  void open_object() { out_ << "{"; fresh_ = true; }
  void close_object() { out_ << "}"; fresh_ = false; }
  void open_array(const std::string& key) { comma(); out_ << quote(key) << ":["; fresh_ = true; }
  void close_array() { out_ << "]"; fresh_ = false; }
  void item_object() { comma(); out_ << "{"; fresh_ = true; }
  void field(const std::string& key, double v) {
    comma();
    out_ << quote(key) << ":";
    if (std::isnan(v)) {
      out_ << "null";
    } else {
      out_ << fmt(v);
    }
  }
  void field(const std::string& key, const std::string& v) {
    comma();
    out_ << quote(key) << ":" << quote(v);
  }
  void field(const std::string& key, long v) { comma(); out_ << quote(key) << ":" << v; }
  void field(const std::string& key, int v) { comma(); out_ << quote(key) << ":" << v; }
  void field(const std::string& key, unsigned v) { comma(); out_ << quote(key) << ":" << v; }
  void field(const std::string& key, std::size_t v) { comma(); out_ << quote(key) << ":" << v; }
  void field(const std::string& key, bool v) {
    comma();
    out_ << quote(key) << ":" << (v ? "true" : "false");
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string quote(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r + "\"";
  }
  void comma() {
    if (!fresh_) out_ << ",";
    fresh_ = false;
  }
  std::ostringstream out_;
  bool fresh_ = true;
};

struct GlobalOptions {
  std::string format = "text";
  std::string out_path;
  double tol_rel = 1e-9;
};

int emit(const GlobalOptions& opts, const std::string& payload) {
  if (opts.out_path.empty()) {
    std::cout << payload;
    return kPass;
  }
  std::ofstream f(opts.out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file '" << opts.out_path << "'\n";
    return kUsage;
  }
  f << payload;
  if (!f.good()) {
    std::cerr << "error: write to '" << opts.out_path << "' failed\n";
    return kUsage;
  }
  return kPass;
}

int api_error(const char* where, qpent_status status) {
  std::cerr << "error: " << where << ": " << qpent_status_name(status) << " ("
            << qpent_last_error() << ")\n";
  return kUsage;
}

bool in_unit_interval(double v) { return v > 0.0 && v < 1.0; }

struct ParamsHandle {
  qpent_params* p = nullptr;
  ~ParamsHandle() { qpent_params_destroy(p); }
};

int make_params(double q, double a, double z, double tol_rel, ParamsHandle& h) {
  qpent_status st = qpent_params_create(q, a, z, &h.p);
  if (st != QPENT_OK) return api_error("params", st);
  st = qpent_params_set_tolerances(h.p, tol_rel, 1e-18);
  if (st != QPENT_OK) return api_error("params", st);
  return kPass;
}

// ---------------------------------------------------------------------
// verify-e7
// ---------------------------------------------------------------------

int run_verify_e7(const GlobalOptions& opts, unsigned max_m, unsigned max_n) {
  qpent_coeff_report* report = nullptr;
  const qpent_status st = qpent_verify_coeff_identity_range(max_m, max_n, &report);
  if (st != QPENT_OK) return api_error("verify-e7", st);
  std::unique_ptr<qpent_coeff_report, void (*)(qpent_coeff_report*)> guard(
      report, qpent_coeff_report_destroy);

  const bool all_pass = qpent_coeff_report_all_pass(report) != 0;
  const std::size_t pairs = qpent_coeff_report_pairs(report);

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "m,n,pass\n";
    for (std::size_t i = 0; i < pairs; ++i) {
      unsigned m, n;
      int pass;
      qpent_coeff_report_entry(report, i, &m, &n, &pass);
      body << m << "," << n << "," << pass << "\n";
    }
  } else if (opts.format == "json") {
    JsonWriter jw;
    jw.open_object();
    jw.field("command", std::string("verify-e7"));
    jw.field("version", std::string(qpent_version()));
    jw.field("max_m", max_m);
    jw.field("max_n", max_n);
    jw.field("pairs", pairs);
    jw.field("max_degree", qpent_coeff_report_max_degree(report));
    jw.field("failures", qpent_coeff_report_failures(report));
    jw.field("all_pass", all_pass);
    jw.open_array("results");
    for (std::size_t i = 0; i < pairs; ++i) {
      unsigned m, n;
      int pass;
      qpent_coeff_report_entry(report, i, &m, &n, &pass);
      jw.item_object();
      jw.field("m", m);
      jw.field("n", n);
      jw.field("pass", pass != 0);
      jw.close_object();
    }
    jw.close_array();
    jw.close_object();
    body << jw.str() << "\n";
  } else {
    body << "coefficient identity sweep m <= " << max_m << ", n <= " << max_n << "\n";
    body << "pairs checked: " << pairs
         << ", max polynomial degree: " << qpent_coeff_report_max_degree(report) << "\n";
    for (std::size_t i = 0; i < pairs; ++i) {
      unsigned m, n;
      int pass;
      qpent_coeff_report_entry(report, i, &m, &n, &pass);
      if (!pass) body << "FAIL at m=" << m << " n=" << n << "\n";
    }
    body << (all_pass ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  }
  const int io = emit(opts, body.str());
  if (io != kPass) return io;
  return all_pass ? kPass : kVerificationFailed;
}

// ---------------------------------------------------------------------
// verify-pentagon
// ---------------------------------------------------------------------

int run_verify_pentagon(const GlobalOptions& opts, unsigned degree) {
  qpent_pentagon_report* report = nullptr;
  const qpent_status st = qpent_verify_pentagon(degree, &report);
  if (st != QPENT_OK) return api_error("verify-pentagon", st);
  std::unique_ptr<qpent_pentagon_report, void (*)(qpent_pentagon_report*)> guard(
      report, qpent_pentagon_report_destroy);

  const bool pass = qpent_pentagon_report_pass(report) != 0;
  unsigned vpow = 0, upow = 0;
  const char* lhs = "";
  const char* rhs = "";
  const bool mismatch = qpent_pentagon_report_mismatch(report, &vpow, &upow, &lhs, &rhs) != 0;

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "degree,pass,mismatch_vpow,mismatch_upow\n";
    body << degree << "," << (pass ? 1 : 0) << ",";
    if (mismatch) {
      body << vpow << "," << upow;
    } else {
      body << ",";
    }
    body << "\n";
  } else if (opts.format == "json") {
    JsonWriter jw;
    jw.open_object();
    jw.field("command", std::string("verify-pentagon"));
    jw.field("version", std::string(qpent_version()));
    jw.field("degree", degree);
    jw.field("pass", pass);
    if (mismatch) {
      jw.field("mismatch_vpow", vpow);
      jw.field("mismatch_upow", upow);
      jw.field("mismatch_lhs", std::string(lhs));
      jw.field("mismatch_rhs", std::string(rhs));
    }
    jw.close_object();
    body << jw.str() << "\n";
  } else {
    body << "pentagon identity phi(u)phi(v) = phi(v)phi(-vu)phi(u), total degree <= " << degree
         << "\n";
    if (mismatch) {
      body << "first mismatch at v^" << vpow << " u^" << upow << ":\n";
      body << "  left : " << lhs << "\n";
      body << "  right: " << rhs << "\n";
    }
    body << (pass ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  }
  const int io = emit(opts, body.str());
  if (io != kPass) return io;
  return pass ? kPass : kVerificationFailed;
}

// ---------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------

int run_eval(const GlobalOptions& opts, double q, double a, double z, double x) {
  ParamsHandle params;
  if (int rc = make_params(q, a, z, opts.tol_rel, params); rc != kPass) return rc;

  std::vector<std::pair<std::string, double>> rows;
  auto push = [&](const char* name, qpent_status st, double v) -> std::optional<int> {
    if (st != QPENT_OK) return api_error(name, st);
    rows.emplace_back(name, v);
    return std::nullopt;
  };

  double v;
  if (auto rc = push("li2", qpent_li2(x, &v), v)) return *rc;
  if (x < 1.0) {
    if (auto rc = push("ln_phi", qpent_ln_phi(params.p, x, &v), v)) return *rc;
  }
  if (auto rc = push("ln_g", qpent_ln_g(params.p, x, &v), v)) return *rc;
  if (auto rc = push("log_derivative_g", qpent_log_derivative_g(params.p, x, &v), v)) return *rc;
  if (auto rc = push("h_sum", qpent_h_sum(params.p, x, &v), v)) return *rc;
  if (auto rc = push("h_integral", qpent_h_integral(params.p, x, &v), v)) return *rc;
  if (auto rc = push("xi0", qpent_xi0(a, z, &v), v)) return *rc;
  double xi;
  qpent_xi0(a, z, &xi);
  if (auto rc = push("F_at_xi0", qpent_F_eval(xi, a, z, &v), v)) return *rc;
  if (auto rc = push("rogers_residual", qpent_rogers_residual(a, z, &v), v)) return *rc;
  if (auto rc = push("reflection_residual", qpent_reflection_residual(x, &v), v)) return *rc;
  if (auto rc = push("ln_sum_g", qpent_ln_sum_g(params.p, &v), v)) return *rc;

  int unimodal = 0;
  qpent_params_unimodal_ok(params.p, &unimodal);
  if (unimodal) {
    if (auto rc = push("x0", qpent_find_x0(params.p, &v), v)) return *rc;
    long n0;
    if (qpent_find_n0(params.p, &n0) == QPENT_OK) {
      rows.emplace_back("n0", static_cast<double>(n0));
    }
  }

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "name,value\n";
    for (const auto& [name, value] : rows) body << name << "," << fmt(value) << "\n";
  } else if (opts.format == "json") {
    JsonWriter jw;
    jw.open_object();
    jw.field("command", std::string("eval"));
    jw.field("version", std::string(qpent_version()));
    jw.field("q", q);
    jw.field("a", a);
    jw.field("z", z);
    jw.field("x", x);
    jw.field("tol_rel", opts.tol_rel);
    jw.field("unimodal_ok", unimodal != 0);
    for (const auto& [name, value] : rows) jw.field(name, value);
    jw.close_object();
    body << jw.str() << "\n";
  } else {
    body << "point evaluation at q=" << fmt(q) << " a=" << fmt(a) << " z=" << fmt(z)
         << " x=" << fmt(x) << "\n";
    for (const auto& [name, value] : rows) {
      body << "  " << name << " = " << fmt(value) << "\n";
    }
  }
  return emit(opts, body.str());
}

// ---------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------

int run_bounds(const GlobalOptions& opts, double q, double a, double z, double x) {
  ParamsHandle params;
  if (int rc = make_params(q, a, z, opts.tol_rel, params); rc != kPass) return rc;

  std::vector<qpent_bounds_report> reports;
  qpent_bounds_report r;
  qpent_status st = qpent_check_phi_sandwich(params.p, x, &r);
  if (st != QPENT_OK) return api_error("bounds: phi sandwich", st);
  reports.push_back(r);

  st = qpent_verify_qbinomial(params.p, &r);
  if (st != QPENT_OK) return api_error("bounds: q-binomial", st);
  reports.push_back(r);

  int unimodal = 0;
  qpent_params_unimodal_ok(params.p, &unimodal);
  if (unimodal) {
    st = qpent_check_peak_sum_bounds(params.p, &r);
    if (st != QPENT_OK) return api_error("bounds: peak sum", st);
    reports.push_back(r);
  }

  bool all_pass = true;
  for (const auto& rep : reports) all_pass = all_pass && rep.pass != 0;

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "label,lower,value,upper,pass\n";
    for (const auto& rep : reports) {
      body << rep.label << "," << fmt(rep.lower) << "," << fmt(rep.value) << ","
           << fmt(rep.upper) << "," << rep.pass << "\n";
    }
  } else if (opts.format == "json") {
    JsonWriter jw;
    jw.open_object();
    jw.field("command", std::string("bounds"));
    jw.field("version", std::string(qpent_version()));
    jw.field("q", q);
    jw.field("a", a);
    jw.field("z", z);
    jw.field("x", x);
    jw.field("tol_rel", opts.tol_rel);
    jw.field("all_pass", all_pass);
    jw.open_array("results");
    for (const auto& rep : reports) {
      jw.item_object();
      jw.field("label", std::string(rep.label));
      jw.field("lower", rep.lower);
      jw.field("value", rep.value);
      jw.field("upper", rep.upper);
      jw.field("pass", rep.pass != 0);
      jw.close_object();
    }
    jw.close_array();
    jw.close_object();
    body << jw.str() << "\n";
  } else {
    body << "bound checks at q=" << fmt(q) << " a=" << fmt(a) << " z=" << fmt(z)
         << " x=" << fmt(x) << "\n";
    for (const auto& rep : reports) {
      body << "  [" << (rep.pass ? "PASS" : "FAIL") << "] " << rep.label << ": "
           << fmt(rep.lower) << " <= " << fmt(rep.value) << " <= " << fmt(rep.upper) << "\n";
    }
    body << (all_pass ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  }
  const int io = emit(opts, body.str());
  if (io != kPass) return io;
  return all_pass ? kPass : kVerificationFailed;
}

// ---------------------------------------------------------------------
// limit-scan
// ---------------------------------------------------------------------

int run_limit_scan(const GlobalOptions& opts, double a, double z, int k_min, int k_max,
                   int fit_order) {
  std::vector<qpent_scan_record> records(static_cast<std::size_t>(k_max - k_min) + 1);
  std::size_t count = 0;
  qpent_status st = qpent_limit_scan(a, z, k_min, k_max, opts.tol_rel, 0.0, records.data(),
                                     records.size(), &count);
  if (st != QPENT_OK) return api_error("limit-scan", st);
  records.resize(count);

  double l_star = 0.0, fit_rms = 0.0;
  bool have_fit = false;
  std::size_t usable = 0;
  for (const auto& rec : records) {
    if (!rec.flagged) ++usable;
  }
  if (usable >= 4) {
    st = qpent_extrapolate(records.data(), records.size(), fit_order, &l_star, &fit_rms);
    if (st != QPENT_OK) return api_error("limit-scan: extrapolate", st);
    have_fit = true;
  }

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "k,q,h,lnSg,L,R,target_F,target_R,residual_L,residual_R\n";
    for (const auto& rec : records) {
      body << rec.k << "," << fmt(rec.q) << "," << fmt(rec.h) << "," << fmt(rec.ln_sum_g) << ","
           << fmt(rec.L) << "," << fmt(rec.R) << "," << fmt(rec.target_F) << ","
           << fmt(rec.target_R) << "," << fmt(rec.residual_L) << "," << fmt(rec.residual_R)
           << "\n";
    }
  } else if (opts.format == "json") {
    JsonWriter jw;
    jw.open_object();
    jw.field("command", std::string("limit-scan"));
    jw.field("version", std::string(qpent_version()));
    jw.field("a", a);
    jw.field("z", z);
    jw.field("k_min", k_min);
    jw.field("k_max", k_max);
    jw.field("fit_order", fit_order);
    jw.field("tol_rel", opts.tol_rel);
    jw.open_array("records");
    for (const auto& rec : records) {
      jw.item_object();
      jw.field("k", rec.k);
      jw.field("flagged", rec.flagged != 0);
      jw.field("q", rec.q);
      jw.field("h", rec.h);
      jw.field("lnSg", rec.ln_sum_g);
      jw.field("L", rec.L);
      jw.field("R", rec.R);
      jw.field("target_F", rec.target_F);
      jw.field("target_R", rec.target_R);
      jw.field("residual_L", rec.residual_L);
      jw.field("residual_R", rec.residual_R);
      jw.close_object();
    }
    jw.close_array();
    if (have_fit) {
      jw.field("l_star", l_star);
      jw.field("fit_rms", fit_rms);
    }
    jw.close_object();
    body << jw.str() << "\n";
  } else {
    body << "limit scan a=" << fmt(a) << " z=" << fmt(z) << ", q_k = 1 - 2^-k, k=" << k_min
         << ".." << k_max << "\n";
    body << "  k            L(q)       residual_L       residual_R\n";
    for (const auto& rec : records) {
      if (rec.flagged) {
        body << "  " << rec.k << "  flagged: q below the peak-condition threshold\n";
        continue;
      }
      char line[160];
      std::snprintf(line, sizeof(line), "  %2d  %14.10f  %15.6e  %15.6e\n", rec.k, rec.L,
                    rec.residual_L, rec.residual_R);
      body << line;
    }
    if (have_fit) {
      body << "extrapolated L* = " << fmt(l_star) << " (fit order " << fit_order
           << ", rms " << fmt(fit_rms) << ")\n";
      body << "target F(xi0)   = " << fmt(records.front().target_F) << "\n";
    }
  }
  return emit(opts, body.str());
}

// ---------------------------------------------------------------------
// rogers
// ---------------------------------------------------------------------

int run_rogers(const GlobalOptions& opts, double a, double z, double x) {
  double rogers = 0.0, reflect = 0.0, xi = 0.0;
  qpent_status st = qpent_rogers_residual(a, z, &rogers);
  if (st != QPENT_OK) return api_error("rogers", st);
  st = qpent_reflection_residual(x, &reflect);
  if (st != QPENT_OK) return api_error("rogers: reflection", st);
  qpent_xi0(a, z, &xi);

  const double rogers_tol = 1e-12 * (1.0 + 1.6449340668482264);
  const bool pass = std::abs(rogers) <= rogers_tol && std::abs(reflect) <= 1e-13;

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "a,z,xi0,rogers_residual,x,reflection_residual,pass\n";
    body << fmt(a) << "," << fmt(z) << "," << fmt(xi) << "," << fmt(rogers) << "," << fmt(x)
         << "," << fmt(reflect) << "," << (pass ? 1 : 0) << "\n";
  } else if (opts.format == "json") {
    JsonWriter jw;
    jw.open_object();
    jw.field("command", std::string("rogers"));
    jw.field("version", std::string(qpent_version()));
    jw.field("a", a);
    jw.field("z", z);
    jw.field("x", x);
    jw.field("xi0", xi);
    jw.field("rogers_residual", rogers);
    jw.field("reflection_residual", reflect);
    jw.field("pass", pass);
    jw.close_object();
    body << jw.str() << "\n";
  } else {
    body << "five-term dilogarithm identity at a=" << fmt(a) << " z=" << fmt(z) << "\n";
    body << "  xi0                 = " << fmt(xi) << "\n";
    body << "  rogers residual     = " << fmt(rogers) << "\n";
    body << "  reflection residual = " << fmt(reflect) << " (x=" << fmt(x) << ")\n";
    body << (pass ? "RESULT: PASS" : "RESULT: FAIL") << "\n";
  }
  const int io = emit(opts, body.str());
  if (io != kPass) return io;
  return pass ? kPass : kVerificationFailed;
}

// ---------------------------------------------------------------------
// all: the full verification chain at default desk scale
// ---------------------------------------------------------------------

struct SplitMix64 {
  unsigned long long state;
  explicit SplitMix64(unsigned long long seed) : state(seed) {}
  unsigned long long next() {
    state += 0x9E3779B97F4A7C15ull;
    unsigned long long v = state;
    v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
    v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
    return v ^ (v >> 31);
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1p-53; }
};

int run_all(const GlobalOptions& opts) {
  std::ostringstream body;
  bool all_ok = true;
  auto line = [&](const char* name, bool ok, const std::string& detail) {
    body << "[" << (ok ? "PASS" : "FAIL") << "] " << name;
    if (!detail.empty()) body << " (" << detail << ")";
    body << "\n";
    all_ok = all_ok && ok;
  };

  {  // 1: exact coefficient identities, 21 x 21 pairs
    qpent_coeff_report* rep = nullptr;
    bool ok = qpent_verify_coeff_identity_range(20, 20, &rep) == QPENT_OK &&
              qpent_coeff_report_all_pass(rep) != 0;
    std::string detail = rep ? "max degree " + fmt(qpent_coeff_report_max_degree(rep)) : "";
    qpent_coeff_report_destroy(rep);
    line("coefficient identities m,n <= 20", ok, detail);
  }

  {  // 2: pentagon identity, total degree 16
    qpent_pentagon_report* rep = nullptr;
    bool ok = qpent_verify_pentagon(16, &rep) == QPENT_OK &&
              qpent_pentagon_report_pass(rep) != 0;
    qpent_pentagon_report_destroy(rep);
    line("pentagon identity to total degree 16", ok, "");
  }

  const std::vector<double> q_grid{0.3, 0.5, 0.7, 0.9, 0.99};
  std::vector<double> az_grid;
  for (int i = 1; i <= 9; ++i) az_grid.push_back(i / 10.0);

  {  // 3: q-binomial two-side agreement over the grid
    bool ok = true;
    for (double q : q_grid) {
      for (double a : az_grid) {
        for (double z : az_grid) {
          ParamsHandle params;
          if (make_params(q, a, z, opts.tol_rel, params) != kPass) return kUsage;
          qpent_bounds_report r;
          if (qpent_verify_qbinomial(params.p, &r) != QPENT_OK || !r.pass) ok = false;
        }
      }
    }
    line("q-binomial log-space agreement on the grid", ok, "405 points");
  }

  {  // 4: sandwich bounds on the grid plus the peak sandwich for k=4..10
    bool ok = true;
    for (double q : q_grid) {
      for (double x : az_grid) {
        ParamsHandle params;
        if (make_params(q, 0.5, 0.5, opts.tol_rel, params) != kPass) return kUsage;
        qpent_bounds_report r;
        if (qpent_check_phi_sandwich(params.p, x, &r) != QPENT_OK || !r.pass) ok = false;
      }
    }
    for (int k = 4; k <= 10; ++k) {
      ParamsHandle params;
      const double q = 1.0 - std::ldexp(1.0, -k);
      if (make_params(q, 0.5, 0.5, opts.tol_rel, params) != kPass) return kUsage;
      qpent_bounds_report r;
      if (qpent_check_peak_sum_bounds(params.p, &r) != QPENT_OK || !r.pass) ok = false;
    }
    line("sandwich and peak-sum bounds", ok, "");
  }

  {  // 5: derivative criterion and peak drift
    bool ok = true;
    std::string detail;
    for (int k = 4; k <= 14; ++k) {
      ParamsHandle params;
      const double q = 1.0 - std::ldexp(1.0, -k);
      if (make_params(q, 0.5, 0.5, opts.tol_rel, params) != kPass) return kUsage;
      double x0;
      if (qpent_find_x0(params.p, &x0) != QPENT_OK) {
        ok = false;
        continue;
      }
      double deriv;
      qpent_log_derivative_g(params.p, x0, &deriv);
      if (std::abs(deriv) > 1e-8) ok = false;
      if (k == 14) {
        const double ratio = x0 * std::log(q) / std::log(2.0 / 3.0);
        if (std::abs(ratio - 1.0) > 0.05) ok = false;
        detail = "x0*lnq/ln(xi0) = " + fmt(ratio) + " at k=14";
      }
    }
    line("derivative criterion and peak location", ok, detail);
  }

  {  // 6: the q -> 1 limit scan and extrapolation
    std::vector<qpent_scan_record> recs(11);
    std::size_t count = 0;
    bool ok = qpent_limit_scan(0.5, 0.5, 4, 14, opts.tol_rel, 0.0, recs.data(), recs.size(),
                               &count) == QPENT_OK &&
              count == 11;
    std::string detail;
    if (ok) {
      int bad_steps = 0;
      for (std::size_t i = 1; i < count; ++i) {
        if (std::abs(recs[i].residual_L) >= std::abs(recs[i - 1].residual_L)) ++bad_steps;
      }
      if (bad_steps > 1) ok = false;
      for (const auto& rec : recs) {
        const double envelope =
            rec.h * (-std::log1p(-0.5) - std::log1p(-0.5) + rec.k * std::log(2.0) -
                     std::log1p(-0.25));
        if (!(std::abs(rec.residual_R) <= envelope)) ok = false;
      }
      double l_star, rms;
      if (qpent_extrapolate(recs.data(), count, 2, &l_star, &rms) != QPENT_OK) {
        ok = false;
      } else {
        const double target = recs.front().target_F;
        ok = ok && std::abs(l_star - target) <= 1e-4 * (1.0 + std::abs(target));
        detail = "L* = " + fmt(l_star) + ", F(xi0) = " + fmt(target);
      }
    }
    line("q -> 1 limit scan and extrapolation", ok, detail);
  }

  {  // 7: Rogers over 100 random pairs + reflection on a 99-point grid
    SplitMix64 rng(0x243F6A8885A308D3ull);
    double worst_rogers = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double a = rng.u01();
      const double z = rng.u01();
      if (!in_unit_interval(a) || !in_unit_interval(z)) continue;
      double r;
      if (qpent_rogers_residual(a, z, &r) != QPENT_OK) {
        worst_rogers = 1.0;
        break;
      }
      worst_rogers = std::max(worst_rogers, std::abs(r));
    }
    double worst_reflect = 0.0;
    for (int i = 1; i <= 99; ++i) {
      double r;
      qpent_reflection_residual(i / 100.0, &r);
      worst_reflect = std::max(worst_reflect, std::abs(r));
    }
    const bool ok = worst_rogers <= 1e-11 && worst_reflect <= 1e-13;
    line("five-term and reflection identities", ok,
         "max residuals " + fmt(worst_rogers) + ", " + fmt(worst_reflect));
  }

  {  // 8: exact pentagon coefficients against numeric term sums at q = 1/2
    double max_err = 0.0;
    int pass = 0;
    bool ok = qpent_pentagon_coeff_check(8, 1, 2, 1e-12, &max_err, &pass) == QPENT_OK &&
              pass != 0;
    line("exact vs numeric pentagon coefficients at q=1/2", ok, "max err " + fmt(max_err));
  }

  body << (all_ok ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << "\n";
  const int io = emit(opts, body.str());
  if (io != kPass) return io;
  return all_ok ? kPass : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpent: exact and numeric verification of the q-binomial / pentagon / "
               "five-term dilogarithm chain"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", opts.out_path, "Write the report to this path instead of stdout");
  app.add_option("--tol-rel", opts.tol_rel, "Relative tolerance for bound checks")
      ->capture_default_str();

  double q = 1.0 - std::ldexp(1.0, -6);
  double a = 0.5, z = 0.5, x = 0.5;
  unsigned max_m = 20, max_n = 20;
  int degree = 16;
  int k_min = 4, k_max = 14, fit_order = 2;

  auto* cmd_e7 = app.add_subcommand("verify-e7", "Exact coefficient identity sweep");
  cmd_e7->add_option("--max-m", max_m, "Largest m")->capture_default_str();
  cmd_e7->add_option("--max-n", max_n, "Largest n")->capture_default_str();

  auto* cmd_pent = app.add_subcommand("verify-pentagon", "Pentagon identity over the exact field");
  cmd_pent->add_option("--degree", degree, "Total-degree cutoff")->capture_default_str();

  auto* cmd_eval = app.add_subcommand("eval", "Evaluate the analytic objects at a point");
  cmd_eval->add_option("--q", q, "q in (0,1)")->capture_default_str();
  cmd_eval->add_option("--a", a, "a in (0,1)")->capture_default_str();
  cmd_eval->add_option("--z", z, "z in (0,1)")->capture_default_str();
  cmd_eval->add_option("--x", x, "evaluation point x >= 0")->capture_default_str();

  auto* cmd_bounds = app.add_subcommand("bounds", "Check the sandwich and peak-sum bounds");
  cmd_bounds->add_option("--q", q, "q in (0,1)")->capture_default_str();
  cmd_bounds->add_option("--a", a, "a in (0,1)")->capture_default_str();
  cmd_bounds->add_option("--z", z, "z in (0,1)")->capture_default_str();
  cmd_bounds->add_option("--x", x, "sandwich evaluation point in (0,1)")->capture_default_str();

  auto* cmd_scan = app.add_subcommand("limit-scan", "Scan q_k = 1 - 2^-k and extrapolate");
  cmd_scan->add_option("--a", a, "a in (0,1)")->capture_default_str();
  cmd_scan->add_option("--z", z, "z in (0,1)")->capture_default_str();
  cmd_scan->add_option("--k-min", k_min, "Smallest k")->capture_default_str();
  cmd_scan->add_option("--k-max", k_max, "Largest k")->capture_default_str();
  cmd_scan->add_option("--fit-order", fit_order, "Polynomial order of the h-fit")
      ->capture_default_str();

  auto* cmd_rogers = app.add_subcommand("rogers", "Five-term and reflection identity residuals");
  cmd_rogers->add_option("--a", a, "a in (0,1)")->capture_default_str();
  cmd_rogers->add_option("--z", z, "z in (0,1)")->capture_default_str();
  cmd_rogers->add_option("--x", x, "reflection evaluation point in [0,1]")->capture_default_str();

  auto* cmd_all = app.add_subcommand("all", "Run the full verification chain with defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    app.exit(e);
    return kUsage;
  }

  // Validate ranges up front: nothing invalid reaches the compute layer.
  auto usage = [](const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kUsage;
  };

  if (cmd_e7->parsed()) {
    if (max_m > 200 || max_n > 200) return usage("--max-m/--max-n too large (limit 200)");
    return run_verify_e7(opts, max_m, max_n);
  }
  if (cmd_pent->parsed()) {
    if (degree < 0 || degree > 64) return usage("--degree must be in 0..64");
    return run_verify_pentagon(opts, static_cast<unsigned>(degree));
  }
  if (cmd_eval->parsed()) {
    if (!in_unit_interval(q) || !in_unit_interval(a) || !in_unit_interval(z)) {
      return usage("--q, --a, --z must lie strictly inside (0,1)");
    }
    if (!(x >= 0.0)) return usage("--x must be >= 0");
    return run_eval(opts, q, a, z, x);
  }
  if (cmd_bounds->parsed()) {
    if (!in_unit_interval(q) || !in_unit_interval(a) || !in_unit_interval(z)) {
      return usage("--q, --a, --z must lie strictly inside (0,1)");
    }
    if (!in_unit_interval(x)) return usage("--x must lie strictly inside (0,1)");
    return run_bounds(opts, q, a, z, x);
  }
  if (cmd_scan->parsed()) {
    if (!in_unit_interval(a) || !in_unit_interval(z)) {
      return usage("--a, --z must lie strictly inside (0,1)");
    }
    if (k_min < 1 || k_min > k_max || k_max > 40) return usage("need 1 <= k-min <= k-max <= 40");
    if (fit_order < 1 || fit_order > 8) return usage("--fit-order must be in 1..8");
    return run_limit_scan(opts, a, z, k_min, k_max, fit_order);
  }
  if (cmd_rogers->parsed()) {
    if (!in_unit_interval(a) || !in_unit_interval(z)) {
      return usage("--a, --z must lie strictly inside (0,1)");
    }
    if (!(x >= 0.0 && x <= 1.0)) return usage("--x must lie in [0,1]");
    return run_rogers(opts, a, z, x);
  }
  if (cmd_all->parsed()) {
    return run_all(opts);
  }
  return usage("no subcommand given");
}
