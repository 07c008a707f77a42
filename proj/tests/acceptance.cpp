// Acceptance suite: the full verification chain at desk scale, one
// pass/fail line per criterion. Exit code 0 only if every criterion holds
// at its stated tolerance.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qpent/exactq.hpp"
#include "qpent/limitscan.hpp"
#include "qpent/qnumeric.hpp"
#include "qpent/skewalg.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int index, const char* name, bool ok, double seconds, const std::string& detail) {
  std::printf("[%s] %d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", index, name, seconds,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1p-53; }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// F(2/3) at a = z = 1/2, frozen from a 50-digit computation:
// 0.74810565300093403158628636...
constexpr double kF23 = 0.7481056530009340;

void criterion_1_exact_identities() {
  const auto t0 = Clock::now();
  const auto rep = qpent::exactq::verify_coeff_identity_range(20, 20);
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  const bool ok = rep.all_pass() && rep.pairs_checked == 441;
  report(1, "exact coefficient identities, all m,n <= 20", ok, dt,
         "max polynomial degree " + std::to_string(rep.max_degree));
}

void criterion_2_pentagon() {
  const auto t0 = Clock::now();
  const auto rep = qpent::skew::verify_pentagon(16);
  bool ok = rep.pass;

  // Per-coefficient coincidence with the exact identity layer.
  const auto lhs = qpent::skew::pentagon_lhs(16);
  const auto rhs = qpent::skew::pentagon_rhs(16);
  for (unsigned n = 0; n <= 16 && ok; ++n) {
    for (unsigned m = 0; n + m <= 16 && ok; ++m) {
      ok = ok && lhs.coeff(n, m) == qpent::exactq::coeff_identity_lhs(m, n);
      ok = ok && rhs.coeff(n, m) == qpent::exactq::coeff_identity_rhs(m, n);
    }
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(2, "pentagon identity to total degree 16, coefficients cross-checked", ok, dt, "");
}

void criterion_3_qbinomial_grid() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0;
  for (double q : {0.3, 0.5, 0.7, 0.9, 0.99}) {
    for (int ia = 1; ia <= 9; ++ia) {
      for (int iz = 1; iz <= 9; ++iz) {
        const qpent::qnum::QParams p(q, ia / 10.0, iz / 10.0);
        const auto r = qpent::qnum::verify_qbinomial(p);
        ok = ok && r.pass;
        const double mid = 0.5 * (r.lower + r.upper);
        worst = std::max(worst, std::abs(r.value - mid) / (1.0 + std::abs(mid)));
      }
    }
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(3, "q-binomial two-side agreement on the 405-point grid (rel 1e-9)", ok, dt,
         "worst relative discrepancy " + fmt(worst));
}

void criterion_4_sandwiches() {
  const auto t0 = Clock::now();
  bool ok = true;
  // The phi sandwich, with strict orientation, on the numeric grid.
  for (double q : {0.3, 0.5, 0.7, 0.9, 0.99}) {
    const qpent::qnum::QParams p(q, 0.5, 0.5);
    for (int ix = 1; ix <= 9; ++ix) {
      const auto r = qpent::qnum::check_phi_sandwich(ix / 10.0, p);
      ok = ok && r.pass && r.value >= 0.0 && r.value <= r.upper;
    }
  }
  // The peak sandwich g(n0) <= S(g) <= I(g) + g(n0) along the schedule.
  for (int k = 4; k <= 10; ++k) {
    const qpent::qnum::QParams p(1.0 - std::ldexp(1.0, -k), 0.5, 0.5);
    const auto r = qpent::qnum::check_peak_sum_bounds(p);
    ok = ok && r.pass && r.lower <= r.value && r.value <= r.upper;
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(4, "sandwich bounds with orientation (grid + peak sum, k=4..10)", ok, dt, "");
}

void criterion_5_derivative() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;

  // Finite-difference agreement on a sampled grid.
  for (double q : {0.9, 0.99, 1.0 - std::ldexp(1.0, -10)}) {
    const qpent::qnum::QParams p(q, 0.5, 0.5);
    for (double x : {0.0, 1.0, 5.0, 25.0}) {
      const double step = (1.0 + std::abs(x)) * 1e-5;
      const double lo = std::max(0.0, x - step);
      const double fd = (qpent::qnum::ln_g(x + step, p) - qpent::qnum::ln_g(lo, p)) /
                        (x + step - lo);
      if (std::abs(qpent::qnum::log_derivative_g(x, p) - fd) > 1e-6) ok = false;
    }
  }

  // The bracketing sign change exists for every scheduled q, and the peak
  // drifts to ln(xi0)/ln q.
  for (int k = 4; k <= 14; ++k) {
    const qpent::qnum::QParams p(1.0 - std::ldexp(1.0, -k), 0.5, 0.5);
    if (!p.unimodal_ok()) {
      ok = false;
      continue;
    }
    const double x0 = qpent::qnum::find_x0(p);
    if (std::abs(qpent::qnum::log_derivative_g(x0, p)) > 1e-8) ok = false;
    if (k == 14) {
      const double ratio = x0 * std::log(p.q) / std::log(2.0 / 3.0);
      if (!(std::abs(ratio - 1.0) <= 0.05)) ok = false;
      detail = "x0*lnq/ln(xi0) = " + std::to_string(ratio) + " at k=14";
    }
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(5, "derivative criterion: FD match 1e-6, bracketing, peak drift", ok, dt, detail);
}

void criterion_6_limit_scan() {
  const auto t0 = Clock::now();
  const double a = 0.5, z = 0.5;
  const auto recs = qpent::limits::limit_scan(a, z, 4, 14);
  bool ok = recs.size() == 11;
  std::string detail;

  int non_monotone = 0;
  for (std::size_t i = 0; i < recs.size() && ok; ++i) {
    const auto& r = recs[i];
    ok = ok && !r.flagged;
    if (!ok) break;
    // the two limit targets agree to round-off (this IS the Rogers identity)
    ok = ok && std::abs(r.target_F - r.target_R) <= 1e-12;
    // rigorous envelope: |R - target_R| <= h * sum of the four -ln(1-.)
    const double envelope =
        r.h * (-std::log1p(-a) - std::log1p(-z) + r.k * std::log(2.0) - std::log1p(-a * z));
    ok = ok && std::abs(r.residual_R) <= envelope;
    if (i > 0) {
      if (std::abs(r.residual_L) >= std::abs(recs[i - 1].residual_L)) ++non_monotone;
      if (i >= 2) {
        const double ratio = std::abs(r.residual_L / recs[i - 1].residual_L);
        ok = ok && ratio <= 0.9;
      }
    }
  }
  ok = ok && non_monotone <= 1;

  if (ok) {
    const auto fit = qpent::limits::extrapolate(recs, 2);
    const double err = std::abs(fit.l_star - kF23);
    ok = err <= 1e-4 * (1.0 + kF23);
    detail = "|L* - F(2/3)| = " + fmt(err) + " vs " + fmt(1e-4 * (1.0 + kF23));
  }
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(6, "q->1 limit: shrinking residuals, envelope, extrapolation", ok, dt, detail);
}

void criterion_7_rogers() {
  const auto t0 = Clock::now();
  SplitMix64 rng(0x243F6A8885A308D3ull);
  double worst_rogers = 0.0;
  int sampled = 0;
  while (sampled < 100) {
    const double a = rng.u01();
    const double z = rng.u01();
    if (a <= 0.0 || z <= 0.0) continue;
    ++sampled;
    worst_rogers = std::max(worst_rogers, std::abs(qpent::limits::rogers_residual(a, z)));
  }
  double worst_reflect = 0.0;
  for (int i = 1; i <= 99; ++i) {
    worst_reflect =
        std::max(worst_reflect, std::abs(qpent::limits::reflection_residual(i / 100.0)));
  }
  const bool ok = worst_rogers <= 1e-11 && worst_reflect <= 1e-13;
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(7, "Rogers residual (100 random pairs) and reflection grid", ok, dt,
         "max " + fmt(worst_rogers) + " / " + fmt(worst_reflect));
}

void criterion_8_cross_layer() {
  const auto t0 = Clock::now();
  const qpent::exactq::BigRat half(1, 2);
  const auto lhs = qpent::skew::pentagon_lhs(8);
  const auto rhs = qpent::skew::pentagon_rhs(8);
  double worst = 0.0;
  for (unsigned n = 0; n <= 8; ++n) {
    for (unsigned m = 0; n + m <= 8; ++m) {
      const double exact_l = static_cast<double>(lhs.coeff(n, m).eval(half));
      const double exact_r = static_cast<double>(rhs.coeff(n, m).eval(half));
      const double num_l = qpent::qnum::coeff_identity_lhs_value(m, n, 0.5);
      const double num_r = qpent::qnum::coeff_identity_rhs_value(m, n, 0.5);
      worst = std::max(worst, std::abs(exact_l - num_l));
      worst = std::max(worst, std::abs(exact_r - num_r));
    }
  }
  const bool ok = worst <= 1e-12;
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  report(8, "exact pentagon coefficients vs numeric term sums at q=1/2", ok, dt,
         "max abs diff " + fmt(worst));
}

}  // namespace

int main() {
  criterion_1_exact_identities();
  criterion_2_pentagon();
  criterion_3_qbinomial_grid();
  criterion_4_sandwiches();
  criterion_5_derivative();
  criterion_6_limit_scan();
  criterion_7_rogers();
  criterion_8_cross_layer();

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all 8 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion/criteria FAILED\n", g_failures);
  return 1;
}
