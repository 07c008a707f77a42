#include "qpent/qnumeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qpent/errors.hpp"

namespace qpent::qnum {

namespace {

constexpr double kPi2Over6 = 1.6449340668482264364724152;
constexpr long kMaxTerms = 200'000'000;  // hard stop for runaway series

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// q^n tracked multiplicatively, re-anchored on exp(n ln q) every block so
// rounding drift stays at the block scale.
struct PowerTracker {
  explicit PowerTracker(double q) : q_(q), ln_q_(std::log(q)) {}
  double value() const { return qn_; }
  void step() {
    ++n_;
    qn_ = (n_ % 4096 == 0) ? std::exp(static_cast<double>(n_) * ln_q_) : qn_ * q_;
  }
  long index() const { return n_; }

 private:
  double q_, ln_q_;
  double qn_ = 1.0;
  long n_ = 0;
};

std::string format_label(const char* fmt, double v1, double v2) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), fmt, v1, v2);
  return buf;
}

double li2_series(double x) {
  // x in [0, 1/2]; terms x^n/n^2, summed smallest first. The geometric
  // tail after n is below x^{n+1} / ((n+1)^2 (1-x)); n = 64 is plenty.
  std::array<double, 64> terms{};
  int count = 0;
  double xn = 1.0;
  for (int n = 1; n <= 64; ++n) {
    xn *= x;
    const double t = xn / (static_cast<double>(n) * n);
    terms[static_cast<std::size_t>(count++)] = t;
    if (t < 1e-18) break;
  }
  double s = 0.0;
  for (int i = count - 1; i >= 0; --i) s += terms[static_cast<std::size_t>(i)];
  return s;
}

void require_params_range(double q, double a, double z) {
  auto in01 = [](double v) { return v > 0.0 && v < 1.0; };
  if (!in01(q) || !in01(a) || !in01(z)) {
    throw std::domain_error("QParams: q, a, z must lie strictly inside (0,1)");
  }
}

double logaddexp(double x, double y) {
  if (x < y) std::swap(x, y);
  return x + std::log1p(std::exp(y - x));
}

}  // namespace

QParams::QParams(double q_, double a_, double z_) : q(q_), a(a_), z(z_) {
  require_params_range(q, a, z);
}

QParams::QParams(double q_, double a_, double z_, double tol_rel_, double tol_term_)
    : q(q_), a(a_), z(z_), tol_rel(tol_rel_), tol_term(tol_term_) {
  require_params_range(q, a, z);
  if (!(tol_rel > 0.0) || !(tol_term > 0.0)) {
    throw std::domain_error("QParams: tolerances must be positive");
  }
}

double li2(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("li2: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return kPi2Over6;
  if (x > 0.5) {
    return kPi2Over6 - li2_series(1.0 - x) - std::log(x) * std::log1p(-x);
  }
  return li2_series(x);
}

double ln_phi(double x, const QParams& p) {
  if (!(x >= 0.0) || x >= 1.0) throw std::domain_error("ln_phi: x outside [0,1)");
  if (x == 0.0) return 0.0;
  KahanSum s;
  PowerTracker qn(p.q);
  while (true) {
    const double term = -std::log1p(-qn.value() * x);
    s.add(term);
    if (term < p.tol_term) break;  // tail <= tol_term * q/(1-q)
    qn.step();
    if (qn.index() > kMaxTerms) throw numeric_error("ln_phi: series did not converge");
  }
  return s.sum;
}

BoundsReport check_phi_sandwich(double x, const QParams& p) {
  if (!(x > 0.0) || x >= 1.0) throw std::domain_error("check_phi_sandwich: x outside (0,1)");
  BoundsReport r;
  r.lower = 0.0;
  r.value = ln_phi(x, p) + li2(x) / std::log(p.q);
  r.upper = -std::log1p(-x);
  r.label = format_label("phi-sandwich q=%.17g x=%.17g", p.q, x);
  const double slack = p.tol_rel * (1.0 + std::abs(r.value));
  r.pass = r.value >= r.lower - slack && r.value <= r.upper + slack;
  return r;
}

BoundsReport check_sum_integral(const std::function<double(double)>& f, long k,
                                std::optional<long> l, Monotone direction,
                                double tol_rel, double tol_term) {
  if (l && *l < k) throw std::invalid_argument("check_sum_integral: l < k");
  if (!l && direction == Monotone::increasing) {
    throw std::invalid_argument("check_sum_integral: increasing f needs a finite l");
  }
  auto eval = [&](double t) {
    const double v = f(t);
    if (!std::isfinite(v)) throw numeric_error("check_sum_integral: non-finite f value");
    return v;
  };

  // The two Riemann-style sums that bracket the integral over [k, l+1]:
  // decreasing: sum_{k+1}^{l+1} f <= int <= sum_{k}^{l} f
  // increasing: sum_{k}^{l} f <= int <= sum_{k+1}^{l+1} f
  KahanSum head;  // sum_{n=k}^{l} f(n)
  double f_at_k = eval(static_cast<double>(k));
  double f_at_l1 = 0.0;
  if (l) {
    for (long n = k; n <= *l; ++n) head.add(eval(static_cast<double>(n)));
    f_at_l1 = eval(static_cast<double>(*l + 1));
  } else {
    long n = k;
    while (true) {
      const double t = eval(static_cast<double>(n));
      head.add(t);
      if (t < tol_term) break;
      if (++n > kMaxTerms) throw numeric_error("check_sum_integral: sum did not converge");
    }
  }
  const double sum_low_shift = head.sum - f_at_k + f_at_l1;  // sum_{k+1}^{l+1}

  double integral, err;
  using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  if (l) {
    integral = quad::integrate(eval, static_cast<double>(k), static_cast<double>(*l + 1), 12,
                               1e-12, &err);
  } else {
    integral = quad::integrate(eval, static_cast<double>(k),
                               std::numeric_limits<double>::infinity(), 12, 1e-12, &err);
  }
  if (!std::isfinite(integral)) throw numeric_error("check_sum_integral: integral not finite");

  BoundsReport r;
  r.value = integral;
  if (direction == Monotone::decreasing) {
    r.lower = sum_low_shift;
    r.upper = head.sum;
  } else {
    r.lower = head.sum;
    r.upper = sum_low_shift;
  }
  r.label = format_label("sum-integral k=%.17g l=%.17g", static_cast<double>(k),
                         l ? static_cast<double>(*l) : std::numeric_limits<double>::infinity());
  const double slack = tol_rel * (1.0 + std::abs(r.value));
  r.pass = r.value >= r.lower - slack && r.value <= r.upper + slack;
  return r;
}

double ln_g(double x, const QParams& p) {
  if (!(x >= 0.0)) throw std::domain_error("ln_g: x must be >= 0");
  const double lnq = std::log(p.q);
  const double qx = std::exp(x * lnq);
  return ln_phi(p.a * qx, p) - ln_phi(p.q * qx, p) + x * std::log(p.z);
}

double h_sum(double x, const QParams& p) {
  if (!(x >= 0.0)) throw std::domain_error("h_sum: x must be >= 0");
  const double lnq = std::log(p.q);
  KahanSum s;
  // X = q^{x+t}; terms decay by a factor q, so the tail after a term below
  // tol_term is at most tol_term * q/(1-q).
  double X = std::exp(x * lnq);
  long t = 0;
  while (true) {
    const double term = X / ((1.0 - p.q * X) * (1.0 - p.a * X));
    s.add(term);
    if (term < p.tol_term) break;
    ++t;
    X = (t % 4096 == 0) ? std::exp((x + static_cast<double>(t)) * lnq) : X * p.q;
    if (t > kMaxTerms) throw numeric_error("h_sum: series did not converge");
  }
  return s.sum;
}

double h_integral(double x, const QParams& p) {
  if (!(x >= 0.0)) throw std::domain_error("h_integral: x must be >= 0");
  const double lnq = std::log(p.q);
  const double X = std::exp(x * lnq);
  const double y = X / (1.0 - p.q * X);
  if (p.q == p.a) return -y / lnq;  // removable q = a limit
  return -std::log1p((p.q - p.a) * y) / (lnq * (p.q - p.a));
}

double log_derivative_g(double x, const QParams& p) {
  return std::log(p.z) - std::log(p.q) * (p.q - p.a) * h_sum(x, p);
}

double find_x0(const QParams& p) {
  if (!p.unimodal_ok()) {
    throw std::domain_error("find_x0: requires q > 1 - z(1-a)");
  }
  if (!(log_derivative_g(0.0, p) > 0.0)) {
    throw numeric_error("find_x0: log derivative not positive at 0");
  }
  double lo = 0.0, hi = 1.0;
  while (log_derivative_g(hi, p) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw numeric_error("find_x0: no sign change found");
  }
  while (hi - lo > 1e-10 * (1.0 + 0.5 * (lo + hi))) {
    const double mid = 0.5 * (lo + hi);
    (log_derivative_g(mid, p) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

long find_n0(const QParams& p) {
  const double x0 = find_x0(p);
  const long n0 = static_cast<long>(std::floor(x0));
  return ln_g(static_cast<double>(n0), p) >= ln_g(static_cast<double>(n0 + 1), p) ? n0 : n0 + 1;
}

double ln_sum_g(const QParams& p) {
  // Terms via the pochhammer ratio recurrence:
  //   ln g(n+1) = ln g(n) + ln z + ln(1 - a q^n) - ln(1 - q^{n+1}).
  // Accumulated online as sum exp(ln g(n) - M) with a running max M.
  const double lnz = std::log(p.z);
  double lng = ln_phi(p.a, p) - ln_phi(p.q, p);  // ln g(0)
  double peak = lng;
  KahanSum scaled;  // sum of exp(ln g - peak); at least the peak term = 1
  scaled.add(1.0);
  PowerTracker qn(p.q);
  while (true) {
    const double ratio = p.z * (1.0 - p.a * qn.value()) / (1.0 - p.q * qn.value());
    lng += lnz + std::log1p(-p.a * qn.value()) - std::log1p(-p.q * qn.value());
    qn.step();
    if (lng > peak) {
      const double rescale = std::exp(peak - lng);
      scaled.sum *= rescale;
      scaled.comp *= rescale;
      scaled.add(1.0);
      peak = lng;
    } else {
      const double rel = std::exp(lng - peak);
      scaled.add(rel);
      // Past the peak the term ratio approaches z < 1; once it is safely
      // below 1 a geometric tail bound certifies the cutoff.
      if (rel < p.tol_term && ratio < 0.999) break;
    }
    if (qn.index() > kMaxTerms) throw numeric_error("ln_sum_g: sum did not converge");
  }
  return peak + std::log(scaled.sum);
}

double ln_integral_g(const QParams& p) {
  if (!p.unimodal_ok()) {
    throw std::domain_error("ln_integral_g: requires q > 1 - z(1-a)");
  }
  const double lnq = std::log(p.q);
  const double h = -lnq;
  const double x0 = find_x0(p);
  const double xi0 = std::exp(x0 * lnq);

  // I(g) = (1/h) int_0^1 g(ln xi / ln q) / xi dxi, anchored at the peak.
  auto log_integrand = [&](double xi) { return ln_g(std::log(xi) / lnq, p) - std::log(xi); };
  const double anchor = log_integrand(xi0);
  auto f = [&](double xi) {
    if (xi <= 0.0 || xi >= 1.0) return 0.0;
    return std::exp(log_integrand(xi) - anchor);
  };

  // The peak has width ~ sqrt(h / F''(xi0)); seed breakpoints around it so
  // the adaptive rule cannot miss a narrow spike.
  const double curvature = (1.0 / (1.0 - xi0) - p.a / (1.0 - p.a * xi0)) / xi0;
  const double sigma = std::sqrt(h / curvature);
  std::vector<double> cuts{0.0, 1.0};
  for (double w : {32.0, 16.0, 8.0, 4.0, 2.0, 1.0}) {
    const double left = xi0 - w * sigma;
    const double right = xi0 + w * sigma;
    if (left > 0.0) cuts.push_back(left);
    if (right < 1.0) cuts.push_back(right);
  }
  cuts.push_back(xi0);
  std::sort(cuts.begin(), cuts.end());

  using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  KahanSum total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err;
    total.add(quad::integrate(f, cuts[i], cuts[i + 1], 12, 1e-11, &err));
  }
  if (!(total.sum > 0.0) || !std::isfinite(total.sum)) {
    throw numeric_error("ln_integral_g: quadrature failed");
  }
  return anchor + std::log(total.sum) - std::log(h);
}

BoundsReport check_peak_sum_bounds(const QParams& p) {
  BoundsReport r;
  const double ln_peak_term = ln_g(static_cast<double>(find_n0(p)), p);
  r.lower = ln_peak_term;
  r.value = ln_sum_g(p);
  r.upper = logaddexp(ln_integral_g(p), ln_peak_term);
  r.label = format_label("peak-sum-bounds q=%.17g a=%.17g", p.q, p.a);
  const double slack = p.tol_rel * (1.0 + std::abs(r.value));
  r.pass = r.value >= r.lower - slack && r.value <= r.upper + slack;
  return r;
}

BoundsReport verify_qbinomial(const QParams& p) {
  BoundsReport r;
  const double closed_form =
      ln_phi(p.a, p) + ln_phi(p.z, p) - ln_phi(p.q, p) - ln_phi(p.a * p.z, p);
  const double slack = p.tol_rel * (1.0 + std::abs(closed_form));
  r.value = ln_sum_g(p);
  r.lower = closed_form - slack;
  r.upper = closed_form + slack;
  r.label = format_label("qbinomial q=%.17g a*z-side=%.17g", p.q, closed_form);
  r.pass = r.value >= r.lower && r.value <= r.upper;
  return r;
}

namespace {

// (q;q)_k in plain doubles; fine for the desk-scale m, n used in
// cross-layer checks.
double poch_value(double q, unsigned k) {
  double prod = 1.0;
  double qi = 1.0;
  for (unsigned i = 1; i <= k; ++i) {
    qi *= q;
    prod *= (1.0 - qi);
  }
  return prod;
}

}  // namespace

double coeff_identity_lhs_value(unsigned m, unsigned n, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("coeff_identity_lhs_value: q outside (0,1)");
  return std::pow(q, static_cast<double>(m) * n) / (poch_value(q, m) * poch_value(q, n));
}

double coeff_identity_rhs_value(unsigned m, unsigned n, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("coeff_identity_rhs_value: q outside (0,1)");
  double sum = 0.0;
  const unsigned kmax = std::min(m, n);
  for (unsigned k = 0; k <= kmax; ++k) {
    const double sign = (k % 2) ? -1.0 : 1.0;
    const double term = sign * std::pow(q, 0.5 * k * (k - 1.0)) /
                        (poch_value(q, m - k) * poch_value(q, n - k) * poch_value(q, k));
    sum += term;
  }
  return sum;
}

}  // namespace qpent::qnum
