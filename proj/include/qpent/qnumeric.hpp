#ifndef QPENT_QNUMERIC_HPP
#define QPENT_QNUMERIC_HPP

// Double-precision, log-space evaluation of the analytic side: the Euler
// dilogarithm, ln phi(x) for the q-exponential phi(x) = 1/prod(1 - q^n x),
// sum-vs-integral sandwich bounds for monotone and single-peak functions,
// and the summand g(x) = phi(a q^x)/phi(q^{1+x}) z^x whose sum S(g) the
// q-binomial formula evaluates in closed form.
//
// phi itself overflows doubles long before q reaches the interesting range,
// so no routine here ever materializes it; everything is ln phi end to end.

#include <functional>
#include <optional>
#include <string>

namespace qpent::qnum {

/// Numeric parameter triple (q, a, z) in (0,1)^3 plus tolerances.
/// tol_rel governs pass/fail slack in reports; tol_term is the certified
/// series tail cutoff.
struct QParams {
  double q, a, z;
  double tol_rel = 1e-9;
  double tol_term = 1e-18;

  QParams(double q, double a, double z);
  QParams(double q, double a, double z, double tol_rel, double tol_term);

  /// True iff q > 1 - z(1-a): the regime where g has a unique interior
  /// peak (increasing then decreasing).
  bool unimodal_ok() const { return q > 1.0 - z * (1.0 - a); }
};

/// A verified two-sided bound: lower <= value <= upper, with pass set when
/// the chain holds within tol_rel * (1 + |value|) slack.
struct BoundsReport {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  std::string label;
  bool pass = false;
};

/// Euler dilogarithm sum_{n>=1} x^n / n^2 on [0,1]; absolute error within
/// 1e-15 * (1 + |value|). Arguments above 1/2 go through the reflection
/// Li2(x) = Li2(1) - Li2(1-x) - ln x ln(1-x).
double li2(double x);

/// ln phi(x) = -sum_{n>=0} ln(1 - q^n x) for x in [0,1); truncated once a
/// term drops below tol_term (tail <= tol_term * q/(1-q)).
double ln_phi(double x, const QParams& p);

/// Log-space check of 1 <= phi(x) e^{Li2(x)/ln q} <= 1/(1-x):
/// 0 <= ln phi(x) + Li2(x)/ln q <= -ln(1-x).
BoundsReport check_phi_sandwich(double x, const QParams& p);

enum class Monotone { decreasing, increasing };

/// Sum-vs-integral bounds for a monotone f on [k, l+1] (l absent = +inf,
/// decreasing only). Reports lower-sum <= integral <= upper-sum with the
/// endpoint shifts appropriate to the direction. Throws numeric_error on
/// non-finite f values.
BoundsReport check_sum_integral(const std::function<double(double)>& f, long k,
                                std::optional<long> l, Monotone direction,
                                double tol_rel = 1e-9, double tol_term = 1e-18);

/// ln g(x) = ln phi(a q^x) - ln phi(q^{1+x}) + x ln z, x >= 0.
double ln_g(double x, const QParams& p);

/// S(h_x) = sum_{t>=0} q^{x+t} / ((1-q^{1+x+t})(1-a q^{x+t})).
double h_sum(double x, const QParams& p);

/// I(h_x) in closed form: -ln((1-a q^x)/(1-q^{1+x})) / (ln q (q-a)),
/// evaluated through log1p so q -> a is stable; q == a takes the limit
/// -q^x / ((1-q^{1+x}) ln q).
double h_integral(double x, const QParams& p);

/// g'(x)/g(x) = ln z - ln(q)(q-a) S(h_x).
double log_derivative_g(double x, const QParams& p);

/// Unique root of g'(x) = 0, bracketed by the sign change of the log
/// derivative and bisected to width 1e-10 (1 + x0). Requires unimodal_ok.
double find_x0(const QParams& p);

/// Peak integer: argmax of ln g over {floor(x0), floor(x0)+1}.
long find_n0(const QParams& p);

/// ln S(g) = ln sum_{n>=0} g(n), peak-anchored with compensated summation;
/// consecutive terms use ln phi(a q^{n+1}) = ln phi(a q^n) + ln(1 - a q^n),
/// so a scan costs one full product evaluation plus O(1) per term.
double ln_sum_g(const QParams& p);

/// ln I(g) = ln int_0^inf g(x) dx via the substitution xi = q^x, adaptive
/// quadrature concentrated around the peak. Requires unimodal_ok.
double ln_integral_g(const QParams& p);

/// Peak sandwich g(n0) <= S(g) <= I(g) + g(n0), checked in log space.
/// Requires unimodal_ok.
BoundsReport check_peak_sum_bounds(const QParams& p);

/// Two-sided check of the q-binomial formula in log space:
/// ln S(g) against ln phi(a) + ln phi(z) - ln phi(q) - ln phi(az).
BoundsReport verify_qbinomial(const QParams& p);

/// Floating-point values of the coefficient-identity sides at a numeric q,
/// term by term (for cross-checks against the exact layer).
double coeff_identity_lhs_value(unsigned m, unsigned n, double q);
double coeff_identity_rhs_value(unsigned m, unsigned n, double q);

}  // namespace qpent::qnum

#endif
