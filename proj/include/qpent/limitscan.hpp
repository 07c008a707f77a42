#ifndef QPENT_LIMITSCAN_HPP
#define QPENT_LIMITSCAN_HPP

// The q -> 1^- experiment: scan q_k = 1 - 2^-k, form L(q) = ln q * ln S(g),
// compare with the stationary value F(xi0) and with the five-term
// dilogarithm combination, and extrapolate the h = -ln q -> 0 limit.
// Plus the standalone Rogers and reflection identity residuals, which are
// pure Li2 computations independent of q.

#include <cstddef>
#include <span>
#include <vector>

namespace qpent::limits {

/// One row of the scan. When the peak condition q > 1 - z(1-a) fails the
/// record is flagged and its computed fields are NaN.
struct LimitScanRecord {
  int k = 0;
  bool flagged = false;
  double q = 0.0;
  double h = 0.0;        // -ln q
  double ln_sum_g = 0.0;
  double L = 0.0;        // ln q * ln S(g)
  double R = 0.0;        // ln q * (ln phi(a) + ln phi(z) - ln phi(q) - ln phi(az))
  double target_F = 0.0; // F(xi0)
  double target_R = 0.0; // Li2(1) + Li2(az) - Li2(a) - Li2(z)
  double residual_L = 0.0;
  double residual_R = 0.0;
};

/// F(xi) = Li2(xi) - Li2(a xi) + ln(xi) ln(z) for xi in (0,1).
double F_eval(double xi, double a, double z);

/// Stationary point of F: xi0 = (1-z)/(1-az).
double xi0(double a, double z);

/// Rogers five-term residual
///   Li2(a) + Li2(z) - Li2(az) - Li2((a-az)/(1-az)) - Li2((z-az)/(1-az))
///   - ln((1-z)/(1-az)) ln((1-a)/(1-az)).
double rogers_residual(double a, double z);

/// Reflection residual Li2(x) + Li2(1-x) - Li2(1) + ln(x) ln(1-x) on (0,1);
/// x = 0 and x = 1 return the limit value 0 (the log singularity is killed
/// by the vanishing cofactor).
double reflection_residual(double x);

/// Scan the schedule q_k = 1 - 2^-k for k = k_min..k_max. Records whose q
/// violates the peak condition are flagged and skipped, not errored.
std::vector<LimitScanRecord> limit_scan(double a, double z, int k_min, int k_max,
                                        double tol_rel = 1e-9, double tol_term = 1e-18);

struct ExtrapolationResult {
  double l_star = 0.0;   // fitted limit L(h -> 0)
  double fit_rms = 0.0;  // rms residual of the fit over the points used
  int order = 0;
  std::size_t points_used = 0;
};

/// Least-squares fit of L(h) = L* + c1 h + ... + c_order h^order over the
/// smallest-h half of the (non-flagged) records. Requires at least 4
/// records; throws numeric_error on a rank-deficient system.
ExtrapolationResult extrapolate(std::span<const LimitScanRecord> records, int order = 2);

}  // namespace qpent::limits

#endif
