#include "qpent/limitscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qpent/errors.hpp"
#include "qpent/qnumeric.hpp"

namespace qpent::limits {

using qnum::li2;
using qnum::ln_phi;
using qnum::QParams;

namespace {
constexpr double kLi2One = 1.6449340668482264364724152;  // pi^2/6

void require_unit_interval(double a, double z, const char* who) {
  if (!(a > 0.0 && a < 1.0 && z > 0.0 && z < 1.0)) {
    throw std::domain_error(std::string(who) + ": a, z must lie strictly inside (0,1)");
  }
}
}  // namespace

double F_eval(double xi, double a, double z) {
  if (!(xi > 0.0 && xi < 1.0)) throw std::domain_error("F_eval: xi outside (0,1)");
  require_unit_interval(a, z, "F_eval");
  return li2(xi) - li2(a * xi) + std::log(xi) * std::log(z);
}

double xi0(double a, double z) {
  require_unit_interval(a, z, "xi0");
  return (1.0 - z) / (1.0 - a * z);
}

double rogers_residual(double a, double z) {
  require_unit_interval(a, z, "rogers_residual");
  const double denom = 1.0 - a * z;
  const double arg_a = (a - a * z) / denom;  // a * xi0
  const double arg_z = (z - a * z) / denom;  // 1 - xi0
  return li2(a) + li2(z) -
         (li2(a * z) + li2(arg_a) + li2(arg_z) +
          std::log((1.0 - z) / denom) * std::log((1.0 - a) / denom));
}

double reflection_residual(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("reflection_residual: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  // Written so that x and 1-x produce the same floating-point value when
  // 1-x is exact: commuted sums and products only.
  return li2(x) + li2(1.0 - x) - kLi2One + std::log(x) * std::log(1.0 - x);
}

std::vector<LimitScanRecord> limit_scan(double a, double z, int k_min, int k_max,
                                        double tol_rel, double tol_term) {
  require_unit_interval(a, z, "limit_scan");
  if (k_min < 1 || k_min > k_max) {
    throw std::invalid_argument("limit_scan: need 1 <= k_min <= k_max");
  }
  const double target_F = F_eval(xi0(a, z), a, z);
  const double target_R = kLi2One + li2(a * z) - li2(a) - li2(z);

  std::vector<LimitScanRecord> records;
  records.reserve(static_cast<std::size_t>(k_max - k_min) + 1);
  for (int k = k_min; k <= k_max; ++k) {
    LimitScanRecord rec;
    rec.k = k;
    const double step = std::ldexp(1.0, -k);  // 2^-k
    rec.q = 1.0 - step;
    rec.h = -std::log1p(-step);
    rec.target_F = target_F;
    rec.target_R = target_R;
    if (!(rec.q > 1.0 - z * (1.0 - a))) {
      rec.flagged = true;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.ln_sum_g = rec.L = rec.R = rec.residual_L = rec.residual_R = nan;
      records.push_back(rec);
      continue;
    }
    const QParams p(rec.q, a, z, tol_rel, tol_term);
    const double lnq = -rec.h;
    rec.ln_sum_g = qnum::ln_sum_g(p);
    rec.L = lnq * rec.ln_sum_g;
    rec.R = lnq * (ln_phi(a, p) + ln_phi(z, p) - ln_phi(rec.q, p) - ln_phi(a * z, p));
    rec.residual_L = rec.L - target_F;
    rec.residual_R = rec.R - target_R;
    records.push_back(rec);
  }
  return records;
}

ExtrapolationResult extrapolate(std::span<const LimitScanRecord> records, int order) {
  if (order < 1 || order > 8) throw std::invalid_argument("extrapolate: order must be in 1..8");
  std::vector<const LimitScanRecord*> usable;
  for (const auto& r : records) {
    if (!r.flagged) usable.push_back(&r);
  }
  if (usable.size() < 4) {
    throw std::invalid_argument("extrapolate: need at least 4 non-flagged records");
  }
  std::sort(usable.begin(), usable.end(),
            [](const LimitScanRecord* x, const LimitScanRecord* y) { return x->h < y->h; });
  const std::size_t n_use =
      std::max((usable.size() + 1) / 2, static_cast<std::size_t>(order) + 1);
  if (n_use > usable.size()) {
    throw std::invalid_argument("extrapolate: too few records for this fit order");
  }
  usable.resize(n_use);

  // Scale h to [0,1] before forming normal equations; the intercept is
  // unaffected and the Gram matrix stays well conditioned for low orders.
  const double h_max = usable.back()->h;
  const std::size_t dim = static_cast<std::size_t>(order) + 1;
  std::vector<long double> gram(dim * dim, 0.0L), rhs(dim, 0.0L);
  for (const auto* rec : usable) {
    const long double s = rec->h / h_max;
    std::vector<long double> row(dim);
    row[0] = 1.0L;
    for (std::size_t j = 1; j < dim; ++j) row[j] = row[j - 1] * s;
    for (std::size_t i = 0; i < dim; ++i) {
      rhs[i] += row[i] * rec->L;
      for (std::size_t j = 0; j < dim; ++j) gram[i * dim + j] += row[i] * row[j];
    }
  }

  // Gaussian elimination with partial pivoting.
  std::vector<std::size_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (std::abs(static_cast<double>(gram[r * dim + col])) >
          std::abs(static_cast<double>(gram[piv * dim + col]))) {
        piv = r;
      }
    }
    if (std::abs(static_cast<double>(gram[piv * dim + col])) < 1e-13 * static_cast<double>(n_use)) {
      throw numeric_error("extrapolate: rank-deficient least-squares system");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < dim; ++j) std::swap(gram[col * dim + j], gram[piv * dim + j]);
      std::swap(rhs[col], rhs[piv]);
    }
    for (std::size_t r = col + 1; r < dim; ++r) {
      const long double factor = gram[r * dim + col] / gram[col * dim + col];
      for (std::size_t j = col; j < dim; ++j) gram[r * dim + j] -= factor * gram[col * dim + j];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<long double> coeff(dim);
  for (std::size_t i = dim; i-- > 0;) {
    long double acc = rhs[i];
    for (std::size_t j = i + 1; j < dim; ++j) acc -= gram[i * dim + j] * coeff[j];
    coeff[i] = acc / gram[i * dim + i];
  }

  ExtrapolationResult result;
  result.order = order;
  result.points_used = n_use;
  result.l_star = static_cast<double>(coeff[0]);
  long double ss = 0.0L;
  for (const auto* rec : usable) {
    const long double s = rec->h / h_max;
    long double fit = 0.0L, pw = 1.0L;
    for (std::size_t j = 0; j < dim; ++j) {
      fit += coeff[j] * pw;
      pw *= s;
    }
    const long double resid = rec->L - fit;
    ss += resid * resid;
  }
  result.fit_rms = static_cast<double>(std::sqrt(static_cast<double>(ss / n_use)));
  return result;
}

}  // namespace qpent::limits
