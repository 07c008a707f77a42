#include "qpent/exactq.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qpent/errors.hpp"

namespace qpent::exactq {

namespace {
const BigInt kZeroInt{};
}

// ---------------------------------------------------------------------------
// IntPolyQ
// ---------------------------------------------------------------------------

IntPolyQ::IntPolyQ(BigInt constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

IntPolyQ IntPolyQ::monomial(BigInt coeff, unsigned power) {
  IntPolyQ p;
  if (coeff != 0) {
    p.coeffs_.assign(power + 1, BigInt(0));
    p.coeffs_[power] = std::move(coeff);
  }
  return p;
}

const IntPolyQ& IntPolyQ::one() {
  static const IntPolyQ unit{BigInt(1)};
  return unit;
}

void IntPolyQ::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPolyQ::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZeroInt;
}

const BigInt& IntPolyQ::leading() const {
  return coeffs_.empty() ? kZeroInt : coeffs_.back();
}

std::size_t IntPolyQ::low_order() const {
  std::size_t i = 0;
  while (i < coeffs_.size() && coeffs_[i] == 0) ++i;
  return i;
}

IntPolyQ IntPolyQ::operator-() const {
  IntPolyQ r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPolyQ& IntPolyQ::operator+=(const IntPolyQ& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPolyQ& IntPolyQ::operator-=(const IntPolyQ& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPolyQ operator*(const IntPolyQ& lhs, const IntPolyQ& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  IntPolyQ r;
  r.coeffs_.assign(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    const BigInt& a = lhs.coeffs_[i];
    if (a == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      const BigInt& b = rhs.coeffs_[j];
      if (b != 0) r.coeffs_[i + j] += a * b;
    }
  }
  r.trim();
  return r;
}

IntPolyQ operator*(const IntPolyQ& lhs, const BigInt& scalar) {
  if (scalar == 0) return {};
  IntPolyQ r(lhs);
  for (auto& c : r.coeffs_) c *= scalar;
  return r;
}

IntPolyQ IntPolyQ::shifted(unsigned k) const {
  if (is_zero() || k == 0) return *this;
  IntPolyQ r;
  r.coeffs_.assign(coeffs_.size() + k, BigInt(0));
  std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin() + k);
  return r;
}

IntPolyQ IntPolyQ::unshifted(unsigned k) const {
  if (k == 0) return *this;
  if (low_order() < k) throw numeric_error("unshifted: q^k does not divide polynomial");
  IntPolyQ r;
  r.coeffs_.assign(coeffs_.begin() + k, coeffs_.end());
  return r;
}

BigInt IntPolyQ::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    if (c != 0) g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

BigRat IntPolyQ::eval(const BigRat& q0) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q0 + *it;
  return acc;
}

std::string IntPolyQ::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    BigInt mag = neg ? BigInt(-c) : c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (mag != 1 || i == 0) out << mag;
    if (i > 0) {
      if (mag != 1) out << "*";
      out << "q";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// gcd machinery
// ---------------------------------------------------------------------------

namespace {

// a with its integer content removed, sign preserved.
IntPolyQ primitive_part(const IntPolyQ& a) {
  BigInt c = a.content();
  if (c == 0 || c == 1) return a;
  return divide_exact(a, IntPolyQ(c));
}

// Pseudo-remainder of lc(b)^(deg a - deg b + 1) * a modulo b.
IntPolyQ pseudo_rem(IntPolyQ a, const IntPolyQ& b) {
  const int db = b.degree();
  const BigInt& lb = b.leading();
  int mults_left = a.degree() - db + 1;
  while (!a.is_zero() && a.degree() >= db && mults_left > 0) {
    const BigInt la = a.leading();
    const unsigned sh = static_cast<unsigned>(a.degree() - db);
    a = a * lb - b.shifted(sh) * la;
    --mults_left;
  }
  while (mults_left-- > 0) a = a * lb;
  return a;
}

}  // namespace

IntPolyQ poly_gcd(const IntPolyQ& a_in, const IntPolyQ& b_in) {
  auto positive = [](IntPolyQ p) {
    if (!p.is_zero() && p.leading() < 0) return -p;
    return p;
  };
  if (a_in.is_zero()) return positive(b_in);
  if (b_in.is_zero()) return positive(a_in);

  // Split off the shared power of q and the shared integer content.
  const unsigned v = static_cast<unsigned>(std::min(a_in.low_order(), b_in.low_order()));
  IntPolyQ a = a_in.unshifted(static_cast<unsigned>(a_in.low_order()));
  IntPolyQ b = b_in.unshifted(static_cast<unsigned>(b_in.low_order()));
  const BigInt content = gcd(a.content(), b.content());
  a = primitive_part(a);
  b = primitive_part(b);

  // A constant primitive part means the polynomial gcd is trivial.
  if (a.degree() == 0 || b.degree() == 0) {
    return IntPolyQ(content).shifted(v);
  }

  // Primitive PRS. Leading coefficients in this codebase are almost always
  // +-1, so pseudo-remainder scaling stays tame.
  if (a.degree() < b.degree()) std::swap(a, b);
  while (true) {
    IntPolyQ r = pseudo_rem(a, b);
    if (r.is_zero()) break;
    a = std::move(b);
    b = primitive_part(r);
    if (b.degree() == 0) {
      return IntPolyQ(content).shifted(v);
    }
  }
  return (positive(primitive_part(b)) * content).shifted(v);
}

IntPolyQ divide_exact(const IntPolyQ& a, const IntPolyQ& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
  if (a.is_zero()) return {};
  const int da = a.degree(), db = b.degree();
  if (da < db) throw numeric_error("divide_exact: not divisible (degree)");

  std::vector<BigInt> rem(static_cast<std::size_t>(da) + 1);
  for (int i = 0; i <= da; ++i) rem[static_cast<std::size_t>(i)] = a.coeff(static_cast<std::size_t>(i));
  std::vector<BigInt> quot(static_cast<std::size_t>(da - db) + 1);
  const BigInt& lb = b.leading();

  for (int i = da - db; i >= 0; --i) {
    BigInt& lead = rem[static_cast<std::size_t>(i + db)];
    if (lead == 0) continue;
    BigInt t, r;
    divide_qr(lead, lb, t, r);
    if (r != 0) throw numeric_error("divide_exact: not divisible (coefficient)");
    quot[static_cast<std::size_t>(i)] = t;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(i + j)] -= t * b.coeff(static_cast<std::size_t>(j));
    }
  }
  for (const auto& c : rem) {
    if (c != 0) throw numeric_error("divide_exact: nonzero remainder");
  }
  IntPolyQ q;
  for (unsigned i = 0; i < quot.size(); ++i) {
    q += IntPolyQ::monomial(quot[i], i);
  }
  return q;
}

// ---------------------------------------------------------------------------
// RatFuncQ
// ---------------------------------------------------------------------------

RatFuncQ::RatFuncQ() : num_(), den_(IntPolyQ::one()) {}

RatFuncQ::RatFuncQ(IntPolyQ num) : num_(std::move(num)), den_(IntPolyQ::one()) {}

RatFuncQ::RatFuncQ(IntPolyQ num, IntPolyQ den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

RatFuncQ::RatFuncQ(IntPolyQ num, IntPolyQ den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

const RatFuncQ& RatFuncQ::one() {
  static const RatFuncQ unit{IntPolyQ::one()};
  return unit;
}

void RatFuncQ::canonicalize() {
  if (den_.is_zero()) throw std::domain_error("RatFuncQ: zero denominator");
  if (num_.is_zero()) {
    den_ = IntPolyQ::one();
    return;
  }
  IntPolyQ g = poly_gcd(num_, den_);
  if (!(g == IntPolyQ::one())) {
    num_ = divide_exact(num_, g);
    den_ = divide_exact(den_, g);
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RatFuncQ RatFuncQ::operator-() const {
  return RatFuncQ(-num_, den_, raw_tag{});
}

RatFuncQ& RatFuncQ::operator+=(const RatFuncQ& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (den_ == rhs.den_) {
    *this = RatFuncQ(num_ + rhs.num_, den_);
  } else {
    *this = RatFuncQ(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
  }
  return *this;
}

RatFuncQ& RatFuncQ::operator-=(const RatFuncQ& rhs) {
  return *this += -rhs;
}

RatFuncQ operator*(const RatFuncQ& lhs, const RatFuncQ& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return RatFuncQ{};
  // Cross-reduce first; cofactors of a gcd are coprime, so the product of
  // the reduced pieces is already canonical up to sign.
  IntPolyQ g1 = poly_gcd(lhs.num_, rhs.den_);
  IntPolyQ g2 = poly_gcd(rhs.num_, lhs.den_);
  IntPolyQ n = divide_exact(lhs.num_, g1) * divide_exact(rhs.num_, g2);
  IntPolyQ d = divide_exact(lhs.den_, g2) * divide_exact(rhs.den_, g1);
  if (d.leading() < 0) {
    n = -n;
    d = -d;
  }
  return RatFuncQ(std::move(n), std::move(d), RatFuncQ::raw_tag{});
}

RatFuncQ operator/(const RatFuncQ& lhs, const RatFuncQ& rhs) {
  if (rhs.is_zero()) throw std::domain_error("RatFuncQ: division by zero");
  return lhs * RatFuncQ(rhs.den_, rhs.num_, RatFuncQ::raw_tag{});
}

BigRat RatFuncQ::eval(const BigRat& q0) const {
  BigRat d = den_.eval(q0);
  if (d == 0) throw std::domain_error("RatFuncQ::eval: denominator vanishes at q0");
  return num_.eval(q0) / d;
}

std::string RatFuncQ::str() const {
  if (den_ == IntPolyQ::one()) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

// ---------------------------------------------------------------------------
// The coefficient identity family
// ---------------------------------------------------------------------------

IntPolyQ qpochhammer_poly(unsigned k) {
  IntPolyQ p = IntPolyQ::one();
  for (unsigned n = 1; n <= k; ++n) {
    p = p * (IntPolyQ::one() - IntPolyQ::monomial(BigInt(1), n));
  }
  return p;
}

namespace {

// Row m of the Gaussian binomial table, built by the q-Pascal recurrence.
std::vector<IntPolyQ> gauss_row(unsigned m) {
  std::vector<IntPolyQ> row{IntPolyQ::one()};  // m = 0
  for (unsigned i = 1; i <= m; ++i) {
    std::vector<IntPolyQ> next(i + 1);
    next[0] = IntPolyQ::one();
    next[i] = IntPolyQ::one();
    for (unsigned k = 1; k < i; ++k) {
      next[k] = row[k - 1] + row[k].shifted(k);
    }
    row = std::move(next);
  }
  return row;
}

}  // namespace

IntPolyQ gauss_binom(unsigned m, unsigned k) {
  if (k > m) throw std::domain_error("gauss_binom: k > m");
  return gauss_row(m)[k];
}

RatFuncQ coeff_identity_lhs(unsigned m, unsigned n) {
  return RatFuncQ(IntPolyQ::monomial(BigInt(1), m * n),
                  qpochhammer_poly(m) * qpochhammer_poly(n));
}

RatFuncQ coeff_identity_rhs(unsigned m, unsigned n) {
  // Common denominator (q;q)_m (q;q)_n (q;q)_min(m,n); the k-th numerator
  // uses (q;q)_m / (q;q)_{m-k} = [m,k]_q (q;q)_k and its n-counterpart.
  const unsigned kmax = std::min(m, n);
  const auto rows_m = gauss_row(m);
  const auto rows_n = gauss_row(n);
  std::vector<IntPolyQ> poch(kmax + 1);
  for (unsigned k = 0; k <= kmax; ++k) poch[k] = qpochhammer_poly(k);

  IntPolyQ numerator;
  for (unsigned k = 0; k <= kmax; ++k) {
    // (q;q)_min / (q;q)_k = prod_{i=k+1..min} (1 - q^i)
    IntPolyQ tail = IntPolyQ::one();
    for (unsigned i = k + 1; i <= kmax; ++i) {
      tail = tail * (IntPolyQ::one() - IntPolyQ::monomial(BigInt(1), i));
    }
    IntPolyQ term = rows_m[k] * rows_n[k] * poch[k] * tail;
    term = term.shifted(k * (k - 1) / 2);
    if (k % 2) {
      numerator -= term;
    } else {
      numerator += term;
    }
  }
  return RatFuncQ(std::move(numerator),
                  qpochhammer_poly(m) * qpochhammer_poly(n) * poch[kmax]);
}

namespace {

// Shared sweep core; gauss rows and pochhammers are built once.
struct IdentityChecker {
  std::vector<std::vector<IntPolyQ>> gauss;  // gauss[m][k]
  std::vector<IntPolyQ> poch;                // (q;q)_k
  std::size_t max_degree = 0;

  explicit IdentityChecker(unsigned top) {
    gauss.reserve(top + 1);
    for (unsigned m = 0; m <= top; ++m) gauss.push_back(gauss_row(m));
    poch.resize(top + 1);
    for (unsigned k = 0; k <= top; ++k) poch[k] = qpochhammer_poly(k);
  }

  void note_degree(const IntPolyQ& p) {
    if (p.degree() > 0) max_degree = std::max(max_degree, static_cast<std::size_t>(p.degree()));
  }

  bool check(unsigned m, unsigned n) {
    IntPolyQ sum;
    const unsigned kmax = std::min(m, n);
    for (unsigned k = 0; k <= kmax; ++k) {
      IntPolyQ term = gauss[m][k] * gauss[n][k] * poch[k];
      term = term.shifted(k * (k - 1) / 2);
      note_degree(term);
      if (k % 2) {
        sum -= term;
      } else {
        sum += term;
      }
    }
    note_degree(sum);
    return sum == IntPolyQ::monomial(BigInt(1), m * n);
  }
};

}  // namespace

bool verify_coeff_identity(unsigned m, unsigned n) {
  IdentityChecker checker(std::max(m, n));
  return checker.check(m, n);
}

bool CoeffIdentityReport::pair_pass(unsigned m, unsigned n) const {
  return pass.at(static_cast<std::size_t>(m) * (max_n + 1) + n);
}

CoeffIdentityReport verify_coeff_identity_range(unsigned max_m, unsigned max_n) {
  CoeffIdentityReport report;
  report.max_m = max_m;
  report.max_n = max_n;
  IdentityChecker checker(std::max(max_m, max_n));
  report.pass.reserve(static_cast<std::size_t>(max_m + 1) * (max_n + 1));
  for (unsigned m = 0; m <= max_m; ++m) {
    for (unsigned n = 0; n <= max_n; ++n) {
      const bool ok = checker.check(m, n);
      report.pass.push_back(ok);
      if (!ok) report.failures.emplace_back(m, n);
      ++report.pairs_checked;
    }
  }
  report.max_degree = checker.max_degree;
  return report;
}

}  // namespace qpent::exactq
