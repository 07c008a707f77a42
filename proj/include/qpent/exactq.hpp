#ifndef QPENT_EXACTQ_HPP
#define QPENT_EXACTQ_HPP

// Exact arithmetic in the indeterminate q: integer-coefficient polynomials,
// reduced rational functions, and the family of coefficient identities
//
//   q^{mn} / ((q;q)_m (q;q)_n)
//     = sum_{k=0}^{min(m,n)} (-1)^k q^{k(k-1)/2} / ((q;q)_{m-k} (q;q)_{n-k} (q;q)_k)
//
// that carries the q-binomial formula over to the quantum pentagon identity.
// Everything here is exact: no floating point, no rounding.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qpent::exactq {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Dense polynomial in q with arbitrary-precision integer coefficients.
/// Stored lowest power first; the highest stored coefficient is nonzero
/// (the zero polynomial is the empty sequence). Immutable in practice:
/// all operations return new values.
class IntPolyQ {
 public:
  IntPolyQ() = default;  // zero polynomial
  explicit IntPolyQ(BigInt constant);
  explicit IntPolyQ(long constant) : IntPolyQ(BigInt(constant)) {}

  static IntPolyQ monomial(BigInt coeff, unsigned power);
  static const IntPolyQ& one();

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of q^i (zero beyond the stored range).
  const BigInt& coeff(std::size_t i) const;
  const BigInt& leading() const;
  /// Index of the lowest nonzero coefficient (the q-adic valuation).
  /// Zero polynomial has no valuation; callers must guard.
  std::size_t low_order() const;

  IntPolyQ operator-() const;
  IntPolyQ& operator+=(const IntPolyQ& rhs);
  IntPolyQ& operator-=(const IntPolyQ& rhs);
  friend IntPolyQ operator+(IntPolyQ lhs, const IntPolyQ& rhs) { return lhs += rhs; }
  friend IntPolyQ operator-(IntPolyQ lhs, const IntPolyQ& rhs) { return lhs -= rhs; }
  friend IntPolyQ operator*(const IntPolyQ& lhs, const IntPolyQ& rhs);
  friend IntPolyQ operator*(const IntPolyQ& lhs, const BigInt& scalar);

  /// This polynomial times q^k.
  IntPolyQ shifted(unsigned k) const;
  /// This polynomial divided by q^k; requires low_order() >= k.
  IntPolyQ unshifted(unsigned k) const;

  /// gcd of all coefficients, nonnegative; 0 for the zero polynomial.
  BigInt content() const;

  /// Exact evaluation at a rational point.
  BigRat eval(const BigRat& q0) const;

  bool operator==(const IntPolyQ&) const = default;

  /// Human-readable form, e.g. "1 - q - q^2 + q^3".
  std::string str() const;

 private:
  std::vector<BigInt> coeffs_;
  void trim();
};

/// (q;q)_k = prod_{n=1..k} (1 - q^n), exactly; degree k(k+1)/2.
IntPolyQ qpochhammer_poly(unsigned k);

/// Gaussian binomial [m, k]_q via the q-Pascal recurrence
/// [m,k] = [m-1,k-1] + q^k [m-1,k]. Throws std::domain_error for k > m.
IntPolyQ gauss_binom(unsigned m, unsigned k);

/// Full gcd over Z[q] (content, q-power, and primitive part), normalized
/// to a positive leading coefficient. gcd(0,0) = 0.
IntPolyQ poly_gcd(const IntPolyQ& a, const IntPolyQ& b);

/// Exact quotient a / b; throws std::domain_error if b is zero and
/// numeric_error if b does not divide a.
IntPolyQ divide_exact(const IntPolyQ& a, const IntPolyQ& b);

/// Reduced ratio of two IntPolyQ. Canonical form: gcd(num, den) = 1
/// including integer content, and den has a positive leading coefficient,
/// so equality is plain representation equality.
class RatFuncQ {
 public:
  RatFuncQ();  // zero
  explicit RatFuncQ(IntPolyQ num);
  RatFuncQ(IntPolyQ num, IntPolyQ den);  // canonicalizes
  explicit RatFuncQ(long value) : RatFuncQ(IntPolyQ(value)) {}

  static const RatFuncQ& one();

  const IntPolyQ& num() const { return num_; }
  const IntPolyQ& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFuncQ operator-() const;
  RatFuncQ& operator+=(const RatFuncQ& rhs);
  RatFuncQ& operator-=(const RatFuncQ& rhs);
  friend RatFuncQ operator+(RatFuncQ lhs, const RatFuncQ& rhs) { return lhs += rhs; }
  friend RatFuncQ operator-(RatFuncQ lhs, const RatFuncQ& rhs) { return lhs -= rhs; }
  friend RatFuncQ operator*(const RatFuncQ& lhs, const RatFuncQ& rhs);
  friend RatFuncQ operator/(const RatFuncQ& lhs, const RatFuncQ& rhs);

  /// Exact evaluation; throws std::domain_error if the denominator
  /// vanishes at q0.
  BigRat eval(const BigRat& q0) const;

  bool operator==(const RatFuncQ&) const = default;

  std::string str() const;

 private:
  IntPolyQ num_, den_;
  void canonicalize();
  struct raw_tag {};
  RatFuncQ(IntPolyQ num, IntPolyQ den, raw_tag);  // trusted canonical input
};

/// Left side of the coefficient identity: q^{mn} / ((q;q)_m (q;q)_n).
RatFuncQ coeff_identity_lhs(unsigned m, unsigned n);

/// Right side, summed over a common denominator and reduced.
RatFuncQ coeff_identity_rhs(unsigned m, unsigned n);

/// Exact check of the identity for one (m, n). Works on the
/// cleared-denominator polynomial form
///   q^{mn} = sum_k (-1)^k q^{k(k-1)/2} [m,k]_q [n,k]_q (q;q)_k
/// so no rational normal forms are built.
bool verify_coeff_identity(unsigned m, unsigned n);

struct CoeffIdentityReport {
  unsigned max_m = 0, max_n = 0;
  std::size_t pairs_checked = 0;
  /// Largest polynomial degree formed during the sweep.
  std::size_t max_degree = 0;
  /// One entry per checked pair, row-major in (m, n).
  std::vector<bool> pass;
  std::vector<std::pair<unsigned, unsigned>> failures;
  bool all_pass() const { return failures.empty(); }
  bool pair_pass(unsigned m, unsigned n) const;
};

/// Sweep the identity over all 0 <= m <= max_m, 0 <= n <= max_n.
CoeffIdentityReport verify_coeff_identity_range(unsigned max_m, unsigned max_n);

}  // namespace qpent::exactq

#endif
