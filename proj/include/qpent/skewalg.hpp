#ifndef QPENT_SKEWALG_HPP
#define QPENT_SKEWALG_HPP

// Truncated formal power series in two variables u, v obeying uv = q vu,
// with exact rational-function coefficients. Words are kept normal-ordered
// as v^n u^m; re-ordering u^a past v^b picks up the exact factor q^{ab}.
// This is enough to state and verify the quantum pentagon identity
//   phi(u) phi(v) = phi(v) phi(-vu) phi(u)
// coefficient by coefficient up to a total-degree cutoff.

#include <map>
#include <optional>
#include <string>

#include "qpent/exactq.hpp"

namespace qpent::skew {

/// Exponents of a normal-ordered monomial v^vpow u^upow.
struct MonoKey {
  unsigned vpow = 0;
  unsigned upow = 0;
  friend auto operator<=>(const MonoKey&, const MonoKey&) = default;
  unsigned total() const { return vpow + upow; }
};

/// Series truncated at total degree vpow + upow <= trunc. Zero coefficients
/// are never stored; coefficients are canonical RatFuncQ, so equality of
/// series is equality of the underlying maps.
class SkewSeries {
 public:
  explicit SkewSeries(unsigned trunc) : trunc_(trunc) {}

  static SkewSeries one(unsigned trunc);
  static SkewSeries generator_u(unsigned trunc);
  static SkewSeries generator_v(unsigned trunc);

  unsigned trunc() const { return trunc_; }
  const std::map<MonoKey, exactq::RatFuncQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of v^vpow u^upow (zero if absent).
  const exactq::RatFuncQ& coeff(unsigned vpow, unsigned upow) const;

  /// Accumulate c into the coefficient at key; silently drops keys beyond
  /// the truncation order.
  void add_term(MonoKey key, const exactq::RatFuncQ& c);

  SkewSeries& operator+=(const SkewSeries& rhs);
  SkewSeries& operator-=(const SkewSeries& rhs);
  SkewSeries scaled(const exactq::RatFuncQ& c) const;
  SkewSeries operator-() const;

  bool operator==(const SkewSeries&) const = default;

 private:
  unsigned trunc_;
  std::map<MonoKey, exactq::RatFuncQ> terms_;
};

/// Product with normal re-ordering:
/// (v^{n1} u^{m1})(v^{n2} u^{m2}) = q^{m1 n2} v^{n1+n2} u^{m1+m2},
/// truncated to the common total-degree cutoff.
/// Throws std::invalid_argument on mismatched truncation orders.
SkewSeries skew_mul(const SkewSeries& a, const SkewSeries& b);

/// phi(X) = sum_{k>=0} X^k / (q;q)_k for a series X with no constant term;
/// the sum terminates at k = N under truncation. Throws std::domain_error
/// if X has a constant term, std::invalid_argument if X.trunc() != N.
SkewSeries phi_expand(const SkewSeries& x, unsigned n);

/// Both sides of the pentagon identity at cutoff N (exposed for
/// cross-checks against the exact coefficient identities).
SkewSeries pentagon_lhs(unsigned n);
SkewSeries pentagon_rhs(unsigned n);

struct PentagonReport {
  unsigned degree = 0;
  bool pass = false;
  struct Mismatch {
    unsigned vpow = 0, upow = 0;
    std::string lhs, rhs;
  };
  /// First differing coefficient in total-degree order, if any.
  std::optional<Mismatch> first_mismatch;
};

/// Compare phi(u) phi(v) with phi(v) phi(-vu) phi(u) coefficientwise up to
/// total degree N.
PentagonReport verify_pentagon(unsigned n);

}  // namespace qpent::skew

#endif
