#include "qpent/skewalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qpent::skew {

using exactq::BigInt;
using exactq::IntPolyQ;
using exactq::RatFuncQ;

SkewSeries SkewSeries::one(unsigned trunc) {
  SkewSeries s(trunc);
  s.add_term({0, 0}, RatFuncQ::one());
  return s;
}

SkewSeries SkewSeries::generator_u(unsigned trunc) {
  SkewSeries s(trunc);
  s.add_term({0, 1}, RatFuncQ::one());
  return s;
}

SkewSeries SkewSeries::generator_v(unsigned trunc) {
  SkewSeries s(trunc);
  s.add_term({1, 0}, RatFuncQ::one());
  return s;
}

const RatFuncQ& SkewSeries::coeff(unsigned vpow, unsigned upow) const {
  static const RatFuncQ zero{};
  auto it = terms_.find(MonoKey{vpow, upow});
  return it == terms_.end() ? zero : it->second;
}

void SkewSeries::add_term(MonoKey key, const RatFuncQ& c) {
  if (key.total() > trunc_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SkewSeries& SkewSeries::operator+=(const SkewSeries& rhs) {
  if (trunc_ != rhs.trunc_) throw std::invalid_argument("SkewSeries: truncation order mismatch");
  for (const auto& [key, c] : rhs.terms_) add_term(key, c);
  return *this;
}

SkewSeries& SkewSeries::operator-=(const SkewSeries& rhs) {
  if (trunc_ != rhs.trunc_) throw std::invalid_argument("SkewSeries: truncation order mismatch");
  for (const auto& [key, c] : rhs.terms_) add_term(key, -c);
  return *this;
}

SkewSeries SkewSeries::scaled(const RatFuncQ& c) const {
  SkewSeries out(trunc_);
  if (c.is_zero()) return out;
  for (const auto& [key, coeff] : terms_) out.add_term(key, coeff * c);
  return out;
}

SkewSeries SkewSeries::operator-() const {
  SkewSeries out(trunc_);
  for (const auto& [key, coeff] : terms_) out.add_term(key, -coeff);
  return out;
}

SkewSeries skew_mul(const SkewSeries& a, const SkewSeries& b) {
  if (a.trunc() != b.trunc()) throw std::invalid_argument("skew_mul: truncation order mismatch");
  SkewSeries out(a.trunc());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const MonoKey key{ka.vpow + kb.vpow, ka.upow + kb.upow};
      if (key.total() > out.trunc()) continue;
      RatFuncQ c = ca * cb;
      const unsigned swap_power = ka.upow * kb.vpow;
      if (swap_power > 0) {
        c = c * RatFuncQ(IntPolyQ::monomial(BigInt(1), swap_power));
      }
      out.add_term(key, c);
    }
  }
  return out;
}

SkewSeries phi_expand(const SkewSeries& x, unsigned n) {
  if (x.trunc() != n) throw std::invalid_argument("phi_expand: X.trunc() != N");
  if (!x.coeff(0, 0).is_zero()) {
    throw std::domain_error("phi_expand: argument has a constant term");
  }
  SkewSeries result = SkewSeries::one(n);
  SkewSeries power = SkewSeries::one(n);
  IntPolyQ poch = IntPolyQ::one();
  for (unsigned k = 1; k <= n; ++k) {
    power = skew_mul(power, x);
    if (power.is_zero()) break;
    poch = poch * (IntPolyQ::one() - IntPolyQ::monomial(BigInt(1), k));
    result += power.scaled(RatFuncQ(IntPolyQ::one(), poch));
  }
  return result;
}

SkewSeries pentagon_lhs(unsigned n) {
  const auto u = SkewSeries::generator_u(n);
  const auto v = SkewSeries::generator_v(n);
  return skew_mul(phi_expand(u, n), phi_expand(v, n));
}

SkewSeries pentagon_rhs(unsigned n) {
  const auto u = SkewSeries::generator_u(n);
  const auto v = SkewSeries::generator_v(n);
  const auto minus_vu = -skew_mul(v, u);
  return skew_mul(skew_mul(phi_expand(v, n), phi_expand(minus_vu, n)), phi_expand(u, n));
}

PentagonReport verify_pentagon(unsigned n) {
  PentagonReport report;
  report.degree = n;
  const SkewSeries lhs = pentagon_lhs(n);
  const SkewSeries rhs = pentagon_rhs(n);
  if (lhs == rhs) {
    report.pass = true;
    return report;
  }
  // Locate the first mismatch in total-degree order (then by v-power).
  std::vector<MonoKey> keys;
  for (const auto& [key, c] : lhs.terms()) keys.push_back(key);
  for (const auto& [key, c] : rhs.terms()) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [](const MonoKey& a, const MonoKey& b) {
    return std::tuple{a.total(), a.vpow} < std::tuple{b.total(), b.vpow};
  });
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const MonoKey& key : keys) {
    const RatFuncQ& l = lhs.coeff(key.vpow, key.upow);
    const RatFuncQ& r = rhs.coeff(key.vpow, key.upow);
    if (!(l == r)) {
      report.first_mismatch = PentagonReport::Mismatch{key.vpow, key.upow, l.str(), r.str()};
      break;
    }
  }
  report.pass = false;
  return report;
}

}  // namespace qpent::skew
