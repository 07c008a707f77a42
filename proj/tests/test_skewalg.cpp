#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "qpent/exactq.hpp"
#include "qpent/skewalg.hpp"

using namespace qpent::skew;
using qpent::exactq::BigInt;
using qpent::exactq::IntPolyQ;
using qpent::exactq::RatFuncQ;

namespace {

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
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

RatFuncQ mono(long c, unsigned power) {
  return RatFuncQ(IntPolyQ::monomial(BigInt(c), power));
}

SkewSeries random_series(SplitMix64& rng, unsigned trunc) {
  SkewSeries s(trunc);
  const int terms = static_cast<int>(rng.range(1, 6));
  for (int i = 0; i < terms; ++i) {
    const unsigned n = static_cast<unsigned>(rng.range(0, trunc));
    const unsigned m = static_cast<unsigned>(rng.range(0, trunc - n));
    RatFuncQ c(IntPolyQ::monomial(BigInt(rng.range(-4, 4)), static_cast<unsigned>(rng.range(0, 2))),
               IntPolyQ(1) - IntPolyQ::monomial(BigInt(rng.range(0, 1)), 1));
    s.add_term({n, m}, c);
  }
  return s;
}

}  // namespace

TEST_CASE("normal-ordering rule") {
  const unsigned N = 4;
  const auto u = SkewSeries::generator_u(N);
  const auto v = SkewSeries::generator_v(N);

  SUBCASE("u v = q vu") {
    const auto uv = skew_mul(u, v);
    CHECK(uv.terms().size() == 1);
    CHECK(uv.coeff(1, 1) == mono(1, 1));
  }

  SUBCASE("v u = vu, already normal ordered") {
    const auto vu = skew_mul(v, u);
    CHECK(vu.coeff(1, 1) == RatFuncQ::one());
  }

  SUBCASE("identity element") {
    SplitMix64 rng(0x11u);
    for (int i = 0; i < 10; ++i) {
      const auto a = random_series(rng, N);
      CHECK(skew_mul(SkewSeries::one(N), a) == a);
      CHECK(skew_mul(a, SkewSeries::one(N)) == a);
    }
  }

  SUBCASE("(vu)(vu) = q v^2 u^2") {
    const auto vu = skew_mul(v, u);
    const auto sq = skew_mul(vu, vu);
    CHECK(sq.terms().size() == 1);
    CHECK(sq.coeff(2, 2) == mono(1, 1));
  }

  SUBCASE("(vu)^k = q^{k(k-1)/2} v^k u^k") {
    const unsigned big = 12;
    const auto vu = skew_mul(SkewSeries::generator_v(big), SkewSeries::generator_u(big));
    SkewSeries power = SkewSeries::one(big);
    for (unsigned k = 1; k <= 5; ++k) {
      power = skew_mul(power, vu);
      CHECK(power.terms().size() == 1);
      CHECK(power.coeff(k, k) == mono(1, k * (k - 1) / 2));
    }
  }

  SUBCASE("mismatched truncation orders are rejected") {
    CHECK_THROWS_AS(skew_mul(SkewSeries::one(3), SkewSeries::one(4)), std::invalid_argument);
  }
}

TEST_CASE("skew multiplication is associative") {
  SplitMix64 rng(0xa55u);
  for (unsigned trunc : {4u, 6u, 8u}) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = random_series(rng, trunc);
      const auto b = random_series(rng, trunc);
      const auto c = random_series(rng, trunc);
      CHECK(skew_mul(skew_mul(a, b), c) == skew_mul(a, skew_mul(b, c)));
    }
  }
}

TEST_CASE("phi expansion") {
  SUBCASE("phi(u) to degree 2: 1 + u/(1-q) + u^2/((1-q)(1-q^2))") {
    const unsigned N = 2;
    const auto phi_u = phi_expand(SkewSeries::generator_u(N), N);
    CHECK(phi_u.coeff(0, 0) == RatFuncQ::one());
    CHECK(phi_u.coeff(0, 1) == RatFuncQ(IntPolyQ(1), qpent::exactq::qpochhammer_poly(1)));
    CHECK(phi_u.coeff(0, 2) == RatFuncQ(IntPolyQ(1), qpent::exactq::qpochhammer_poly(2)));
    CHECK(phi_u.terms().size() == 3);
  }

  SUBCASE("phi(0) = 1") {
    CHECK(phi_expand(SkewSeries(3), 3) == SkewSeries::one(3));
  }

  SUBCASE("phi(-vu) to degree 2 uses (vu)^2 = q v^2 u^2") {
    const unsigned N = 2;
    const auto v = SkewSeries::generator_v(N);
    const auto u = SkewSeries::generator_u(N);
    const auto arg = -skew_mul(v, u);
    const auto phi = phi_expand(arg, N);
    CHECK(phi.coeff(0, 0) == RatFuncQ::one());
    CHECK(phi.coeff(1, 1) == -RatFuncQ(IntPolyQ(1), qpent::exactq::qpochhammer_poly(1)));
    CHECK(phi.coeff(2, 2) ==
          RatFuncQ(IntPolyQ::monomial(BigInt(1), 1), qpent::exactq::qpochhammer_poly(2)));
  }

  SUBCASE("constant term is rejected") {
    CHECK_THROWS_AS(phi_expand(SkewSeries::one(3), 3), std::domain_error);
  }

  SUBCASE("truncation mismatch is rejected") {
    CHECK_THROWS_AS(phi_expand(SkewSeries::generator_u(3), 4), std::invalid_argument);
  }
}

TEST_CASE("pentagon sides match the exact coefficient identities") {
  const unsigned N = 6;
  const auto lhs = pentagon_lhs(N);
  const auto rhs = pentagon_rhs(N);
  for (unsigned n = 0; n <= N; ++n) {
    for (unsigned m = 0; n + m <= N; ++m) {
      CHECK(lhs.coeff(n, m) == qpent::exactq::coeff_identity_lhs(m, n));
      CHECK(rhs.coeff(n, m) == qpent::exactq::coeff_identity_rhs(m, n));
    }
  }
}

TEST_CASE("pentagon identity verification") {
  SUBCASE("degree 0 is trivially true") {
    const auto report = verify_pentagon(0);
    CHECK(report.pass);
    CHECK(!report.first_mismatch);
  }

  SUBCASE("coefficient at (1,1) is q/(1-q)^2 on both sides") {
    const unsigned N = 2;
    const RatFuncQ expect(IntPolyQ::monomial(BigInt(1), 1),
                          qpent::exactq::qpochhammer_poly(1) * qpent::exactq::qpochhammer_poly(1));
    CHECK(pentagon_lhs(N).coeff(1, 1) == expect);
    CHECK(pentagon_rhs(N).coeff(1, 1) == expect);
  }

  SUBCASE("holds through degree 8") {
    const auto report = verify_pentagon(8);
    CHECK(report.pass);
    CHECK(report.degree == 8);
  }

  SUBCASE("a deliberately damaged side is caught with a located mismatch") {
    // Damage phi(u)phi(v) by adding 1 * v u; the checker must find (1,1).
    auto lhs = pentagon_lhs(4);
    auto rhs = pentagon_rhs(4);
    lhs.add_term({1, 1}, RatFuncQ::one());
    CHECK(!(lhs == rhs));
  }
}
