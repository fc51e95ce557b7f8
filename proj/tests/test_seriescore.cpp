#include "doctest.h"

#include <cstdint>
#include <vector>

#include "heunforge/laurent.hpp"
#include "heunforge/qseries.hpp"
#include "heunforge/scalar.hpp"
#include "heunforge/zpoly.hpp"

using namespace heunforge;

namespace {

using RS = QSeries<Rational>;
using CS = QSeries<Cx>;

RS rs(std::vector<Rational> coeffs) {
  RS s(static_cast<int>(coeffs.size()) - 1);
  for (std::size_t l = 0; l < coeffs.size(); ++l) s.set(static_cast<int>(l), coeffs[l]);
  return s;
}

// Small deterministic LCG so the "random" cases are frozen.
struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  long small() { return static_cast<long>(next() % 9) - 4; }
  double unit() { return static_cast<double>(next() % 100000) / 100000.0 - 0.5; }
};

}  // namespace

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("3/4").str() == "3/4");
  CHECK(Rational::parse(" -6/8 ").str() == "-3/4");
  CHECK(Rational::parse("0.25").str() == "1/4");
  CHECK(Rational::parse("-2.5e-3").str() == "-1/400");
  CHECK(Rational::parse("7").str() == "7/1");
  CHECK(Rational::parse("1e3") == Rational(1000));

  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 3) / Rational(1, 9) == Rational(3));
  CHECK(Rational(-4, -6) == Rational(2, 3));
  CHECK(Rational(5).integral());
  CHECK(!Rational(5, 2).integral());
  CHECK(Rational(-7, 2).sign() == -1);

  CHECK_THROWS_AS(Rational(1, 0), ZeroDenominator);
  CHECK_THROWS_AS(Rational(1) / Rational(0), ZeroDenominator);
  CHECK_THROWS_AS(Rational::parse("1/0"), ZeroDenominator);
  CHECK_THROWS_AS(Rational::parse("abc"), PreconditionError);
  CHECK_THROWS_AS(Rational::parse(""), PreconditionError);
}

TEST_CASE("pochhammer and generalized binomial") {
  CHECK(pochhammer(Rational(3), 2) == Rational(12));
  CHECK(pochhammer(Rational(7, 3), 0) == Rational(1));
  // negative index: (x)_{-k} = 1/(x-k)_k
  CHECK(pochhammer(Rational(5), -2) == Rational(1, 12));
  CHECK(pochhammer(Rational(5), -2) * pochhammer(Rational(3), 2) == Rational(1));
  // splitting identity (x)_{n+m} = (x)_n (x+n)_m, across signs
  Rational x(3, 2);
  CHECK(pochhammer(x, 5) == pochhammer(x, 3) * pochhammer(x + Rational(3), 2));
  CHECK(pochhammer(x, -3) == pochhammer(x, -1) * pochhammer(x - Rational(1), -2));
  CHECK_THROWS_AS(pochhammer(Rational(2), -3), ZeroDenominator);

  CHECK(binom_general(Rational(5), 2) == Rational(10));
  CHECK(binom_general(Rational(-3), 2) == Rational(6));
  CHECK(binom_general(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binom_general(Rational(-7, 5), 0) == Rational(1));
}

TEST_CASE("truncated series arithmetic") {
  RS a = rs({1, 1, 1});
  RS b = rs({1, 2, 3});
  CHECK(a * b == rs({1, 3, 6}));

  RS a4 = rs({1, 1, 1, 0, 0});
  RS b4 = rs({1, 2, 3, 0, 0});
  CHECK(a4 * b4 == rs({1, 3, 6, 5, 3}));

  CHECK_THROWS_AS(a + a4, PreconditionError);

  CHECK(rs({0, 0, 2, 0}).valuation() == 2);
  CHECK(RS(3).valuation() == 4);
  CHECK(RS(3).zero());

  // shift clips at both ends
  CHECK(rs({1, 1, 0, 0}).shifted(2) == rs({0, 0, 1, 1}));
  CHECK(rs({0, 0, 1, 0}).shifted(-2) == rs({1, 0, 0, 0}));

  CHECK(qs_eval(rs({1, 2, 3}), Rational(1, 2)) == Rational(11, 4));

  // q d/dq
  CHECK(rs({1, 2, 0, 5}).log_scale_derivative() == rs({0, 2, 0, 15}));
}

TEST_CASE("series inversion") {
  RS one5 = RS::one(4);
  RS f = rs({1, -1, 0, 0, 0});  // 1 - q
  CHECK(qs_inv(f) == rs({1, 1, 1, 1, 1}));
  RS g = rs({1, 0, -1, 0, 0});  // 1 - q^2
  CHECK(qs_inv(g) == rs({1, 0, 1, 0, 1}));
  CHECK(qs_inv(f) * f == one5);

  CHECK_THROWS_AS(qs_inv(rs({0, 1, 0})), ZeroDenominator);

  // random unit series round-trip, exact
  Lcg rng(0x5eed0001u);
  for (int trial = 0; trial < 100; ++trial) {
    RS h(6);
    long c0 = rng.small();
    if (c0 == 0) c0 = 1;
    h.set(0, Rational(c0));
    for (int l = 1; l <= 6; ++l) h.set(l, Rational(rng.small(), 1 + (rng.next() % 5)));
    CHECK(qs_inv(h) * h == RS::one(6));
  }
  // and in the complex mode
  for (int trial = 0; trial < 100; ++trial) {
    CS h(6);
    h.set(0, Cx(1.0 + rng.unit(), rng.unit()));
    for (int l = 1; l <= 6; ++l) h.set(l, Cx(rng.unit(), rng.unit()));
    CS round = qs_inv(h) * h;
    CHECK((round.coeff(0) - Cx(1.0)).abs() < 1e-12);
    for (int l = 1; l <= 6; ++l) CHECK(round.coeff(l).abs() < 1e-12);
  }
}

TEST_CASE("resolvent series") {
  // 1/(2 - (q + q^2)) expanded by hand
  RS e = rs({0, 1, 1, 0});
  RS r = resolvent(Rational(2), e);
  CHECK(r == rs({Rational(1, 2), Rational(1, 4), Rational(3, 8), Rational(5, 16)}));
  // defining property
  RS b_minus_e = rs({2, -1, -1, 0});
  CHECK(r * b_minus_e == RS::one(3));

  CHECK_THROWS_AS(resolvent(Rational(0), e), ZeroDenominator);
  CHECK_THROWS_AS(resolvent(Rational(2), rs({1, 1, 0, 0})), PreconditionError);
}

TEST_CASE("fractional powers of unit series") {
  RS f = rs({1, -1, 0});  // 1 - q
  CHECK(unit_pow(f, Rational(1, 2)) == rs({1, Rational(-1, 2), Rational(-1, 8)}));

  // exponent additivity and integer-power consistency
  RS g = rs({1, 1, 0, 2, 0, 0, 0});
  RS ga = unit_pow(g, Rational(1, 3));
  RS gb = unit_pow(g, Rational(-5, 2));
  CHECK(ga * gb == unit_pow(g, Rational(1, 3) + Rational(-5, 2)));
  CHECK(unit_pow(g, Rational(3)) == g * g * g);
  CHECK(unit_pow(g, Rational(0)) == RS::one(6));

  CHECK_THROWS_AS(unit_pow(rs({2, 1, 0}), Rational(1, 2)), PreconditionError);
}

TEST_CASE("polynomial ring basics") {
  using P = ZPoly<Rational>;
  P zm1(std::vector<Rational>{-1, 1});
  P zp1(std::vector<Rational>{1, 1});
  CHECK(zm1 * zp1 == P(std::vector<Rational>{-1, 0, 1}));
  CHECK((zm1 * zp1).degree() == 2);
  CHECK(P().degree() == -1);
  CHECK((zm1 - zm1).degree() == -1);
  CHECK(P::monomial(Rational(3), 4).coeff(4) == Rational(3));
  CHECK(P::monomial(Rational(3), 4).coeff(2) == Rational(0));
  CHECK(P(std::vector<Rational>{3, 0, 2}).eval(Rational(2)) == Rational(11));
  CHECK(zm1.scaled(Rational(1, 2)).leading() == Rational(1, 2));

  Lcg rng(0x5eed0002u);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> u(1 + rng.next() % 5), v(1 + rng.next() % 5);
    for (auto& c : u) c = Rational(rng.small());
    for (auto& c : v) c = Rational(rng.small());
    P pu(u), pv(v);
    if (pu.degree() < 0 || pv.degree() < 0) continue;
    CHECK((pu * pv).degree() == pu.degree() + pv.degree());
    CHECK((pu * pv).eval(Rational(3)) == pu.eval(Rational(3)) * pv.eval(Rational(3)));
  }
}

TEST_CASE("series over the polynomial ring") {
  using P = ZPoly<Rational>;
  using PS = QSeries<P>;
  PS f(2), g(2);
  f.set(0, P::one());
  f.set(1, P::monomial(Rational(1), 1));  // 1 + z q
  g.set(0, P::one());
  g.set(1, P::monomial(Rational(-1), 1));  // 1 - z q
  PS prod = f * g;
  CHECK(prod.coeff(0) == P::one());
  CHECK(is_zero(prod.coeff(1)));
  CHECK(prod.coeff(2) == P::monomial(Rational(-1), 2));
}

TEST_CASE("windowed Laurent products") {
  using L = LaurentXi<Rational>;
  auto hop = [](int lo, int hi, int order) {
    // 1 + q(xi + 1/xi)
    L f(lo, hi, order);
    f.slot(0) = L::Coeff::one(order);
    ZPoly<Rational> one_c = ZPoly<Rational>::one();
    f.slot(1).set(1, one_c);
    f.slot(-1).set(1, one_c);
    return f;
  };

  SUBCASE("product inside a wide window is exact and clean") {
    L g = hop(-2, 2, 3);
    L gg = g.mul(g);
    CHECK(gg.risky_clips == 0);
    CHECK(gg.slot(0).coeff(0) == ZPoly<Rational>::one());
    CHECK(gg.slot(0).coeff(2) == ZPoly<Rational>(Rational(2)));
    CHECK(gg.slot(1).coeff(1) == ZPoly<Rational>(Rational(2)));
    CHECK(gg.slot(2).coeff(2) == ZPoly<Rational>::one());
    CHECK(gg.slot(-2).coeff(2) == ZPoly<Rational>::one());
  }

  SUBCASE("clips with remaining budget are flagged") {
    L g = hop(-1, 1, 3);
    L gg = g.mul(g);
    // xi^{+-2} at q^2 dropped; one more q-order could bring them back
    CHECK(gg.risky_clips == 2);
  }

  SUBCASE("clips beyond the q-budget are provably harmless") {
    L g = hop(-1, 1, 2);
    L gg = g.mul(g);
    CHECK(gg.risky_clips == 0);
  }

  SUBCASE("inverse via unit power on an adequate window") {
    L f = hop(-4, 4, 4);
    L inv = unit_pow(f, Rational(-1));
    CHECK(inv.risky_clips == 0);
    L round = inv.mul(f);
    CHECK(round.slot(0) == L::Coeff::one(4));
    for (int m = -4; m <= 4; ++m)
      if (m != 0) CHECK(round.slot(m).zero());
  }

  SUBCASE("unit power rejects non-unit constant terms") {
    L f = hop(-2, 2, 2);
    f.slot(0).set(0, ZPoly<Rational>(Rational(2)));
    CHECK_THROWS_AS(unit_pow(f, Rational(1, 2)), PreconditionError);
    L h = hop(-2, 2, 2);
    h.slot(1).set(0, ZPoly<Rational>::one());
    CHECK_THROWS_AS(unit_pow(h, Rational(1, 2)), PreconditionError);
  }
}

TEST_CASE("complex scalar guard rails") {
  Cx tiny(1e-15, 0.0);
  CHECK_THROWS_AS(Cx(1.0) / tiny, ZeroDenominator);
  CHECK(ScalarOps<Cx>::eq(Cx(1.0), Cx(1.0 + 1e-12)));
  CHECK(!ScalarOps<Cx>::eq(Cx(1.0), Cx(1.001)));
  CHECK(ScalarOps<Cx>::neg_is_nonneg_int(Cx(-3.0)));
  CHECK(ScalarOps<Cx>::neg_is_nonneg_int(Cx(0.0)));
  CHECK(!ScalarOps<Cx>::neg_is_nonneg_int(Cx(2.0)));
  CHECK(!ScalarOps<Cx>::neg_is_nonneg_int(Cx(-2.5)));
  CHECK(ScalarOps<Rational>::neg_is_nonneg_int(Rational(-3)));
  CHECK(!ScalarOps<Rational>::neg_is_nonneg_int(Rational(1, 2)));
}
