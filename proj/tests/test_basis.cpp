#include "doctest.h"

#include <complex>
#include <cstdint>

#include "heunforge/basis.hpp"

using namespace heunforge;

namespace {

using R = Rational;
using C = std::complex<double>;

struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  }
  long small() { return static_cast<long>(next() % 9) - 4; }
};

C eval_row(const QSeries<ZPoly<Cx>>& row, const C& z, const C& q) {
  C acc = 0.0, qp = 1.0;
  for (int l = 0; l <= row.order(); ++l) {
    acc += row.coeff(l).eval(Cx(z)).cplx() * qp;
    qp *= q;
  }
  return acc;
}

}  // namespace

TEST_CASE("basis table: structure of the expansion") {
  Params<R> p(R(1, 3), R(2, 5), R(-1, 2), R(3, 7), R(1, 4));
  BasisTable<R> t = f_table(p, 4, -4, 6);

  CHECK(t.at(0).coeff(0) == ZPoly<R>::one());

  ZPoly<R> f10 = t.at(1).coeff(0);
  CHECK(f10.degree() == 1);
  CHECK(f10.coeff(1) == R(2) * p.lambda());
  CHECK(f10.coeff(0) == p.gt(1) - p.gt(0));

  for (int m = -4; m <= 6; ++m) {
    for (int l = 0; l <= 4; ++l) {
      if (m + l < 0) {
        CHECK(is_zero(t.at(m).coeff(l)));
      } else {
        // sharp degree: -lambda is not a non-negative integer here
        CHECK(t.at(m).coeff(l).degree() == m + l);
      }
    }
  }

  // leading coefficient of the q^0 slice
  for (int m = 0; m <= 6; ++m) {
    R lead = binom_general(R() - p.lambda(), m);
    for (int j = 0; j < m; ++j) lead = lead * R(-2);
    CHECK(t.at(m).coeff(0).coeff(m) == lead);
  }

  CHECK_THROWS_AS(t.at(7), PreconditionError);
  CHECK_THROWS_AS(f_table(p, 3, 2, 1), PreconditionError);
}

TEST_CASE("closed form of the q^0 slice matches the expansion") {
  CHECK(f0_closed(0, Params<R>(R(1), R(2), R(3), R(4), R(1, 2))) == ZPoly<R>::one());

  Params<R> fixed(R(1, 3), R(2, 5), R(-1, 2), R(3, 7), R(1, 4));
  CHECK(f0_closed(1, fixed).coeff(1) == R(2) * fixed.lambda());
  CHECK(f0_closed(1, fixed).coeff(0) == fixed.gt(1) - fixed.gt(0));

  BasisTable<R> t = f_table(fixed, 4, -4, 6);
  for (int m = 0; m <= 6; ++m) CHECK(t.at(m).coeff(0) == f0_closed(m, fixed));

  // random rational parameter sets against a q = 0 table
  Lcg rng(0x5eedba51ULL);
  for (int trial = 0; trial < 6; ++trial) {
    Params<R> p(R(rng.small(), 1 + rng.next() % 3), R(rng.small(), 1 + rng.next() % 3),
                R(rng.small(), 1 + rng.next() % 3), R(rng.small(), 1 + rng.next() % 3),
                R(rng.small(), 1 + rng.next() % 3));
    BasisTable<R> t0 = f_table(p, 0, 0, 8);
    for (int m = 0; m <= 8; ++m) CHECK(t0.at(m).coeff(0) == f0_closed(m, p));
  }

  CHECK_THROWS_AS(f0_closed(-1, fixed), PreconditionError);
}

TEST_CASE("degenerate exponent: polynomial degrees saturate") {
  // lambda = -2, so the whole q^0 family has degree <= 2
  Params<R> p(R(-1, 2), R(-1, 2), R(-1, 2), R(-1, 2), R(2));
  CHECK(p.lambda() == R(-2));
  for (int m = 0; m <= 10; ++m) CHECK(f0_closed(m, p).degree() <= 2);
  BasisTable<R> t = f_table(p, 2, 0, 6);
  for (int m = 0; m <= 6; ++m) CHECK(t.at(m).coeff(0).degree() <= 2);
}

TEST_CASE("truncation consistency across table orders") {
  Params<R> p(R(2, 3), R(-1, 5), R(1, 2), R(1, 7), R(-1, 3));
  BasisTable<R> t5 = f_table(p, 5, -3, 5);
  BasisTable<R> t3 = f_table(p, 3, -3, 5);
  for (int m = -3; m <= 5; ++m) CHECK(t5.at(m).truncated(3) == t3.at(m));
}

TEST_CASE("contour quadrature cross-checks") {
  SUBCASE("negative indices vanish at q = 0") {
    Params<Cx> p(Cx(0.3), Cx(-0.2), Cx(0.4), Cx(0.1), Cx(0.25));
    Nome zero = Nome::from_q(Cx(0.0));
    CHECK(f_contour(-1, Cx(0.3), zero, p).abs() < 1e-10);
    CHECK(f_contour(-3, Cx(0.3), zero, p).abs() < 1e-10);
  }

  SUBCASE("all dual exponents zero reduces to Gegenbauer") {
    Params<Cx> p(Cx(0.6), Cx(0.6), Cx(0.6), Cx(0.6), Cx(1.2));
    CHECK((p.gt(0)).abs() < 1e-15);
    Nome zero = Nome::from_q(Cx(0.0));
    auto seq = gegenbauer_seq(4, Cx(0.6));
    for (int n = 0; n <= 4; ++n) {
      Cx quad = f_contour(n, Cx(0.3), zero, p);
      Cx exact = seq[static_cast<std::size_t>(n)].eval(Cx(0.3));
      CHECK((quad - exact).abs() < 1e-8);
    }
  }

  SUBCASE("quadrature agrees with the series table") {
    // integer dual exponents (2, 1, 0, 1), lambda = 1/2
    Params<Cx> p(Cx(-1.5), Cx(-0.5), Cx(0.5), Cx(-0.5), Cx(-3.0));
    CHECK((p.lambda() - Cx(0.5)).abs() < 1e-15);
    Nome nm = Nome::from_q(Cx(0.15));
    const int N = 12;
    BasisTable<Cx> t = f_table(p, N, -2, 6);
    for (int m = -2; m <= 6; ++m) {
      Cx quad = f_contour(m, Cx(0.3), nm, p);
      C series = eval_row(t.at(m), C(0.3, 0.0), C(0.15, 0.0));
      CHECK(std::abs(quad.cplx() - series) < 1e-8);
    }
  }

  SUBCASE("near-zero of the integrand on the contour is refused") {
    Params<Cx> p(Cx(0.3), Cx(-0.2), Cx(0.4), Cx(0.1), Cx(0.25));
    Nome zero = Nome::from_q(Cx(0.0));
    // 1 - 2 z xi + xi^2 vanishes at xi = 1/2 when z = 1.25
    CHECK_THROWS_AS(f_contour(0, Cx(1.25), zero, p, 512, 0.5), PreconditionError);
  }
}
