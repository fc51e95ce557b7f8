#pragma once

#include <vector>

#include "laurent.hpp"
#include "params.hpp"
#include "qseries.hpp"
#include "specfun.hpp"
#include "zpoly.hpp"

namespace heunforge {

// Basis functions f_m(z) on a window of Fourier indices, each a truncated
// q-series of z-polynomials.
template <class S>
struct BasisTable {
  Params<S> params;
  int order = 0;
  int m_lo = 0, m_hi = -1;
  std::vector<QSeries<ZPoly<S>>> rows;

  bool contains(int m) const { return m >= m_lo && m <= m_hi; }
  const QSeries<ZPoly<S>>& at(int m) const {
    if (!contains(m)) throw PreconditionError("basis index outside computed window");
    return rows[static_cast<std::size_t>(m - m_lo)];
  }
};

// Expand prod_nu Theta_{nu+1}(xi)^{gt_nu} / Theta(z, xi)^lambda.
//
// The q^0 part A(xi) = (1-xi)^{gt_0} (1+xi)^{gt_1} (1-2 z xi + xi^2)^{-lambda}
// is a one-sided power series in xi (infinitely many terms, all needed), so it
// is expanded separately up to the highest xi-degree that can reach the
// requested window.  Every q-carrying factor moves xi-degree by at most one
// slot per q-order, so their product B lives on the finite Laurent window
// [m_lo - 2N, m_hi + 2N] with clipping provably invisible to the extraction;
// the risky-clip counter enforces that claim at run time.  Finally
// f_m = sum_j A_j B_{m-j}.
template <class S>
BasisTable<S> f_table(const Params<S>& p, int N, int m_lo, int m_hi) {
  if (m_hi < m_lo) throw PreconditionError("empty basis window");
  if (N < 0) throw PreconditionError("series truncation order must be >= 0");
  using P = ZPoly<S>;
  using PS = QSeries<P>;
  const S one = ScalarOps<S>::from_int(1);
  const S lam = p.lambda();

  // One-sided xi-expansion of the q = 0 part.
  const int J = (m_hi - m_lo) + 2 * N + 2;
  PS a1(J), a2(J), gf(J);
  a1.set(0, P::one());
  a1.set(1, P(S() - one));
  a2.set(0, P::one());
  a2.set(1, P(one));
  gf.set(0, P::one());
  gf.set(1, P::monomial(ScalarOps<S>::from_int(-2), 1));
  gf.set(2, P::one());
  PS A = unit_pow(a1, p.gt(0)) * unit_pow(a2, p.gt(1)) * unit_pow(gf, S() - lam);

  // Windowed product of the q-carrying factors.
  const int w_lo = m_lo - 2 * N, w_hi = m_hi + 2 * N;
  LaurentXi<S> B = LaurentXi<S>::one(w_lo, w_hi, N);
  auto binom_factor = [&](int k, long sign, int dir, const S& expo) {
    // (1 + sign q^k xi^dir)^expo
    LaurentXi<S> f = LaurentXi<S>::one(w_lo, w_hi, N);
    f.slot(dir).set(k, P(ScalarOps<S>::from_int(sign)));
    B = B.mul(unit_pow(f, expo));
  };
  for (int k = 1; k <= N; ++k) {
    // (gt_{k,+}, gt_{k,-}) = (gt_0, gt_1) for even k, (gt_3, gt_2) for odd k
    const S& gplus = k % 2 == 0 ? p.gt(0) : p.gt(3);
    const S& gminus = k % 2 == 0 ? p.gt(1) : p.gt(2);
    for (int dir : {+1, -1}) {
      binom_factor(k, -1, dir, gplus);
      binom_factor(k, +1, dir, gminus);
    }
  }
  for (int k = 1; 2 * k <= N; ++k) {
    for (int dir : {+1, -1}) {
      // (1 - 2 q^{2k} z xi^dir + q^{4k} xi^{2 dir})^{-lambda}
      LaurentXi<S> f = LaurentXi<S>::one(w_lo, w_hi, N);
      f.slot(dir).set(2 * k, P::monomial(ScalarOps<S>::from_int(-2), 1));
      if (4 * k <= N) f.slot(2 * dir).set(4 * k, P::one());
      B = B.mul(unit_pow(f, S() - lam));
    }
  }
  if (B.risky_clips != 0)
    throw WindowError("basis window too small for the requested orders");

  BasisTable<S> t;
  t.params = p;
  t.order = N;
  t.m_lo = m_lo;
  t.m_hi = m_hi;
  t.rows.assign(static_cast<std::size_t>(m_hi - m_lo + 1), PS(N));
  for (int m = m_lo; m <= m_hi; ++m) {
    PS& row = t.rows[static_cast<std::size_t>(m - m_lo)];
    for (int w = w_lo; w <= w_hi; ++w) {
      const PS& bw = B.slot(w);
      if (bw.zero()) continue;
      const int j = m - w;
      if (j < 0 || j > J) continue;
      const P& aj = A.coeff(j);
      if (is_zero(aj)) continue;
      for (int l = bw.valuation(); l <= N; ++l) {
        if (is_zero(bw.coeff(l))) continue;
        row.add_to(l, aj * bw.coeff(l));
      }
    }
  }
  return t;
}

// Closed form of the q = 0 slice: finite triple sum over (nu_1, nu_2, m') with
// nu_0 = n + m' - nu_1 - 2 nu_2 >= 0 and m' <= nu_2,
//   sum binom(gt_0, nu_0) binom(gt_1, nu_1) binom(-lambda, nu_2)
//       binom(nu_2, m') (-1)^{nu_0} (-2z)^{m'}.
template <class S>
ZPoly<S> f0_closed(int n, const Params<S>& p) {
  if (n < 0) throw PreconditionError("closed form defined for m >= 0");
  const S gt0 = p.gt(0), gt1 = p.gt(1);
  const S mlam = S() - p.lambda();
  std::vector<S> coeff(static_cast<std::size_t>(n) + 1);
  for (int nu2 = 0; nu2 <= n; ++nu2) {
    for (int m = 0; m <= nu2; ++m) {
      for (int nu1 = 0; nu1 + 2 * nu2 <= n + m; ++nu1) {
        const int nu0 = n + m - nu1 - 2 * nu2;
        S term = binom_general(gt0, nu0) * binom_general(gt1, nu1) *
                 binom_general(mlam, nu2) *
                 binom_general(ScalarOps<S>::from_int(nu2), m);
        long sgn = (nu0 % 2 != 0) ? -1 : 1;  // (-1)^{nu_0}
        if (m % 2 != 0) sgn = -sgn;          // sign of (-2)^m
        coeff[static_cast<std::size_t>(m)] += term * ScalarOps<S>::from_int(sgn * (1L << m));
      }
    }
  }
  return ZPoly<S>(std::move(coeff));
}

// Trapezoid quadrature of the generating function around |xi| = R; the
// authoritative values come from f_table, this is a numeric cross-check.
Cx f_contour(int m, const Cx& z0, const Nome& q0, const Params<Cx>& p, int K = 512,
             double R = 0.0);

}  // namespace heunforge
