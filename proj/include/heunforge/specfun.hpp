#pragma once

#include <vector>

#include "qseries.hpp"
#include "zpoly.hpp"

namespace heunforge {

// Nome q = e^{i pi tau}.  All fractional powers of q are taken through tau,
// q^s := exp(i pi tau s), so branches are consistent across the whole module.
// from_q picks the principal tau (Im tau > 0, -1 < Re tau <= 1); q = 0 is
// allowed and stands for the trigonometric limit Im tau -> +infinity.
struct Nome {
  Cx q;
  Cx tau;
  bool has_tau = false;

  static Nome from_q(const Cx& q);
  static Nome from_tau(const Cx& tau);
  Cx frac_pow(double s) const;
};

// Half-period shifts attached to the four couplings.
struct HalfPeriods {
  Cx tau;
  Cx omega(int v) const;
};

Cx theta(int nu, const Cx& x, const Nome& nm);
Cx big_theta_nu(int nu, const Cx& xi, const Nome& nm);
Cx big_theta(const Cx& z, const Cx& xi, const Nome& nm);
Cx euler_G(const Nome& nm);
Cx eta1_over_pi(const Nome& nm);
Cx wp(const Cx& x, const Nome& nm);
Cx wp_fourier(int nu, int mu, const Nome& nm);

// eta_1/pi = 1/12 - 2 sum_k sigma_1(k) q^{2k} as an exact truncated series.
template <class S>
QSeries<S> eta1_over_pi_series(int N) {
  QSeries<S> r(N);
  r.set(0, ScalarOps<S>::from_ratio(1, 12));
  for (int k = 1; 2 * k <= N; ++k) {
    long s1 = 0;
    for (long d = 1; d <= k; ++d)
      if (k % d == 0) s1 += d;
    r.set(2 * k, ScalarOps<S>::from_int(-2 * s1));
  }
  return r;
}

// (S_nu)_mu as a truncated q-series; geometric expansions of the |mu| forms
// |mu| q^{|mu|-mu}/(1-q^{2|mu|}) (nu=0), with the sign (-1)^mu for nu=1, and
// |mu| q^{|mu|}/(1-q^{2|mu|}) for nu=3 (times (-1)^mu for nu=2).
template <class S>
QSeries<S> wp_fourier_series(int nu, int mu, int N) {
  if (mu == 0) throw PreconditionError("Fourier index mu must be non-zero");
  if (nu < 0 || nu > 3) throw PreconditionError("half-period index out of range");
  const int a = mu > 0 ? mu : -mu;
  const bool odd = (a % 2) != 0;
  long sign = (nu == 1 || nu == 2) && odd ? -1 : 1;
  QSeries<S> r(N);
  S w = ScalarOps<S>::from_int(sign * a);
  if (nu <= 1) {
    const int j0 = mu > 0 ? 0 : 1;
    for (int j = j0; 2 * a * j <= N; ++j) r.set(2 * a * j, w);
  } else {
    for (int j = 0; a * (2 * j + 1) <= N; ++j) r.set(a * (2 * j + 1), w);
  }
  return r;
}

// P_n^{(alpha,beta)}(z) by its defining hypergeometric sum.
template <class S>
ZPoly<S> jacobi_poly(int n, const S& alpha, const S& beta) {
  if (n < 0) throw PreconditionError("polynomial degree must be non-negative");
  const S one = ScalarOps<S>::from_int(1);
  const S half = ScalarOps<S>::from_ratio(1, 2);
  ZPoly<S> half_zm1(std::vector<S>{S{} - half, half});  // (z-1)/2
  ZPoly<S> pw = ZPoly<S>::one();
  ZPoly<S> acc;
  S lfact = one;
  for (int l = 0; l <= n; ++l) {
    if (l > 0) {
      pw = pw * half_zm1;
      lfact = lfact * ScalarOps<S>::from_int(l);
    }
    S num = pochhammer(alpha + beta + ScalarOps<S>::from_int(n + 1), l) *
            pochhammer(alpha + ScalarOps<S>::from_int(l + 1), n - l);
    S den = lfact * pochhammer(one, n - l);
    acc = acc + pw.scaled(num / den);
  }
  return acc;
}

// C_n^{(lambda)} through the Jacobi connection (2 lambda)_n/(lambda+1/2)_n.
template <class S>
ZPoly<S> gegenbauer(int n, const S& lambda) {
  const S half = ScalarOps<S>::from_ratio(1, 2);
  S num = pochhammer(lambda + lambda, n);
  S den = pochhammer(lambda + half, n);
  return jacobi_poly(n, lambda - half, lambda - half).scaled(num / den);
}

// C_0..C_nmax via the three-term recurrence n C_n = 2z(n+lambda-1) C_{n-1}
// - (n+2 lambda-2) C_{n-2}, which stays polynomial in lambda and therefore
// works at the half-integer values where the Jacobi connection degenerates.
template <class S>
std::vector<ZPoly<S>> gegenbauer_seq(int nmax, const S& lambda) {
  if (nmax < 0) throw PreconditionError("polynomial degree must be non-negative");
  std::vector<ZPoly<S>> c;
  c.reserve(static_cast<std::size_t>(nmax) + 1);
  c.push_back(ZPoly<S>::one());
  if (nmax == 0) return c;
  c.push_back(ZPoly<S>::monomial(lambda + lambda, 1));
  for (int n = 2; n <= nmax; ++n) {
    S inv_n = ScalarOps<S>::from_int(1) / ScalarOps<S>::from_int(n);
    ZPoly<S> t1 = (ZPoly<S>::monomial(ScalarOps<S>::from_int(2), 1) * c[n - 1])
                      .scaled((ScalarOps<S>::from_int(n - 1) + lambda) * inv_n);
    ZPoly<S> t2 = c[n - 2].scaled((ScalarOps<S>::from_int(n - 2) + lambda + lambda) * inv_n);
    c.push_back(t1 - t2);
  }
  return c;
}

// Rescaling between the omega_1 = pi convention used internally and an
// arbitrary half-period: x maps to pi x/omega_1, psi picks up
// (pi/omega_1)^{1/2}, and energies scale by (pi/omega_1)^2.
struct ScaleMap {
  Cx omega1;
  explicit ScaleMap(const Cx& w1);
  Cx x_to_standard(const Cx& x) const;
  Cx psi_factor() const;
  Cx energy_factor() const;
};

}  // namespace heunforge
