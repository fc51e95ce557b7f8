#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "heunforge/basis.hpp"
#include "heunforge/engines.hpp"
#include "heunforge/specfun.hpp"

namespace heunforge {

// Which computation produces the coefficient table behind a solution.  The
// short external names (used by the CLI and in serialized output) are:
//   alg1   order-by-order recursion, pinned normalization column
//   alg2   order-by-order recursion, fixed eigenvalue (kappa != 0)
//   thm1   fixed-point form of the pinned recursion (kappa = 0)
//   thm2   explicit path enumeration of the fixed-eigenvalue table
//   bridge alg2 table mapped to the pinned gauge by series division
enum class Mode { recursion_i, recursion_ii, fixed_point, path_sum, bridged };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);

namespace detail {

inline double pi() { return 3.14159265358979323846; }

// Principal-branch complex power with explicit zero-base semantics: 0^0 = 1,
// 0^(positive real) = 0, anything else with a zero base is an error.
inline Cx cpow(const Cx& base, const Cx& expo) {
  if (base.re() == 0.0 && base.im() == 0.0) {
    if (is_zero(expo)) return Cx(1.0);
    if (expo.im() == 0.0 && expo.re() > 0.0) return Cx();
    throw PreconditionError("zero base raised to a non-positive power");
  }
  return Cx(std::pow(base.cplx(), expo.cplx()));
}

template <class S>
Cx zpoly_eval_cx(const ZPoly<S>& p, const Cx& z) {
  Cx acc;
  for (int k = p.degree(); k >= 0; --k)
    acc = acc * z + Cx(ScalarOps<S>::to_complex(p.coeff(k)));
  return acc;
}

inline Cx eval_qseries_poly(const QSeries<ZPoly<Cx>>& s, const Cx& z, const Cx& q) {
  Cx acc, qp(1.0);
  for (int l = 0; l <= s.order(); ++l) {
    acc += qp * s.coeff(l).eval(z);
    qp = qp * q;
  }
  return acc;
}

}  // namespace detail

// A truncated series solution: polynomial coefficients of the z-expansion,
// the eigenvalue correction series, and the data needed to evaluate the full
// wave function numerically.
template <class S>
struct SeriesSolution {
  int n = 0;
  Params<S> params;
  int order = 0;
  Mode mode = Mode::recursion_i;
  Gauge gauge = Gauge::pinned;
  S norm{};                   // overall normalization constant
  std::vector<ZPoly<S>> poly; // slice ell has degree <= n + ell
  QSeries<S> eigen;
  bool hypothesis_ok = true;
};

// (n + g0 + g1)_n / (4^n (lambda)_n); throws ZeroDenominator when a negative
// Pochhammer index hits a zero factor (the constant is undefined there).
template <class S>
S solution_norm(int n, const Params<S>& p) {
  const S one = ScalarOps<S>::from_int(1);
  S num = pochhammer(ScalarOps<S>::from_int(n) + p.g[0] + p.g[1], n);
  S den = pochhammer(p.lambda(), n);
  S pw = one;
  for (int j = 0; j < (n >= 0 ? n : -n); ++j) pw *= ScalarOps<S>::from_int(4);
  if (n < 0) pw = one / pw;
  return num / (pw * den);
}

template <class S>
SeriesSolution<S> assemble(int n, const Params<S>& p, int N, Mode mode) {
  EngineResult<S> er;
  switch (mode) {
    case Mode::recursion_i: er = alg1(n, p, N); break;
    case Mode::recursion_ii: er = alg2(n, p, N); break;
    case Mode::fixed_point: er = thm1_eigen(n, p, N); break;
    case Mode::path_sum: er = thm2_table(n, p, N); break;
    case Mode::bridged: er = bridge(alg2(n, p, N).table, p); break;
  }

  SeriesSolution<S> sol;
  sol.n = n;
  sol.params = p;
  sol.order = N;
  sol.mode = mode;
  sol.gauge = er.table.gauge;
  sol.eigen = er.eigen;
  sol.hypothesis_ok = er.hypothesis_ok;
  sol.norm = solution_norm(n, p);
  sol.poly.assign(static_cast<std::size_t>(N) + 1, ZPoly<S>());
  if (n + N < -N) return sol;  // every slice is the zero polynomial

  BasisTable<S> ft = f_table(p, N, -N, n + N);
  for (int ell = 0; ell <= N; ++ell) {
    ZPoly<S> acc;
    for (int lp = 0; lp <= ell; ++lp) {
      for (int m = -lp; m <= n + ell - lp; ++m) {
        S a = er.table.get(ell - lp, m);
        if (is_zero(a)) continue;
        acc = acc + ft.at(m).coeff(lp).scaled(a);
      }
    }
    sol.poly[static_cast<std::size_t>(ell)] = acc.scaled(sol.norm);
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Numeric evaluation.  All of these convert coefficients to complex doubles,
// so they work for both scalar modes.

// Full generalized eigenvalue at a numeric nome: the kappa^2 and coupling
// blocks built from eta_1/pi plus the truncated correction series.
template <class S>
Cx total_E(const SeriesSolution<S>& sol, const Nome& nm) {
  if (std::abs(nm.q.cplx()) >= 1.0) throw PreconditionError("nome must satisfy |q| < 1");
  const Cx e1p = eta1_over_pi(nm);
  const Cx kap(ScalarOps<S>::to_complex(sol.params.kappa));
  Cx acc = kap * kap * (Cx(1.0 / 12.0) - e1p);
  for (int v = 0; v < 4; ++v) {
    const Cx g(ScalarOps<S>::to_complex(sol.params.g[v]));
    acc -= g * (g - Cx(1.0)) * e1p;
  }
  Cx qp(1.0);
  for (int l = 0; l <= sol.order; ++l) {
    acc += Cx(ScalarOps<S>::to_complex(sol.eigen.coeff(l))) * qp;
    qp = qp * nm.q;
  }
  return acc;
}

template <class S>
Cx eval_P(const SeriesSolution<S>& sol, const Cx& z, const Nome& nm) {
  Cx acc, qp(1.0);
  for (int l = 0; l <= sol.order; ++l) {
    acc += qp * detail::zpoly_eval_cx(sol.poly[static_cast<std::size_t>(l)], z);
    qp = qp * nm.q;
  }
  return acc;
}

// Trigonometric limit q = 0: prefactor sin^{g0} cos^{g1} times the leading
// polynomial slice.
template <class S>
Cx psi_trig(const SeriesSolution<S>& sol, const Cx& x) {
  const std::complex<double> half = 0.5 * x.cplx();
  const Cx g0(ScalarOps<S>::to_complex(sol.params.g[0]));
  const Cx g1(ScalarOps<S>::to_complex(sol.params.g[1]));
  Cx val = detail::cpow(Cx(std::sin(half)), g0) * detail::cpow(Cx(std::cos(half)), g1);
  return val * detail::zpoly_eval_cx(sol.poly[0], Cx(std::cos(x.cplx())));
}

template <class S>
Cx eval_psi(const SeriesSolution<S>& sol, const Cx& x, const Nome& nm) {
  if (is_zero(nm.q)) return psi_trig(sol, x);
  const Cx half = Cx(0.5) * x;
  const Cx g01(ScalarOps<S>::to_complex(sol.params.g[0] + sol.params.g[1]));
  Cx prod = detail::cpow(Cx(2.0) * nm.frac_pow(0.25), -g01);
  for (int v = 0; v < 4; ++v)
    prod = prod * detail::cpow(theta(v + 1, half, nm), Cx(ScalarOps<S>::to_complex(sol.params.g[v])));
  return prod * eval_P(sol, Cx(std::cos(x.cplx())), nm);
}

// Residual of the defining equation at q = 0, where the scale derivative
// drops out: -psi'' + V_trig psi - E psi with the two-well trigonometric
// potential (the constant -sum g(g-1)/12 keeps the elliptic convention).
template <class S>
Cx residual_trig(const SeriesSolution<S>& sol, const Cx& x, double h) {
  auto f = [&](const Cx& xx) { return psi_trig(sol, xx); };
  const Cx psi0 = f(x);
  const Cx d2 = (-f(x + Cx(2 * h)) + Cx(16.0) * f(x + Cx(h)) - Cx(30.0) * psi0 +
                 Cx(16.0) * f(x - Cx(h)) - f(x - Cx(2 * h))) /
                Cx(12.0 * h * h);
  const std::complex<double> half = 0.5 * x.cplx();
  const Cx s2(std::sin(half) * std::sin(half));
  const Cx c2(std::cos(half) * std::cos(half));
  Cx pot;
  for (int v = 0; v < 4; ++v) {
    const Cx g(ScalarOps<S>::to_complex(sol.params.g[v]));
    const Cx gg = g * (g - Cx(1.0));
    if (v == 0) pot += gg / (Cx(4.0) * s2);
    if (v == 1) pot += gg / (Cx(4.0) * c2);
    pot -= gg * Cx(1.0 / 12.0);
  }
  const Cx E = total_E(sol, Nome::from_q(Cx()));
  return (pot - E) * psi0 - d2;
}

// Residual of the defining equation: (i/pi) kappa d/dtau - d^2/dx^2 + the
// four-well elliptic potential, minus E psi; fourth-order central stencils.
template <class S>
Cx residual(const SeriesSolution<S>& sol, const Cx& x, const Nome& nm, double h) {
  if (is_zero(nm.q)) return residual_trig(sol, x, h);
  if (!nm.has_tau) throw PreconditionError("residual needs a tau (q != 0)");
  auto f = [&](const Cx& xx, const Nome& n2) { return eval_psi(sol, xx, n2); };
  const Cx psi0 = f(x, nm);
  const Cx d2 = (-f(x + Cx(2 * h), nm) + Cx(16.0) * f(x + Cx(h), nm) - Cx(30.0) * psi0 +
                 Cx(16.0) * f(x - Cx(h), nm) - f(x - Cx(2 * h), nm)) /
                Cx(12.0 * h * h);
  auto at = [&](double k) { return f(x, Nome::from_tau(nm.tau + Cx(k * h))); };
  const Cx dtau = (at(-2.0) - Cx(8.0) * at(-1.0) + Cx(8.0) * at(1.0) - at(2.0)) / Cx(12.0 * h);
  const HalfPeriods hp{nm.tau};
  Cx pot;
  for (int v = 0; v < 4; ++v) {
    const Cx g(ScalarOps<S>::to_complex(sol.params.g[v]));
    pot += g * (g - Cx(1.0)) * wp(x + hp.omega(v), nm);
  }
  const Cx kap(ScalarOps<S>::to_complex(sol.params.kappa));
  const Cx E = total_E(sol, nm);
  return Cx(0.0, 1.0 / detail::pi()) * kap * dtau - d2 + (pot - E) * psi0;
}

// Step-halving Richardson pair: extrapolated residual plus an estimate of the
// finite-difference error, so truncation error can be read off separately.
template <class S>
std::pair<Cx, double> residual_richardson(const SeriesSolution<S>& sol, const Cx& x,
                                          const Nome& nm, double h) {
  const Cx rh = residual(sol, x, nm, h);
  const Cx rh2 = residual(sol, x, nm, 0.5 * h);
  const Cx extrap = (Cx(16.0) * rh2 - rh) / Cx(15.0);
  return {extrap, (rh - rh2).abs() * 16.0 / 15.0};
}

// Residual in the omega_1 convention: the equation picks up pi/omega_1^2 on
// the scale-derivative term, the potential rescales through the lattice, and
// the solution/energy are mapped with the half-period scaling rules.
template <class S>
Cx residual_scaled(const SeriesSolution<S>& sol, const Cx& x, const Nome& nm, double h,
                   const Cx& omega1) {
  if (is_zero(nm.q) || !nm.has_tau) throw PreconditionError("scaled residual needs q != 0");
  const ScaleMap sm(omega1);
  auto f = [&](const Cx& xx, const Nome& n2) {
    return sm.psi_factor() * eval_psi(sol, sm.x_to_standard(xx), n2);
  };
  const Cx psi0 = f(x, nm);
  const Cx d2 = (-f(x + Cx(2 * h), nm) + Cx(16.0) * f(x + Cx(h), nm) - Cx(30.0) * psi0 +
                 Cx(16.0) * f(x - Cx(h), nm) - f(x - Cx(2 * h), nm)) /
                Cx(12.0 * h * h);
  auto at = [&](double k) { return f(x, Nome::from_tau(nm.tau + Cx(k * h))); };
  const Cx dtau = (at(-2.0) - Cx(8.0) * at(-1.0) + Cx(8.0) * at(1.0) - at(2.0)) / Cx(12.0 * h);
  const Cx s = Cx(detail::pi()) / omega1;  // lattice rescale factor
  const std::array<Cx, 4> om = {Cx(), omega1, -omega1 - omega1 * nm.tau, omega1 * nm.tau};
  Cx pot;
  for (int v = 0; v < 4; ++v) {
    const Cx g(ScalarOps<S>::to_complex(sol.params.g[v]));
    pot += g * (g - Cx(1.0)) * s * s * wp(s * (x + om[static_cast<std::size_t>(v)]), nm);
  }
  const Cx kap(ScalarOps<S>::to_complex(sol.params.kappa));
  const Cx E = sm.energy_factor() * total_E(sol, nm);
  const Cx dtau_term = Cx(0.0, detail::pi()) / (omega1 * omega1) * kap * dtau;
  return dtau_term - d2 + (pot - E) * psi0;
}

// ---------------------------------------------------------------------------
// Symmetry helpers.

// (c0, c1, c2, c3) = (g0+g2-1, g1+g3-1, g1-g3, g0-g2) and its inverse; the
// eigenvalue corrections at kappa = 0 are invariant under permuting the c's.
template <class S>
std::array<S, 4> coupling_to_c(const Params<S>& p) {
  const S one = ScalarOps<S>::from_int(1);
  return {p.g[0] + p.g[2] - one, p.g[1] + p.g[3] - one, p.g[1] - p.g[3], p.g[0] - p.g[2]};
}

template <class S>
Params<S> c_to_coupling(const std::array<S, 4>& c, const S& kappa) {
  const S one = ScalarOps<S>::from_int(1);
  const S two = ScalarOps<S>::from_int(2);
  return Params<S>((c[0] + c[3] + one) / two, (c[1] + c[2] + one) / two,
                   (c[0] - c[3] + one) / two, (c[1] - c[2] + one) / two, kappa);
}

// Max deviation over ell <= N between the eigenvalue corrections before and
// after permuting the c-parameters.  Exact zero (rational mode) certifies the
// symmetry; at kappa != 0 a non-trivial permutation generically breaks it.
template <class S>
double s4_eigen_deviation(int n, const Params<S>& p, int N, const std::array<int, 4>& sigma) {
  const std::array<S, 4> c = coupling_to_c(p);
  const std::array<S, 4> pc = {c[static_cast<std::size_t>(sigma[0])],
                               c[static_cast<std::size_t>(sigma[1])],
                               c[static_cast<std::size_t>(sigma[2])],
                               c[static_cast<std::size_t>(sigma[3])]};
  const QSeries<S> base = alg1(n, p, N).eigen;
  const QSeries<S> other = alg1(n, c_to_coupling(pc, p.kappa), N).eigen;
  double dev = 0.0;
  for (int l = 0; l <= N; ++l)
    dev = std::max(dev, ScalarOps<S>::abs_dbl(base.coeff(l) - other.coeff(l)));
  return dev;
}

// ---------------------------------------------------------------------------
// Numeric identity checks (implemented in solution.cpp).

// Two-variable kernel: product of theta factors over theta_1 of the sum and
// difference half-angles, powered by lambda.
Cx kernel_value(const Params<Cx>& p, const Cx& x, const Cx& y, const Nome& nm);

// Residual of the kernel identity ((i/pi) kappa d_tau + H_x{g} - H_y{dual g}
// - 2 kappa (1-lambda) eta_1/pi) K, divided by K; c_shift perturbs the
// constant to expose the identity's sensitivity.
Cx kernel_residual(const Params<Cx>& p, const Cx& x, const Cx& y, const Nome& nm, double h,
                   const Cx& c_shift = Cx());

// Quadrature check of the four q = 0 contour identities for Jacobi
// polynomials; returns the absolute deviation at z0.
double jacobi_integral_check(int variant, int n, double g, const Cx& z0, int K = 512);

// Relative deviation in the differential-difference identity satisfied by the
// dressed basis functions, truncating the hopping sum at |mu| <= M and the
// basis series at order N.
double difference_identity_deviation(const Params<Cx>& p, int n, const Cx& x, const Nome& nm,
                                     int M, double h, int N);

}  // namespace heunforge
