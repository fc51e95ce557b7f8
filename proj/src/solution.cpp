#include "heunforge/solution.hpp"

#include <algorithm>
#include <cmath>

namespace heunforge {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::recursion_i: return "alg1";
    case Mode::recursion_ii: return "alg2";
    case Mode::fixed_point: return "thm1";
    case Mode::path_sum: return "thm2";
    case Mode::bridged: return "bridge";
  }
  return "alg1";
}

Mode mode_from_name(const std::string& name) {
  if (name == "alg1") return Mode::recursion_i;
  if (name == "alg2") return Mode::recursion_ii;
  if (name == "thm1") return Mode::fixed_point;
  if (name == "thm2") return Mode::path_sum;
  if (name == "bridge") return Mode::bridged;
  throw PreconditionError("unknown mode: " + name);
}

Cx kernel_value(const Params<Cx>& p, const Cx& x, const Cx& y, const Nome& nm) {
  const Cx lam = p.lambda();
  Cx num(1.0);
  for (int v = 0; v < 4; ++v) {
    num = num * detail::cpow(theta(v + 1, Cx(0.5) * x, nm), p.g[v]);
    num = num * detail::cpow(theta(v + 1, Cx(0.5) * y, nm), p.gt(v));
  }
  const Cx den = detail::cpow(theta(1, Cx(0.5) * (x + y), nm), lam) *
                 detail::cpow(theta(1, Cx(0.5) * (x - y), nm), lam);
  return num / den;
}

Cx kernel_residual(const Params<Cx>& p, const Cx& x, const Cx& y, const Nome& nm, double h,
                   const Cx& c_shift) {
  if (is_zero(nm.q) || !nm.has_tau) throw PreconditionError("kernel residual needs q != 0");
  auto K = [&](const Cx& xx, const Cx& yy, const Nome& n2) {
    return kernel_value(p, xx, yy, n2);
  };
  const Cx k0 = K(x, y, nm);
  const Cx d2x = (-K(x + Cx(2 * h), y, nm) + Cx(16.0) * K(x + Cx(h), y, nm) - Cx(30.0) * k0 +
                  Cx(16.0) * K(x - Cx(h), y, nm) - K(x - Cx(2 * h), y, nm)) /
                 Cx(12.0 * h * h);
  const Cx d2y = (-K(x, y + Cx(2 * h), nm) + Cx(16.0) * K(x, y + Cx(h), nm) - Cx(30.0) * k0 +
                  Cx(16.0) * K(x, y - Cx(h), nm) - K(x, y - Cx(2 * h), nm)) /
                 Cx(12.0 * h * h);
  auto at = [&](double k) { return K(x, y, Nome::from_tau(nm.tau + Cx(k * h))); };
  const Cx dtau = (at(-2.0) - Cx(8.0) * at(-1.0) + Cx(8.0) * at(1.0) - at(2.0)) / Cx(12.0 * h);
  const HalfPeriods hp{nm.tau};
  Cx pot_x, pot_y;
  for (int v = 0; v < 4; ++v) {
    const Cx g = p.g[v];
    const Cx gt = p.gt(v);
    pot_x += g * (g - Cx(1.0)) * wp(x + hp.omega(v), nm);
    pot_y += gt * (gt - Cx(1.0)) * wp(y + hp.omega(v), nm);
  }
  const Cx c11 = Cx(2.0) * p.kappa * (Cx(1.0) - p.lambda()) * eta1_over_pi(nm) + c_shift;
  const Cx res = Cx(0.0, 1.0 / detail::pi()) * p.kappa * dtau - d2x + pot_x * k0 + d2y -
                 pot_y * k0 - c11 * k0;
  return res / k0;
}

double jacobi_integral_check(int variant, int n, double g, const Cx& z0, int K) {
  Params<Cx> p;
  Cx alpha, beta;
  const Cx cg(g);
  switch (variant) {
    case 1:
      p = Params<Cx>(cg, cg, cg, cg, Cx(2.0 * g));
      break;
    case 2:
      p = Params<Cx>(cg, cg + Cx(1.0), cg + Cx(1.0), cg + Cx(1.0), Cx(2.0 * g + 1.0));
      break;
    case 3:
      p = Params<Cx>(cg + Cx(1.0), cg, cg + Cx(1.0), cg + Cx(1.0), Cx(2.0 * g + 1.0));
      break;
    case 4:
      p = Params<Cx>(cg, cg, cg + Cx(1.0), cg + Cx(1.0), Cx(2.0 * g));
      break;
    default:
      throw PreconditionError("variant must be 1..4");
  }
  alpha = p.g[0] - Cx(0.5);
  beta = p.g[1] - Cx(0.5);
  const Cx rhs = solution_norm(n, p) * f_contour(n, z0, Nome::from_q(Cx()), p, K);
  const Cx lhs = jacobi_poly<Cx>(n, alpha, beta).eval(z0);
  return (lhs - rhs).abs();
}

double difference_identity_deviation(const Params<Cx>& p, int n, const Cx& x, const Nome& nm,
                                     int M, double h, int N) {
  if (is_zero(nm.q) || !nm.has_tau) throw PreconditionError("identity check needs q != 0");
  const BasisTable<Cx> ft = f_table(p, N, n - M, n + M);
  const Cx g01 = p.g[0] + p.g[1];

  // Dressed basis function F_m at a given nome (x fixed throughout).
  auto F = [&](int m, const Nome& n2) {
    Cx pref = detail::cpow(Cx(2.0) * n2.frac_pow(0.25), -g01);
    for (int v = 0; v < 4; ++v)
      pref = pref * detail::cpow(theta(v + 1, Cx(0.5) * x, n2), p.g[v]);
    return pref * detail::eval_qseries_poly(ft.at(m), Cx(std::cos(x.cplx())), n2.q);
  };
  auto Fx = [&](int m, const Cx& xx) {
    Cx pref = detail::cpow(Cx(2.0) * nm.frac_pow(0.25), -g01);
    for (int v = 0; v < 4; ++v)
      pref = pref * detail::cpow(theta(v + 1, Cx(0.5) * xx, nm), p.g[v]);
    return pref * detail::eval_qseries_poly(ft.at(m), Cx(std::cos(xx.cplx())), nm.q);
  };

  const Cx f0 = F(n, nm);
  const Cx d2 = (-Fx(n, x + Cx(2 * h)) + Cx(16.0) * Fx(n, x + Cx(h)) - Cx(30.0) * f0 +
                 Cx(16.0) * Fx(n, x - Cx(h)) - Fx(n, x - Cx(2 * h))) /
                Cx(12.0 * h * h);
  auto at = [&](double k) { return F(n, Nome::from_tau(nm.tau + Cx(k * h))); };
  const Cx dtau = (at(-2.0) - Cx(8.0) * at(-1.0) + Cx(8.0) * at(1.0) - at(2.0)) / Cx(12.0 * h);

  const HalfPeriods hp{nm.tau};
  Cx pot;
  for (int v = 0; v < 4; ++v)
    pot += p.g[v] * (p.g[v] - Cx(1.0)) * wp(x + hp.omega(v), nm);

  const Cx e1p = eta1_over_pi(nm);
  Cx c0 = p.kappa * p.kappa * (Cx(1.0 / 12.0) - e1p);
  for (int v = 0; v < 4; ++v) c0 -= p.g[v] * (p.g[v] - Cx(1.0)) * e1p;

  const Cx lhs = Cx(0.0, 1.0 / detail::pi()) * p.kappa * dtau - d2 + pot * f0;
  Cx rhs = (c0 + p.e0(n)) * f0;
  for (int mu = -M; mu <= M; ++mu) {
    if (mu == 0) continue;
    Cx s_mu;
    for (int v = 0; v < 4; ++v) s_mu += p.gamma_tilde(v) * wp_fourier(v, mu, nm);
    rhs -= s_mu * F(n - mu, nm);
  }
  const double scale = std::max((lhs).abs(), (rhs).abs());
  if (scale == 0.0) return 0.0;
  return (lhs - rhs).abs() / scale;
}

}  // namespace heunforge
