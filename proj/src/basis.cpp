#include "heunforge/basis.hpp"

#include <cmath>
#include <complex>

namespace heunforge {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroGuard = 1e-6;
}  // namespace

Cx f_contour(int m, const Cx& z0, const Nome& q0, const Params<Cx>& p, int K, double R) {
  if (K < 8) throw PreconditionError("quadrature needs at least 8 nodes");
  if (R <= 0.0) R = std::max(0.5, (1.0 + q0.q.abs()) / 2.0);
  if (R >= 1.0 || R <= q0.q.abs())
    throw PreconditionError("contour radius must satisfy |q| < R < 1");
  const std::complex<double> lam = ScalarOps<Cx>::to_complex(p.lambda());
  std::complex<double> gt[4];
  for (int v = 0; v < 4; ++v) gt[v] = ScalarOps<Cx>::to_complex(p.gt(v));

  std::complex<double> acc = 0.0;
  for (int j = 0; j < K; ++j) {
    const double phi = 2.0 * kPi * j / K;
    const std::complex<double> xi = R * std::exp(std::complex<double>(0.0, phi));
    std::complex<double> w = 1.0;
    for (int v = 0; v < 4; ++v) {
      std::complex<double> base = big_theta_nu(v + 1, Cx(xi), q0).cplx();
      if (std::abs(base) < kZeroGuard)
        throw PreconditionError("contour passes near a zero of the integrand");
      w *= std::pow(base, gt[v]);
    }
    std::complex<double> den = big_theta(z0, Cx(xi), q0).cplx();
    if (std::abs(den) < kZeroGuard)
      throw PreconditionError("contour passes near a zero of the integrand");
    w *= std::pow(den, -lam);
    acc += w * std::pow(xi, -m);
  }
  return Cx(acc / static_cast<double>(K));
}

}  // namespace heunforge
