#include "heunforge/specfun.hpp"

#include <cmath>

namespace heunforge {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTruncTheta = 1e-18;
constexpr double kTruncWp = 1e-16;
constexpr int kMaxTerms = 4000;

std::complex<double> cx(const Cx& v) { return v.cplx(); }

}  // namespace

Nome Nome::from_q(const Cx& q) {
  if (q.abs() >= 1.0) throw PreconditionError("nome must satisfy |q| < 1");
  Nome nm;
  nm.q = q;
  if (q.abs() > 0.0) {
    // principal tau: Im > 0 automatic from |q| < 1
    nm.tau = Cx(std::log(cx(q)) / std::complex<double>(0.0, kPi));
    nm.has_tau = true;
  }
  return nm;
}

Nome Nome::from_tau(const Cx& tau) {
  if (tau.im() <= 0.0) throw PreconditionError("tau must lie in the upper half-plane");
  Nome nm;
  nm.tau = tau;
  nm.q = Cx(std::exp(std::complex<double>(0.0, kPi) * cx(tau)));
  nm.has_tau = true;
  return nm;
}

Cx Nome::frac_pow(double s) const {
  if (!has_tau) {
    // trigonometric limit q = 0
    if (s > 0.0) return Cx(0.0);
    if (s == 0.0) return Cx(1.0);
    throw PreconditionError("negative power of q = 0");
  }
  return Cx(std::exp(std::complex<double>(0.0, kPi) * cx(tau) * s));
}

Cx HalfPeriods::omega(int v) const {
  switch (v) {
    case 0: return Cx(0.0);
    case 1: return Cx(kPi);
    case 2: return Cx(-kPi) - Cx(kPi) * tau;
    case 3: return Cx(kPi) * tau;
    default: throw PreconditionError("half-period index out of range");
  }
}

Cx theta(int nu, const Cx& x, const Nome& nm) {
  if (nu < 1 || nu > 4) throw PreconditionError("theta index out of range");
  const std::complex<double> z = cx(x);
  std::complex<double> sum = 0.0;
  double scale = 0.0;
  int quiet = 0;
  if (nu == 1 || nu == 2) {
    // q^{(n+1/2)^2} = q^{1/4} * q^{2} * q^{4} * ... ; only the seed power is
    // fractional, successive ratios are integer powers of q.
    std::complex<double> qp = cx(nm.frac_pow(0.25));
    const std::complex<double> q2 = cx(nm.q) * cx(nm.q);
    std::complex<double> ratio = q2;  // q^{2n+2} at n=0
    for (int n = 0; n < kMaxTerms; ++n) {
      const double phase = 2 * n + 1;
      std::complex<double> trig = nu == 1 ? std::sin(phase * z) : std::cos(phase * z);
      std::complex<double> term = 2.0 * qp * trig;
      if (nu == 1 && (n % 2) != 0) term = -term;
      sum += term;
      scale = std::max({scale, std::abs(sum), std::abs(term)});
      if (std::abs(term) <= kTruncTheta * std::max(scale, 1e-300)) {
        if (++quiet >= 2) return Cx(sum);
      } else {
        quiet = 0;
      }
      qp *= ratio;
      ratio *= q2;
      if (qp == std::complex<double>(0.0)) return Cx(sum);
    }
  } else {
    sum = 1.0;
    scale = 1.0;
    std::complex<double> qp = cx(nm.q);  // q^{n^2} at n=1
    const std::complex<double> q2 = cx(nm.q) * cx(nm.q);
    std::complex<double> ratio = qp * q2;  // q^{2n+1} at n=1
    for (int n = 1; n < kMaxTerms; ++n) {
      std::complex<double> term = 2.0 * qp * std::cos(2.0 * n * z);
      if (nu == 4 && (n % 2) != 0) term = -term;
      sum += term;
      scale = std::max({scale, std::abs(sum), std::abs(term)});
      if (std::abs(term) <= kTruncTheta * scale) {
        if (++quiet >= 2) return Cx(sum);
      } else {
        quiet = 0;
      }
      qp *= ratio;
      ratio *= q2;
      if (qp == std::complex<double>(0.0)) return Cx(sum);
    }
  }
  throw PreconditionError("theta series did not settle");
}

Cx big_theta_nu(int nu, const Cx& xi, const Nome& nm) {
  if (nu < 1 || nu > 4) throw PreconditionError("product index out of range");
  std::complex<double> w = cx(xi);
  if (nu == 2 || nu == 4) w = -w;
  if (std::abs(w) == 0.0) throw PreconditionError("xi must be non-zero");
  const std::complex<double> wi = 1.0 / w;
  const double reach = std::abs(w) + std::abs(wi);
  const std::complex<double> q2 = cx(nm.q) * cx(nm.q);
  std::complex<double> prod = nu <= 2 ? 1.0 - w : 1.0;
  // nu = 1,2 run over q^{2n}; nu = 3,4 over q^{2n-1} with + signs
  std::complex<double> qp = nu <= 2 ? q2 : cx(nm.q);
  const double sgn = nu <= 2 ? -1.0 : 1.0;
  for (int n = 1; n < kMaxTerms; ++n) {
    if (std::abs(qp) * reach < kTruncTheta) return Cx(prod);
    prod *= (1.0 + sgn * qp * w) * (1.0 + sgn * qp * wi);
    qp *= q2;
  }
  throw PreconditionError("theta product did not settle");
}

Cx big_theta(const Cx& z, const Cx& xi, const Nome& nm) {
  const std::complex<double> zz = cx(z);
  const std::complex<double> w = cx(xi);
  if (std::abs(w) == 0.0) throw PreconditionError("xi must be non-zero");
  const std::complex<double> wi = 1.0 / w;
  const double reach = (2.0 * std::abs(zz) + std::abs(w) + std::abs(wi)) *
                       (std::abs(w) + std::abs(wi));
  const std::complex<double> q2 = cx(nm.q) * cx(nm.q);
  std::complex<double> prod = 1.0 - 2.0 * zz * w + w * w;
  std::complex<double> qp = q2;  // q^{2n}
  for (int n = 1; n < kMaxTerms; ++n) {
    if (std::abs(qp) * reach < kTruncTheta) return Cx(prod);
    prod *= (1.0 - 2.0 * qp * w * zz + qp * qp * w * w) *
            (1.0 - 2.0 * qp * wi * zz + qp * qp * wi * wi);
    qp *= q2;
  }
  throw PreconditionError("theta product did not settle");
}

Cx euler_G(const Nome& nm) {
  const std::complex<double> q2 = cx(nm.q) * cx(nm.q);
  std::complex<double> prod = 1.0;
  std::complex<double> qp = q2;
  for (int n = 1; n < kMaxTerms; ++n) {
    if (std::abs(qp) < kTruncTheta) return Cx(prod);
    prod *= 1.0 - qp;
    qp *= q2;
  }
  throw PreconditionError("Euler product did not settle");
}

Cx eta1_over_pi(const Nome& nm) {
  const std::complex<double> q2 = cx(nm.q) * cx(nm.q);
  std::complex<double> sum = 1.0 / 12.0;
  std::complex<double> qp = q2;
  for (int n = 1; n < kMaxTerms; ++n) {
    if (std::abs(qp) < kTruncTheta) return Cx(sum);
    std::complex<double> d = 1.0 - qp;
    sum -= 2.0 * qp / (d * d);
    qp *= q2;
  }
  throw PreconditionError("eta_1 series did not settle");
}

namespace {

// 1/(4 sin^2(u/2)) with a guard against lattice poles.
std::complex<double> inv4sin2(const std::complex<double>& u) {
  std::complex<double> s = std::sin(0.5 * u);
  std::complex<double> d = 4.0 * s * s;
  if (std::abs(d) < 1e-10)
    throw PreconditionError("evaluation point too close to a lattice pole");
  return 1.0 / d;
}

}  // namespace

Cx wp(const Cx& x, const Nome& nm) {
  if (!nm.has_tau) {
    // q = 0: only the n = 0 image survives
    return Cx(inv4sin2(cx(x)) - std::complex<double>(1.0 / 12.0));
  }
  const std::complex<double> shift = 2.0 * kPi * cx(nm.tau);
  std::complex<double> sum = -cx(eta1_over_pi(nm)) + inv4sin2(cx(x));
  int quiet = 0;
  for (int n = 1; n < kMaxTerms; ++n) {
    std::complex<double> t =
        inv4sin2(cx(x) + static_cast<double>(n) * shift) +
        inv4sin2(cx(x) - static_cast<double>(n) * shift);
    sum += t;
    if (std::abs(t) <= kTruncWp * std::max(std::abs(sum), 1.0)) {
      if (++quiet >= 2) return Cx(sum);
    } else {
      quiet = 0;
    }
  }
  throw PreconditionError("lattice sum did not settle");
}

Cx wp_fourier(int nu, int mu, const Nome& nm) {
  if (mu == 0) throw PreconditionError("Fourier index mu must be non-zero");
  if (nu < 0 || nu > 3) throw PreconditionError("half-period index out of range");
  const double a = mu > 0 ? mu : -mu;
  const std::complex<double> qa = cx(nm.frac_pow(a));
  const std::complex<double> den = 1.0 - qa * qa;
  std::complex<double> v;
  if (nu <= 1) {
    v = mu > 0 ? a / den : a * qa * qa / den;
  } else {
    v = a * qa / den;
  }
  if ((nu == 1 || nu == 2) && (mu % 2) != 0) v = -v;
  return Cx(v);
}

ScaleMap::ScaleMap(const Cx& w1) : omega1(w1) {
  if (w1.abs() == 0.0) throw ZeroDenominator("zero half-period");
}

Cx ScaleMap::x_to_standard(const Cx& x) const { return Cx(kPi) * x / omega1; }

Cx ScaleMap::psi_factor() const {
  return Cx(std::sqrt(kPi * std::complex<double>(1.0) / cx(omega1)));
}

Cx ScaleMap::energy_factor() const {
  std::complex<double> r = kPi / cx(omega1);
  return Cx(r * r);
}

}  // namespace heunforge
