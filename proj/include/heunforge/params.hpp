#pragma once

#include <array>

#include "scalar.hpp"

namespace heunforge {

// Coupling data for the deformed operator: four exponents g_v attached to the
// half-period shifts, plus the deformation strength kappa.  Everything else
// (lambda, the dual exponents, the unperturbed eigenvalue) is derived.
template <class S>
struct Params {
  std::array<S, 4> g{};
  S kappa{};

  Params() = default;
  Params(S g0, S g1, S g2, S g3, S kap) : g{g0, g1, g2, g3}, kappa(kap) {}

  S lambda() const {
    S half = ScalarOps<S>::from_ratio(1, 2);
    return (g[0] + g[1] + g[2] + g[3] - kappa) * half;
  }
  // Dual exponent paired with g_v.
  S gt(int v) const { return lambda() - g[static_cast<std::size_t>(v)]; }
  // gamma_v = gt_v (gt_v - 1), the coupling that actually enters the
  // recursions.
  S gamma_tilde(int v) const {
    S t = gt(v);
    return t * (t - ScalarOps<S>::from_int(1));
  }
  // P = 2n + g0 + g1; the unperturbed eigenvalue is (P/2)^2.
  S bigP(int n) const { return ScalarOps<S>::from_int(2 * n) + g[0] + g[1]; }
  S e0(int n) const {
    S half = ScalarOps<S>::from_ratio(1, 2);
    S p2 = bigP(n) * half;
    return p2 * p2;
  }
};

}  // namespace heunforge
