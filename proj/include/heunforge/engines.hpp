#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "heunforge/errors.hpp"
#include "heunforge/params.hpp"
#include "heunforge/qseries.hpp"

namespace heunforge {

// Parity-coupled combination of the dual coupling products: even shells mix
// the (0,1) pair, odd shells the (2,3) pair.  Periodic in k with period 2 and
// in mu with period 2.
template <typename S>
S gamma_coeff(int k, int mu, const Params<S>& p) {
  if (k < 0) throw PreconditionError("shell index must be non-negative");
  S sign = ScalarOps<S>::from_int(mu % 2 == 0 ? 1 : -1);
  if (k % 2 == 0) return p.gamma_tilde(0) + sign * p.gamma_tilde(1);
  return sign * p.gamma_tilde(2) + p.gamma_tilde(3);
}

// Energy-difference denominator k(k + P) - kappa*ell with P = 2n + g0 + g1.
// Zero values are legal outputs; resonance handling is the caller's job.
template <typename S>
S b_denom(int n, int ell, int k, const Params<S>& p) {
  S kk = ScalarOps<S>::from_int(k);
  return kk * (kk + p.bigP(n)) - p.kappa * ScalarOps<S>::from_int(ell);
}

// Hopping weight S_mu as a q-series: mu>0 starts at the q^0 shell, mu<0 at
// the first shell.  Equals the combined Fourier tails of the four shifted
// Weierstrass terms (see the specfun cross-check in the tests).
template <typename S>
QSeries<S> s_mu_series(int mu, const Params<S>& p, int order) {
  if (mu == 0) throw PreconditionError("hopping distance must be non-zero");
  QSeries<S> r(order);
  int a = std::abs(mu);
  for (int k = (mu > 0 ? 0 : 1); k * a <= order; ++k)
    r.add_to(k * a, ScalarOps<S>::from_int(a) * gamma_coeff(k, mu, p));
  return r;
}

// Gauge of a coefficient table: `pinned` keeps the whole normalization column
// at alpha^(0)(n)=1, alpha^(ell>=1)(n)=0 and carries a corrected eigenvalue;
// `free` only fixes alpha^(0)(n)=1 and leaves the eigenvalue at its constant
// term, letting the normalization column absorb the correction instead.
enum class Gauge { pinned, free_column };

// Triangular table of expansion coefficients alpha_n^(ell)(m).  Row ell keeps
// m in [bot(ell), n+ell]; entries above n+ell vanish identically and read as
// zero, entries below the window were never computed and reading them throws.
template <typename S>
struct CoeffTable {
  int n = 0;
  int order = 0;
  Gauge gauge = Gauge::pinned;
  std::vector<std::vector<S>> rows;

  int bot(int ell) const { return std::min(n, 0) - (order - ell); }
  int top(int ell) const { return n + ell; }

  S get(int ell, int m) const {
    if (ell < 0 || ell > order) throw PreconditionError("coefficient order outside the table");
    if (m > top(ell)) return S();
    if (m < bot(ell)) throw WindowError("coefficient index below the stored window");
    return rows[static_cast<std::size_t>(ell)][static_cast<std::size_t>(m - bot(ell))];
  }

  // alpha_n(m) as a q-series; needs every row to contain m.
  QSeries<S> series_at(int m) const {
    if (m < std::min(n, 0)) throw WindowError("full series only available for m >= min(n, 0)");
    QSeries<S> r(order);
    for (int ell = 0; ell <= order; ++ell) r.set(ell, get(ell, m));
    return r;
  }

  // Construction helpers for the engines; not meant for consumers.
  void allocate() {
    rows.assign(static_cast<std::size_t>(order) + 1, {});
    for (int ell = 0; ell <= order; ++ell)
      rows[static_cast<std::size_t>(ell)].assign(static_cast<std::size_t>(top(ell) - bot(ell)) + 1, S());
  }
  void put(int ell, int m, const S& v) {
    rows[static_cast<std::size_t>(ell)][static_cast<std::size_t>(m - bot(ell))] = v;
  }
};

template <typename S>
struct EngineResult {
  CoeffTable<S> table;
  QSeries<S> eigen;  // constant term (P/2)^2 always
  // True when the parameters satisfy a regime for which the series is proved
  // to exist (non-real kappa with real g0+g1, or kappa = 0 with non-integer
  // g0+g1).  Outside those regimes the recursion still runs whenever every
  // denominator is non-zero; callers may want to surface a warning.
  bool hypothesis_ok = true;
};

namespace detail {

template <typename S>
bool imag_nonzero(const S& x) {
  return std::imag(ScalarOps<S>::to_complex(x)) != 0.0;
}

template <typename S>
bool real_valued(const S& x) {
  return !imag_nonzero(x);
}

template <typename S>
void check_index_preconditions(int n, const Params<S>& p) {
  if (n > 0 && ScalarOps<S>::neg_is_nonneg_int(p.lambda()))
    throw PreconditionError("-lambda must not be a non-negative integer for n > 0");
  if (n < 0 && ScalarOps<S>::neg_is_nonneg_int(p.g[0] + p.g[1]))
    throw PreconditionError("-(g0+g1) must not be a non-negative integer for n < 0");
}

template <typename S>
bool recursion_hypothesis(const Params<S>& p) {
  S gsum = p.g[0] + p.g[1];
  if (imag_nonzero(p.kappa) && real_valued(gsum)) return true;
  return is_zero(p.kappa) && !ScalarOps<S>::is_int(gsum);
}

// A vanishing denominator only aborts when the entry genuinely depends on the
// division: with a vanishing numerator the order equation reads 0*alpha = 0,
// the singularity is removable, and the zero branch is taken (the parameter
// limit of the coefficient is not reconstructed).  This is what lets integer
// g0+g1 cases such as the Lame couplings through as long as every resonant
// entry decouples, while a nonzero numerator over a zero denominator reports
// the offending (ell, m).
template <typename S>
S safe_div(const S& num, const S& b, int n, int ell, int m) {
  if (ScalarOps<S>::resonance_zero(b)) {
    if (ScalarOps<S>::resonance_zero(num)) return S();
    throw ResonanceError(n, {{ell, m, ScalarOps<S>::abs_dbl(b)}});
  }
  return num / b;
}

// Shared driver for the two order-by-order recursions.  gauge_one switches
// between determining the eigenvalue corrections from the m = n equation
// (pinned gauge) and dividing that equation by -kappa*ell instead (free).
template <typename S>
class TableBuilder {
 public:
  TableBuilder(int n, const Params<S>& p, int N, bool gauge_one)
      : n_(n), p_(p), N_(N), gauge_one_(gauge_one) {}

  EngineResult<S> run() {
    check_index_preconditions(n_, p_);
    if (!gauge_one_ && is_zero(p_.kappa))
      throw PreconditionError("the fixed-eigenvalue recursion needs kappa != 0");

    EngineResult<S> out;
    out.table.n = n_;
    out.table.order = N_;
    out.table.gauge = gauge_one_ ? Gauge::pinned : Gauge::free_column;
    out.table.allocate();
    out.eigen = QSeries<S>(N_);
    out.eigen.set(0, p_.e0(n_));
    out.hypothesis_ok = recursion_hypothesis(p_);
    t_ = &out.table;
    e_ = &out.eigen;

    for (int ell = 0; ell <= N_; ++ell) {
      for (int m = n_ + ell; m > n_; --m)
        t_->put(ell, m, safe_div(rhs(ell, m), b_denom(n_, ell, m - n_, p_), n_, ell, m));
      if (ell == 0) {
        t_->put(0, n_, ScalarOps<S>::from_int(1));
      } else if (gauge_one_) {
        e_->set(ell, eigen_equation(ell));
        // the gauge fixes this entry; put() keeps the allocated zero
      } else {
        t_->put(ell, n_, safe_div(rhs(ell, n_), b_denom(n_, ell, 0, p_), n_, ell, n_));
      }
      for (int m = n_ - 1; m >= t_->bot(ell); --m)
        t_->put(ell, m, safe_div(rhs(ell, m), b_denom(n_, ell, m - n_, p_), n_, ell, m));
    }
    return out;
  }

 private:
  // Cross-shell part: sum over ell' < ell and steps (mu, k) filtered by the
  // Kronecker delta ell = ell' + k*mu (the floor bound on k only trims the
  // scan range).
  S shell_sum(int ell, int m) const {
    S acc{};
    for (int lp = 0; lp <= ell - 1; ++lp) {
      int gap = ell - lp;
      for (int mu = 1; mu <= gap; ++mu) {
        for (int k = 1; k <= gap / mu; ++k) {
          if (lp + k * mu != ell) continue;
          acc += ScalarOps<S>::from_int(mu) * gamma_coeff(k, mu, p_) *
                 (t_->get(lp, m + mu) + t_->get(lp, m - mu));
        }
      }
    }
    return acc;
  }

  S rhs(int ell, int m) const {
    S acc{};
    if (gauge_one_) {
      for (int lp = 1; lp <= ell; ++lp) acc += e_->coeff(lp) * t_->get(ell - lp, m);
    }
    for (int mu = 1; mu <= n_ - m + ell; ++mu)
      acc += ScalarOps<S>::from_int(mu) * gamma_coeff(0, mu, p_) * t_->get(ell, m + mu);
    return acc + shell_sum(ell, m);
  }

  S eigen_equation(int ell) const {
    S acc{};
    for (int mu = 1; mu <= ell; ++mu)
      acc += ScalarOps<S>::from_int(mu) * gamma_coeff(0, mu, p_) * t_->get(ell, n_ + mu);
    return -(acc + shell_sum(ell, n_));
  }

  int n_;
  Params<S> p_;
  int N_;
  bool gauge_one_;
  CoeffTable<S>* t_ = nullptr;
  QSeries<S>* e_ = nullptr;
};

}  // namespace detail

// Order-by-order recursion in the gauge alpha^(ell>=1)(n) = 0, solving for
// the eigenvalue corrections from the m = n equation.  Valid for any kappa.
template <typename S>
EngineResult<S> alg1(int n, const Params<S>& p, int N) {
  return detail::TableBuilder<S>(n, p, N, true).run();
}

// Order-by-order recursion keeping the eigenvalue at its constant term and
// letting alpha(n) pick up q-corrections instead.  Needs kappa != 0.
template <typename S>
EngineResult<S> alg2(int n, const Params<S>& p, int N) {
  return detail::TableBuilder<S>(n, p, N, false).run();
}

// Gauge transformation from the free-column gauge to the pinned one: divide
// column and move its logarithmic q-derivative into the eigenvalue.
template <typename S>
EngineResult<S> bridge(const CoeffTable<S>& t2, const Params<S>& p) {
  if (t2.gauge != Gauge::free_column)
    throw PreconditionError("bridge expects a fixed-eigenvalue table");
  const int n = t2.n, N = t2.order;
  QSeries<S> u = t2.series_at(n);
  if (!is_one(u.coeff(0)))
    throw PreconditionError("normalization column must have unit constant term");
  QSeries<S> v = qs_inv(u);

  EngineResult<S> out;
  out.table.n = n;
  out.table.order = N;
  out.table.gauge = Gauge::pinned;
  out.table.allocate();
  for (int ell = 0; ell <= N; ++ell) {
    for (int m = out.table.bot(ell); m <= out.table.top(ell); ++m) {
      S acc{};
      for (int j = 0; j <= ell; ++j) acc += t2.get(j, m) * v.coeff(ell - j);
      out.table.put(ell, m, acc);
    }
  }
  out.eigen = (u.log_scale_derivative() * v).scaled(p.kappa);
  out.eigen.add_to(0, p.e0(n));
  out.hypothesis_ok = detail::recursion_hypothesis(p);
  return out;
}

namespace detail {

// One hop of the difference operator: (Bu)(m) = sum_mu S_mu u(m + mu),
// restricted to a window outside which either the coefficients vanish to the
// working order or no path can return within the order budget.
template <typename S>
class HoppingDp {
 public:
  HoppingDp(int n, const Params<S>& p, int N) : n_(n), N_(N), w_lo_(std::min(n, 0) - 2 * N), w_hi_(n + N) {
    int span = w_hi_ - w_lo_;
    smu_.reserve(static_cast<std::size_t>(2 * span) + 1);
    for (int mu = -span; mu <= span; ++mu)
      smu_.push_back(mu == 0 ? QSeries<S>(N) : s_mu_series(mu, p, N));
    // zero denominators are tolerated here; advance() aborts only when a
    // resonant slot actually acquires amplitude within the working order
    for (int m = w_lo_; m <= w_hi_; ++m) {
      if (m == n) continue;
      b0_.push_back(b_denom(n, 0, m - n, p));
    }
  }

  int lo() const { return w_lo_; }
  int hi() const { return w_hi_; }
  int slots() const { return w_hi_ - w_lo_ + 1; }
  int cap() const { return std::abs(n_) + 5 * N_ + 4; }

  std::vector<QSeries<S>> unit() const {
    std::vector<QSeries<S>> u(static_cast<std::size_t>(slots()), QSeries<S>(N_));
    u[static_cast<std::size_t>(n_ - w_lo_)] = QSeries<S>::one(N_);
    return u;
  }

  std::vector<QSeries<S>> apply_b(const std::vector<QSeries<S>>& u) const {
    std::vector<QSeries<S>> r(u.size(), QSeries<S>(N_));
    for (int m = w_lo_; m <= w_hi_; ++m) {
      QSeries<S> acc(N_);
      for (int mp = w_lo_; mp <= w_hi_; ++mp) {
        if (mp == m) continue;
        const QSeries<S>& src = u[static_cast<std::size_t>(mp - w_lo_)];
        if (src.zero()) continue;
        acc = acc + s_at(mp - m) * src;
      }
      r[static_cast<std::size_t>(m - w_lo_)] = acc;
    }
    return r;
  }

  QSeries<S> row_b_at_n(const std::vector<QSeries<S>>& u) const {
    QSeries<S> acc(N_);
    for (int mp = w_lo_; mp <= w_hi_; ++mp) {
      if (mp == n_) continue;
      const QSeries<S>& src = u[static_cast<std::size_t>(mp - w_lo_)];
      if (src.zero()) continue;
      acc = acc + s_at(mp - n_) * src;
    }
    return acc;
  }

  // u <- resolvent * B u (projected off m = n); returns true when u died.
  bool advance(std::vector<QSeries<S>>& u, const QSeries<S>& z) const {
    std::vector<QSeries<S>> t = apply_b(u);
    bool dead = true;
    for (int m = w_lo_; m <= w_hi_; ++m) {
      auto& slot = u[static_cast<std::size_t>(m - w_lo_)];
      if (m == n_) {
        slot = QSeries<S>(N_);
        continue;
      }
      const QSeries<S>& num = t[static_cast<std::size_t>(m - w_lo_)];
      if (num.zero()) {
        slot = QSeries<S>(N_);
        continue;
      }
      const S& b = b0_at(m);
      if (ScalarOps<S>::resonance_zero(b))
        throw ResonanceError(n_, {{0, m, ScalarOps<S>::abs_dbl(b)}});
      slot = resolvent(b, z) * num;
      if (!slot.zero()) dead = false;
    }
    return dead;
  }

  const QSeries<S>& s_at(int mu) const {
    return smu_[static_cast<std::size_t>(mu + (w_hi_ - w_lo_))];
  }
  const S& b0_at(int m) const {
    return b0_[static_cast<std::size_t>(m < n_ ? m - w_lo_ : m - w_lo_ - 1)];
  }

 private:
  int n_, N_, w_lo_, w_hi_;
  std::vector<QSeries<S>> smu_;
  std::vector<S> b0_;  // b^(0)(m - n) for m in window, skipping m = n
};

}  // namespace detail

// Fixed-point solution for kappa = 0: the eigenvalue shift solves
// z = Phi(z) with Phi built from closed hopping paths, and the coefficients
// come from the same resolvent expansion seeded at m = n.  Each fixed-point
// sweep gains at least one q-order, so N sweeps suffice; one extra sweep
// asserts idempotence.
template <typename S>
EngineResult<S> thm1_eigen(int n, const Params<S>& p, int N) {
  detail::check_index_preconditions(n, p);
  if (!is_zero(p.kappa)) throw PreconditionError("the fixed-point engine requires kappa = 0");
  detail::HoppingDp<S> dp(n, p, N);

  auto phi = [&](const QSeries<S>& z) {
    std::vector<QSeries<S>> u = dp.unit();
    QSeries<S> acc(N);
    for (int j = 1; j <= dp.cap(); ++j) {
      bool dead = dp.advance(u, z);
      acc = acc - dp.row_b_at_n(u);
      if (dead) break;
    }
    return acc;
  };

  QSeries<S> z(N);
  for (int it = 0; it < N; ++it) z = phi(z);
  QSeries<S> check = phi(z);
  for (int ell = 0; ell <= N; ++ell) {
    if (!ScalarOps<S>::eq(check.coeff(ell), z.coeff(ell)))
      throw PreconditionError("fixed point did not stabilize at the requested order");
  }
  if (!is_zero(z.coeff(0)))
    throw PreconditionError("fixed point acquired a constant term");

  std::vector<QSeries<S>> alpha = dp.unit();
  std::vector<QSeries<S>> u = dp.unit();
  for (int j = 1; j <= dp.cap(); ++j) {
    bool dead = dp.advance(u, z);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      if (!u[i].zero()) alpha[i] = alpha[i] + u[i];
    if (dead) break;
  }

  EngineResult<S> out;
  out.table.n = n;
  out.table.order = N;
  out.table.gauge = Gauge::pinned;
  out.table.allocate();
  for (int ell = 0; ell <= N; ++ell)
    for (int m = out.table.bot(ell); m <= out.table.top(ell); ++m)
      out.table.put(ell, m, alpha[static_cast<std::size_t>(m - dp.lo())].coeff(ell));
  out.eigen = z;
  out.eigen.add_to(0, p.e0(n));
  S gsum = p.g[0] + p.g[1];
  out.hypothesis_ok = !ScalarOps<S>::is_int(gsum) && detail::real_valued(gsum);
  return out;
}

namespace detail {

// Depth-first enumeration of hopping paths for the explicit coefficient
// formula.  State (o, r): offset from n and remaining order.  A step (mu, k)
// moves o by mu and consumes |mu|*k of r; weight-free steps (k = 0) must hop
// upward.  Paths end exactly at (0, 0); a state is kept only if it can still
// reach that endpoint, i.e. r >= max(o, 0).
template <typename S>
class PathSum {
 public:
  PathSum(int n, const Params<S>& p) : n_(n), p_(p) {}

  S total(int o, int r) {
    acc_ = S();
    if (r >= std::max(o, 0)) walk(o, r, ScalarOps<S>::from_int(1));
    return acc_;
  }

 private:
  void walk(int o, int r, S w) {
    if (o == 0 && r == 0) {
      acc_ += w;
      return;
    }
    S b = b_denom(n_, r, o, p_);
    if (ScalarOps<S>::resonance_zero(b))
      throw ResonanceError(n_, {{r, n_ + o, ScalarOps<S>::abs_dbl(b)}});
    w = w / b;
    for (int mu = 1; mu <= r - o; ++mu) {
      S g = gamma_coeff(0, mu, p_);
      if (is_zero(g)) continue;
      walk(o + mu, r, w * ScalarOps<S>::from_int(mu) * g);
    }
    for (int k = 1; k <= r; ++k) {
      for (int a = 1; a * k <= r; ++a) {
        S g = gamma_coeff(k, a, p_);
        for (int mu : {a, -a}) {
          int o2 = o + mu, r2 = r - a * k;
          if (r2 < std::max(o2, 0)) continue;
          if (is_zero(g)) continue;
          walk(o2, r2, w * ScalarOps<S>::from_int(a) * g);
        }
      }
    }
  }

  int n_;
  Params<S> p_;
  S acc_{};
};

}  // namespace detail

// One coefficient alpha_n^(ell)(m) in the fixed-eigenvalue gauge, evaluated
// by the finite path enumeration.  Needs kappa != 0.
template <typename S>
S thm2_alpha(int n, int m, int ell, const Params<S>& p) {
  if (ell < 0) throw PreconditionError("order must be non-negative");
  detail::check_index_preconditions(n, p);
  if (is_zero(p.kappa)) throw PreconditionError("the path enumeration requires kappa != 0");
  return detail::PathSum<S>(n, p).total(m - n, ell);
}

// Whole free-column table via the path enumeration (for cross-validation; the
// recursion is much cheaper at equal truncation).
template <typename S>
EngineResult<S> thm2_table(int n, const Params<S>& p, int N) {
  if (N < 0) throw PreconditionError("order must be non-negative");
  detail::check_index_preconditions(n, p);
  if (is_zero(p.kappa)) throw PreconditionError("the path enumeration requires kappa != 0");
  EngineResult<S> out;
  out.table.n = n;
  out.table.order = N;
  out.table.gauge = Gauge::free_column;
  out.table.allocate();
  detail::PathSum<S> walker(n, p);
  for (int ell = 0; ell <= N; ++ell)
    for (int m = out.table.bot(ell); m <= out.table.top(ell); ++m)
      out.table.put(ell, m, walker.total(m - n, ell));
  out.eigen = QSeries<S>(N);
  out.eigen.set(0, p.e0(n));
  out.hypothesis_ok = detail::imag_nonzero(p.kappa) && detail::real_valued(p.g[0] + p.g[1]);
  return out;
}

}  // namespace heunforge
