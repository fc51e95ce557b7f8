#pragma once

#include <vector>

#include "qseries.hpp"

namespace heunforge {

// Finite window of a Laurent expansion in an auxiliary variable xi: slots for
// xi^m with lo <= m <= hi, each slot a truncated q-series of z-polynomials.
// Products clip everything that falls outside the window; the clip is safe
// when the dropped term could not have drifted back into the extraction range
// [ex_lo, ex_hi] within the remaining q-budget (every q-carrying factor of the
// basis generating function moves xi by at most one slot per q-order, so a
// term at distance d needs at least d more q-orders to matter).  Clips that
// fail that test are counted in risky_clips, and the basis builder refuses to
// hand out tables once any occurred.
template <class S>
struct LaurentXi {
  using Coeff = QSeries<ZPoly<S>>;

  int lo, hi;
  int order;
  int ex_lo, ex_hi;
  long risky_clips = 0;
  std::vector<Coeff> slots;

  LaurentXi(int lo_, int hi_, int order_, int ex_lo_, int ex_hi_)
      : lo(lo_), hi(hi_), order(order_), ex_lo(ex_lo_), ex_hi(ex_hi_) {
    if (hi < lo) throw PreconditionError("empty Laurent window");
    slots.assign(static_cast<std::size_t>(hi - lo + 1), Coeff(order));
  }
  LaurentXi(int lo_, int hi_, int order_) : LaurentXi(lo_, hi_, order_, lo_, hi_) {}

  static LaurentXi one(int lo, int hi, int order) {
    LaurentXi r(lo, hi, order);
    r.slot(0) = Coeff::one(order);
    return r;
  }

  bool contains(int m) const { return m >= lo && m <= hi; }
  Coeff& slot(int m) {
    if (!contains(m)) throw PreconditionError("Laurent slot outside window");
    return slots[static_cast<std::size_t>(m - lo)];
  }
  const Coeff& slot(int m) const {
    if (!contains(m)) throw PreconditionError("Laurent slot outside window");
    return slots[static_cast<std::size_t>(m - lo)];
  }

  int val_q() const {
    int v = order + 1;
    for (const auto& s : slots) v = std::min(v, s.valuation());
    return v;
  }

  friend LaurentXi operator+(const LaurentXi& a, const LaurentXi& b) {
    if (a.lo != b.lo || a.hi != b.hi || a.order != b.order)
      throw PreconditionError("mismatched Laurent windows");
    LaurentXi r = a;
    for (std::size_t i = 0; i < r.slots.size(); ++i) r.slots[i] = r.slots[i] + b.slots[i];
    r.risky_clips += b.risky_clips;
    return r;
  }

  // Product clipped to *this* window (accumulator pattern).
  LaurentXi mul(const LaurentXi& f) const {
    if (order != f.order) throw PreconditionError("mismatched series truncation orders");
    LaurentXi r(lo, hi, order, ex_lo, ex_hi);
    r.risky_clips = risky_clips + f.risky_clips;
    for (int s1 = lo; s1 <= hi; ++s1) {
      const Coeff& a = slot(s1);
      if (a.zero()) continue;
      const int va = a.valuation();
      for (int s2 = f.lo; s2 <= f.hi; ++s2) {
        const Coeff& b = f.slot(s2);
        if (b.zero()) continue;
        const int s = s1 + s2;
        if (s >= lo && s <= hi) {
          r.slot(s) = r.slot(s) + a * b;
          continue;
        }
        // Clipped: flag it unless it is provably out of reach of the
        // extraction range.
        const int v = va + b.valuation();
        const int dist = s < ex_lo ? ex_lo - s : s - ex_hi;
        if (v <= order && dist <= order - v) ++r.risky_clips;
      }
    }
    return r;
  }
};

// (1 + u)^a where f = 1 + u has q-valuation >= 1 away from the unit term.
template <class S>
LaurentXi<S> unit_pow(const LaurentXi<S>& f, const S& a) {
  const int N = f.order;
  if (!f.contains(0) || !is_one(f.slot(0).coeff(0)))
    throw PreconditionError("unit_pow needs constant term exactly 1");
  LaurentXi<S> u = f;
  {
    auto c0 = u.slot(0);
    c0.set(0, ZPoly<S>{});
    u.slot(0) = c0;
  }
  for (int m = u.lo; m <= u.hi; ++m)
    if (m != 0 && !is_zero(u.slot(m).coeff(0)))
      throw PreconditionError("unit_pow factor has q-order-0 content off the unit");
  LaurentXi<S> acc = LaurentXi<S>::one(f.lo, f.hi, N);
  const int v = u.val_q();
  if (v > N) return acc;
  LaurentXi<S> pw = LaurentXi<S>::one(f.lo, f.hi, N);
  for (int k = 1; k * v <= N; ++k) {
    pw = pw.mul(u);
    if (pw.val_q() > N) break;
    S w = binom_general(a, k);
    LaurentXi<S> term = pw;
    for (auto& s : term.slots) s = s.scaled(w);
    acc = acc + term;
  }
  acc.risky_clips += pw.risky_clips;
  return acc;
}

}  // namespace heunforge
