#pragma once

#include <vector>

#include "scalar.hpp"
#include "zpoly.hpp"

namespace heunforge {

template <class T>
struct RingTraits {
  static T one() { return ScalarOps<T>::from_int(1); }
};
template <class S>
struct RingTraits<ZPoly<S>> {
  static ZPoly<S> one() { return ZPoly<S>::one(); }
};

// Power series truncated at a fixed order: c[0] + c[1] t + ... + c[order] t^order.
// The expansion variable is whatever the caller says it is -- normally the nome
// q, but the same type serves for auxiliary variables (the basis construction
// uses it for the Fourier variable).  Coefficients T form a ring: scalars or
// ZPoly.  Arithmetic between series of different truncation orders is refused
// rather than silently re-truncated.
template <class T>
class QSeries {
 public:
  QSeries() : QSeries(0) {}
  explicit QSeries(int order) : c_(static_cast<std::size_t>(check_order(order)) + 1) {}

  static QSeries constant(int order, const T& c0) {
    QSeries s(order);
    s.c_[0] = c0;
    return s;
  }
  static QSeries one(int order) { return constant(order, RingTraits<T>::one()); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& coeff(int l) const {
    static const T zero{};
    return (l >= 0 && l <= order()) ? c_[static_cast<std::size_t>(l)] : zero;
  }
  void set(int l, T v) { c_.at(static_cast<std::size_t>(l)) = std::move(v); }
  void add_to(int l, const T& v) {
    if (l >= 0 && l <= order()) c_[static_cast<std::size_t>(l)] += v;
  }

  // Smallest l with a nonzero coefficient; order()+1 for the zero series.
  int valuation() const {
    for (int l = 0; l <= order(); ++l)
      if (!is_zero(c_[static_cast<std::size_t>(l)])) return l;
    return order() + 1;
  }
  bool zero() const { return valuation() > order(); }

  QSeries operator-() const {
    QSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    a.match(b);
    QSeries r(a.order());
    for (int l = 0; l <= a.order(); ++l) r.c_[l] = a.c_[l] + b.c_[l];
    return r;
  }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }
  // Cauchy product, truncated.
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    a.match(b);
    QSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (int j = 0; i + j <= a.order(); ++j) {
        if (is_zero(b.c_[j])) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend bool operator==(const QSeries& a, const QSeries& b) {
    a.match(b);
    for (int l = 0; l <= a.order(); ++l)
      if (!(a.c_[l] == b.c_[l])) return false;
    return true;
  }
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  template <class S>
  QSeries scaled(const S& s) const {
    QSeries r(order());
    for (int l = 0; l <= order(); ++l) r.c_[l] = mul_scalar(c_[l], s);
    return r;
  }

  // t d/dt acting on the series: coefficient l picks up a factor l.
  QSeries log_scale_derivative() const {
    QSeries r(order());
    for (int l = 1; l <= order(); ++l) {
      T v = c_[static_cast<std::size_t>(l)];
      T acc{};
      for (int j = 0; j < l; ++j) acc += v;
      r.c_[static_cast<std::size_t>(l)] = acc;
    }
    return r;
  }

  QSeries truncated(int new_order) const {
    if (new_order > order()) throw PreconditionError("cannot extend a truncated series");
    QSeries r(new_order);
    for (int l = 0; l <= new_order; ++l) r.c_[l] = c_[l];
    return r;
  }

  // Multiply by t^k, dropping whatever falls outside [0, order].
  QSeries shifted(int k) const {
    QSeries r(order());
    for (int l = 0; l <= order(); ++l) {
      if (is_zero(c_[static_cast<std::size_t>(l)])) continue;
      if (l + k >= 0 && l + k <= order()) r.c_[static_cast<std::size_t>(l + k)] = c_[l];
    }
    return r;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw PreconditionError("series truncation order must be >= 0");
    return order;
  }
  void match(const QSeries& o) const {
    if (order() != o.order()) throw PreconditionError("mismatched series truncation orders");
  }

  std::vector<T> c_;
};

// Multiplicative inverse of a unit series (nonzero constant term required).
template <class S>
QSeries<S> qs_inv(const QSeries<S>& f) {
  if (ScalarOps<S>::resonance_zero(f.coeff(0)))
    throw ZeroDenominator("series inversion needs a nonzero constant term");
  const int N = f.order();
  QSeries<S> g(N);
  S inv0 = ScalarOps<S>::from_int(1) / f.coeff(0);
  g.set(0, inv0);
  for (int l = 1; l <= N; ++l) {
    S acc{};
    for (int j = 1; j <= l; ++j) acc += f.coeff(j) * g.coeff(l - j);
    g.set(l, -(inv0 * acc));
  }
  return g;
}

// 1/(b - e) as a truncated series, for scalar b != 0 and series e with e(0) = 0:
// sum_k e^k / b^{k+1}.  A vanishing b is exactly the resonance situation, so it
// throws ZeroDenominator for the caller to translate.
template <class S>
QSeries<S> resolvent(const S& b, const QSeries<S>& e) {
  if (ScalarOps<S>::resonance_zero(b)) throw ZeroDenominator("resolvent at a vanishing denominator");
  if (!is_zero(e.coeff(0)))
    throw PreconditionError("resolvent perturbation must have zero constant term");
  const int N = e.order();
  S inv_b = ScalarOps<S>::from_int(1) / b;
  QSeries<S> t = e.scaled(inv_b);
  QSeries<S> acc = QSeries<S>::one(N);
  QSeries<S> pw = QSeries<S>::one(N);
  for (int k = 1; k <= N; ++k) {
    pw = pw * t;
    if (pw.zero()) break;
    acc = acc + pw;
  }
  return acc.scaled(inv_b);
}

// (1 + u)^a for a series f = 1 + u with u of positive valuation and any scalar
// exponent a: sum_k C(a, k) u^k, which truncates because val(u^k) grows.
template <class T, class S>
QSeries<T> unit_pow(const QSeries<T>& f, const S& a) {
  const int N = f.order();
  if (!is_one(f.coeff(0)))
    throw PreconditionError("unit_pow needs constant term exactly 1");
  QSeries<T> u = f - QSeries<T>::one(N);
  QSeries<T> acc = QSeries<T>::one(N);
  int v = u.valuation();
  if (v > N) return acc;
  QSeries<T> pw = QSeries<T>::one(N);
  for (int k = 1; k * v <= N; ++k) {
    pw = pw * u;
    if (pw.zero()) break;
    acc = acc + pw.scaled(binom_general(a, k));
  }
  return acc;
}

// Horner evaluation at a scalar point (series over scalars only).
template <class S>
S qs_eval(const QSeries<S>& f, const S& t) {
  S acc{};
  for (int l = f.order(); l >= 0; --l) acc = acc * t + f.coeff(l);
  return acc;
}

}  // namespace heunforge
