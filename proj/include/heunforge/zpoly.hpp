#pragma once

#include <vector>

#include "scalar.hpp"

namespace heunforge {

// Dense polynomial in one variable z, coefficients ascending.  Trailing
// exactly-zero coefficients are trimmed, so degree() is sharp in exact mode;
// in float mode only bit-exact zeros are dropped (no tolerance games with the
// representation).
template <class S>
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(const S& c0) : c_{c0} { normalize(); }
  explicit ZPoly(std::vector<S> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static ZPoly monomial(const S& c, int k) {
    std::vector<S> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return ZPoly(std::move(v));
  }
  static ZPoly one() { return ZPoly(ScalarOps<S>::from_int(1)); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  const S& coeff(int k) const {
    static const S zero{};
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : zero;
  }
  const S& leading() const {
    static const S zero{};
    return c_.empty() ? zero : c_.back();
  }

  ZPoly operator-() const {
    ZPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  ZPoly& operator+=(const ZPoly& o) { return *this = *this + o; }
  ZPoly& operator-=(const ZPoly& o) { return *this = *this - o; }
  ZPoly& operator*=(const ZPoly& o) { return *this = *this * o; }
  friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<S> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(int(k)) + b.coeff(int(k));
    return ZPoly(std::move(v));
  }
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-b); }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return ZPoly();
    std::vector<S> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return ZPoly(std::move(v));
  }
  ZPoly scaled(const S& s) const {
    ZPoly r;
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(c * s);
    r.normalize();
    return r;
  }

  S eval(const S& z) const {
    S acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  friend bool operator==(const ZPoly& a, const ZPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (a.c_[k] != b.c_[k]) return false;
    return true;
  }
  friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }

 private:
  void normalize() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }

  std::vector<S> c_;
};

template <class S>
bool is_zero(const ZPoly<S>& p) {
  return p.degree() < 0;
}
template <class S>
bool is_one(const ZPoly<S>& p) {
  return p.degree() == 0 && is_one(p.coeff(0));
}
template <class S>
ZPoly<S> mul_scalar(const ZPoly<S>& p, const S& s) {
  return p.scaled(s);
}
inline Rational mul_scalar(const Rational& x, const Rational& s) { return x * s; }
inline Cx mul_scalar(const Cx& x, const Cx& s) { return x * s; }

// Largest coefficient magnitude (coarse scale estimate for tolerance checks).
template <class S>
double poly_scale(const ZPoly<S>& p) {
  double m = 0.0;
  for (int k = 0; k <= p.degree(); ++k) m = std::max(m, ScalarOps<S>::abs_dbl(p.coeff(k)));
  return m;
}

}  // namespace heunforge
