#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>

#include "errors.hpp"

namespace heunforge {

// Tolerances for the floating-point scalar mode.  Process-wide, set once at
// startup (the CLI exposes flags); exact-rational arithmetic never reads them.
struct FloatTol {
  static inline double eps_eq = 1e-10;   // relative tolerance for approx equality
  static inline double eps_div = 1e-12;  // smallest divisor modulus allowed
  static inline double eps_res = 1e-8;   // |denominator| below this is a resonance
};

// Exact rational scalar on top of GMP.  Division by zero throws a structured
// error instead of raising SIGFPE, so series code can surface it cleanly.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor): scalar literal
  Rational(long p, long q) : v_(p, q) {
    if (q == 0) throw ZeroDenominator("rational literal with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) {}

  // Accepts "p/q", integers, and plain decimals ("-3", "0.25", "2.5e-3").
  static Rational parse(const std::string& text);

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (sgn(o.v_) == 0) throw ZeroDenominator("rational division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  bool integral() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double dbl() const { return v_.get_d(); }
  // Canonical "p/q" string (denominator kept even when it is 1).
  std::string str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }
  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline bool is_zero(const Rational& x) { return x.sign() == 0; }
inline bool is_one(const Rational& x) { return x == Rational(1); }

inline Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw PreconditionError("empty scalar literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    try {
      mpz_class num(s.substr(0, slash), 10);
      mpz_class den(s.substr(slash + 1), 10);
      if (den == 0) throw ZeroDenominator("rational literal with zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      return Rational(q);
    } catch (const std::invalid_argument&) {
      throw PreconditionError("bad rational literal: " + text);
    }
  }

  // Decimal form: [sign]digits[.digits][e[sign]digits]
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0, exponent = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((ch == 'e' || ch == 'E') && seen_digit) {
      exponent = std::strtol(s.c_str() + i + 1, nullptr, 10);
      if (s.substr(i + 1).find_first_not_of("+-0123456789") != std::string::npos)
        throw PreconditionError("bad scalar literal: " + text);
      break;
    } else {
      throw PreconditionError("bad scalar literal: " + text);
    }
  }
  if (!seen_digit) throw PreconditionError("bad scalar literal: " + text);

  mpz_class num(digits.empty() ? "0" : digits, 10);
  if (neg) num = -num;
  long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  mpq_class q = shift >= 0 ? mpq_class(num * pow10) : mpq_class(num, pow10);
  q.canonicalize();
  return Rational(q);
}

// Complex double scalar.  Same interface as Rational so the series and engine
// templates compile for both; division guards against vanishing denominators.
class Cx {
 public:
  Cx() : v_(0.0, 0.0) {}
  Cx(double re) : v_(re, 0.0) {}  // NOLINT(google-explicit-constructor): scalar literal
  Cx(long n) : v_(double(n), 0.0) {}  // NOLINT(google-explicit-constructor)
  Cx(double re, double im) : v_(re, im) {}
  Cx(std::complex<double> v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  Cx operator-() const { return Cx(-v_); }
  Cx& operator+=(const Cx& o) {
    v_ += o.v_;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    v_ -= o.v_;
    return *this;
  }
  Cx& operator*=(const Cx& o) {
    v_ *= o.v_;
    return *this;
  }
  Cx& operator/=(const Cx& o) {
    if (std::abs(o.v_) < FloatTol::eps_div)
      throw ZeroDenominator("complex division by (numerically) zero");
    v_ /= o.v_;
    return *this;
  }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
  friend Cx operator/(Cx a, const Cx& b) { return a /= b; }
  friend bool operator==(const Cx& a, const Cx& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Cx& a, const Cx& b) { return a.v_ != b.v_; }

  double re() const { return v_.real(); }
  double im() const { return v_.imag(); }
  double abs() const { return std::abs(v_); }
  std::complex<double> cplx() const { return v_; }
  std::string str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", v_.real(), v_.imag());
    return buf;
  }

 private:
  std::complex<double> v_;
};

inline bool is_zero(const Cx& x) { return x.re() == 0.0 && x.im() == 0.0; }
inline bool is_one(const Cx& x) { return x.re() == 1.0 && x.im() == 0.0; }

// Uniform scalar interface for generic code.  `eq` is exact for rationals and
// the relative |a-b| <= eps_eq * max(1, |a|, |b|) test for complex doubles.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr const char* name = "rational";
  static Rational from_int(long n) { return Rational(n); }
  static Rational from_ratio(long p, long q) { return Rational(p, q); }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool resonance_zero(const Rational& x) { return is_zero(x); }
  static double abs_dbl(const Rational& x) { return std::fabs(x.dbl()); }
  static bool neg_is_nonneg_int(const Rational& x) { return x.integral() && x.sign() <= 0; }
  static bool is_int(const Rational& x) { return x.integral(); }
  static std::complex<double> to_complex(const Rational& x) { return {x.dbl(), 0.0}; }
  static std::string display(const Rational& x) { return x.str(); }
};

template <>
struct ScalarOps<Cx> {
  static constexpr const char* name = "complex";
  static Cx from_int(long n) { return Cx(double(n)); }
  static Cx from_ratio(long p, long q) { return Cx(double(p) / double(q)); }
  static bool eq(const Cx& a, const Cx& b) {
    double scale = std::max({1.0, a.abs(), b.abs()});
    return (a - b).abs() <= FloatTol::eps_eq * scale;
  }
  static bool resonance_zero(const Cx& x) { return x.abs() < FloatTol::eps_res; }
  static double abs_dbl(const Cx& x) { return x.abs(); }
  static bool neg_is_nonneg_int(const Cx& x) {
    double r = std::round(x.re());
    double scale = std::max(1.0, x.abs());
    return std::fabs(x.im()) <= FloatTol::eps_eq * scale &&
           std::fabs(x.re() - r) <= FloatTol::eps_eq * scale && r <= 0.5;
  }
  static bool is_int(const Cx& x) {
    double scale = std::max(1.0, x.abs());
    return std::fabs(x.im()) <= FloatTol::eps_eq * scale &&
           std::fabs(x.re() - std::round(x.re())) <= FloatTol::eps_eq * scale;
  }
  static std::complex<double> to_complex(const Cx& x) { return x.cplx(); }
  static std::string display(const Cx& x) { return x.str(); }
};

// Rising factorial (x)_n, extended to negative n by (x)_{-k} = 1/((x-1)...(x-k)).
// A vanishing factor in the negative-n denominator throws ZeroDenominator.
template <class S>
S pochhammer(const S& x, int n) {
  S acc = ScalarOps<S>::from_int(1);
  if (n >= 0) {
    for (int j = 0; j < n; ++j) acc *= x + ScalarOps<S>::from_int(j);
    return acc;
  }
  for (int j = 1; j <= -n; ++j) {
    S factor = x - ScalarOps<S>::from_int(j);
    if (ScalarOps<S>::resonance_zero(factor))
      throw ZeroDenominator("pochhammer: zero factor at negative index");
    acc *= factor;
  }
  return ScalarOps<S>::from_int(1) / acc;
}

// Generalized binomial coefficient C(a, k) = (a-k+1)_k / k! for integer k >= 0.
template <class S>
S binom_general(const S& a, int k) {
  if (k < 0) return S();
  S num = pochhammer(a - ScalarOps<S>::from_int(k) + ScalarOps<S>::from_int(1), k);
  S fact = ScalarOps<S>::from_int(1);
  for (int j = 2; j <= k; ++j) fact *= ScalarOps<S>::from_int(j);
  return num / fact;
}

}  // namespace heunforge
