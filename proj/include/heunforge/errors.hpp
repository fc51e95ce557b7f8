#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heunforge {

// Division (scalar, series inversion, resolvent, ...) hit a denominator that
// is exactly zero, or too small for the floating-point mode to trust.
class ZeroDenominator : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside an operation's contract: wrong engine for the parameter
// regime, bad truncation order, undefined normalization, |q| >= 1, ...
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One vanishing recursion denominator: order ell, coefficient index m.
struct ResonanceHit {
  int ell = 0;
  int m = 0;
  double magnitude = 0.0;  // |denominator| (0 in exact mode)
};

// The expansion needs coefficients whose recursion denominator vanishes.
// Carries every offending (ell, m) so callers can report them all at once.
class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(int n, std::vector<ResonanceHit> hits)
      : std::runtime_error(format(n, hits)), n_(n), hits_(std::move(hits)) {}

  int n() const { return n_; }
  const std::vector<ResonanceHit>& hits() const { return hits_; }

 private:
  static std::string format(int n, const std::vector<ResonanceHit>& hits) {
    std::ostringstream os;
    os << "resonant denominator(s) for n = " << n << " at (ell, m):";
    for (const auto& h : hits) os << " (" << h.ell << ", " << h.m << ")";
    return os.str();
  }

  int n_;
  std::vector<ResonanceHit> hits_;
};

// A windowed Laurent multiplication dropped a term that could still have fed
// back into the requested coefficient range.
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heunforge
