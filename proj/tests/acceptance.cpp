// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Each criterion re-checks the suite verdict against a bound pinned here, so
// the gate stays honest even if a suite's internal tolerances drift.

#include <chrono>
#include <cstdio>
#include <string>

#include "heunforge/verify.hpp"

namespace {

int failures = 0;

void criterion(int idx, const char* label, double time_limit_s,
               const heunforge::verify::SuiteResult& r, double pinned_dev, double elapsed_s) {
  const bool ok = r.pass && r.max_deviation <= pinned_dev && elapsed_s < time_limit_s;
  std::printf("[%s] %2d. %-58s cases=%-4d max_dev=%.3e (limit %.0e)  %5.2f s\n",
              ok ? "PASS" : "FAIL", idx, label, r.cases, r.max_deviation, pinned_dev, elapsed_s);
  if (!ok) {
    ++failures;
    std::printf("       suite=%s pass=%d notes: %s\n", r.suite.c_str(), int(r.pass),
                r.notes.c_str());
  }
}

template <class F>
std::pair<heunforge::verify::SuiteResult, double> timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  heunforge::verify::SuiteResult r = f();
  const auto t1 = std::chrono::steady_clock::now();
  return {r, std::chrono::duration<double>(t1 - t0).count()};
}

heunforge::verify::SuiteResult merge(const heunforge::verify::SuiteResult& a,
                                     const heunforge::verify::SuiteResult& b) {
  heunforge::verify::SuiteResult m;
  m.suite = a.suite + "+" + b.suite;
  m.cases = a.cases + b.cases;
  m.max_deviation = a.max_deviation > b.max_deviation ? a.max_deviation : b.max_deviation;
  m.pass = a.pass && b.pass;
  m.notes = a.notes + " / " + b.notes;
  return m;
}

}  // namespace

int main() {
  using namespace heunforge::verify;

  {
    auto [r, s] = timed([] { return jacobi_limit(8, 20); });
    criterion(1, "trigonometric limit: polynomials and constant eigenvalues", 5.0, r, 0.0, s);
  }
  {
    auto [r, s] = timed([] { return closed_form_eigen(20); });
    criterion(2, "closed-form eigenvalue corrections, orders 1 and 2", 5.0, r, 0.0, s);
  }
  {
    auto [r, s] = timed([] { return closed_form_coeffs(10); });
    criterion(3, "closed-form low-order table entries", 2.0, r, 0.0, s);
  }
  {
    auto [r, s] = timed([] { return engines_xval(10); });
    criterion(4, "engine cross-validation: bridge, path sum, fixed point", 60.0, r, 0.0, s);
  }
  {
    auto [r, s] = timed([] { return kappa_limit(); });
    criterion(5, "small-kappa limit of the path-sum eigenvalue", 30.0, r, 1e-3, s);
  }
  {
    auto [r, s] = timed([] { return s4(4); });
    criterion(6, "coupling permutation symmetry at kappa = 0", 120.0, r, 0.0, s);
  }
  {
    auto [r, s] = timed([] { return integrals_suite(); });
    criterion(7, "delta collapse and classical contour identities", 30.0, r, 1e-8, s);
  }
  {
    auto [r, s] = timed([] { return eta1_suite(); });
    criterion(8, "special-function identity suite", 10.0, r, 1e-10, s);
  }
  {
    auto [r, s] = timed([] { return basis_suite(); });
    criterion(9, "basis table structure and quadrature", 20.0, r, 1e-8, s);
  }
  {
    auto [rr, s1] = timed([] { return residual_suite(0.05, 8, 1e-3); });
    auto [rk, s2] = timed([] { return kernel_suite(10); });
    criterion(10, "defining-equation residual and kernel identity", 60.0, merge(rr, rk), 1e-6,
              s1 + s2);
  }

  if (failures) {
    std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 10 criteria passed\n");
  return 0;
}
