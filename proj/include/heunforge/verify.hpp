#pragma once

#include <string>
#include <vector>

namespace heunforge::verify {

// Outcome of one self-check suite.  max_deviation is 0 when every comparison
// in the suite is exact (rational arithmetic); otherwise it is the largest
// numeric deviation observed.  notes carries a short human-readable summary.
struct SuiteResult {
  std::string suite;
  int cases = 0;
  double max_deviation = 0.0;
  bool pass = false;
  std::string notes;
};

// Tunables a front end may override; order == -1 means the per-suite default.
struct SuiteOptions {
  double qmag = 0.05;
  int order = -1;
  double fd_step = 1e-3;
};

SuiteResult jacobi_limit(int n_max = 8, int points = 20);
SuiteResult closed_form_eigen(int points = 20);
SuiteResult closed_form_coeffs(int points = 10);
SuiteResult appc(int points = 10);
SuiteResult engines_xval(int points = 10);
SuiteResult kappa_limit();
SuiteResult s4(int order = 4);
SuiteResult residual_suite(double qmag = 0.05, int order = 8, double fd_step = 1e-3);
SuiteResult kernel_suite(int configs = 10);
SuiteResult basis_suite();
SuiteResult eta1_suite();
SuiteResult integrals_suite();

// Names accepted by run(), in the order a full report should list them.
std::vector<std::string> names();
SuiteResult run(const std::string& name, const SuiteOptions& opt = {});

}  // namespace heunforge::verify
