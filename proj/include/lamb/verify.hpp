#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamb/core.hpp"

namespace lamb {

struct CheckResult {
  int criterion = 0;
  std::string name;
  double value = 0.0;      ///< measured quantity
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  Material material;
  double theta0 = 0.45 * 3.14159265358979323846;
  std::uint64_t seed = 0;
  double accept_tol = 1e-8;
  double chain_tol = 1e-6;
};

/// Individual acceptance checks.  Resolutions are fixed per check
/// (64 for spectra and scans, 96 for completeness, 128/256 for the
/// Hilbert-Schmidt proxy).
CheckResult check_oracle_equivalence(const SuiteOptions& o, BCKind bc);
CheckResult check_sh_closed_form(const SuiteOptions& o);
CheckResult check_symbol_identity(const SuiteOptions& o);
CheckResult check_stable_solutions(const SuiteOptions& o);
CheckResult check_coercivity(const SuiteOptions& o);
CheckResult check_resolvent_rays(const SuiteOptions& o, BCKind bc);
CheckResult check_hilbert_schmidt(const SuiteOptions& o);
CheckResult check_non_self_adjoint(const SuiteOptions& o);
CheckResult check_completeness(const SuiteOptions& o, BCKind bc);
CheckResult check_jordan_chains(const SuiteOptions& o);
/// Oracle equivalence, resolvent rays and completeness under clamped-free.
CheckResult check_clamped_free(const SuiteOptions& o);

/// Criteria 1..11 in order.
std::vector<CheckResult> run_suite(const SuiteOptions& o);

}  // namespace lamb
