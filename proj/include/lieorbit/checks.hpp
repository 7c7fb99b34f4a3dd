#pragma once

#include "lieorbit/numerics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lieorbit {

struct CheckResult {
  std::string suite;
  std::string name;
  std::string anchor;  // the statement being verified
  double residual = 0.0;
  double threshold = 0.0;
  bool lower_bound = false;  // pass when residual > threshold instead of <
  bool pass = false;
};

struct VerifyConfig {
  std::string algebra = "sl2c";
  std::string h_spec = "regular";
  std::uint64_t seed = 1;
  Tolerance tol;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  [[nodiscard]] bool pass() const;
  [[nodiscard]] int failures() const;
};

/// Factor applied to every upper-bound threshold: 1 at the default
/// tolerance, 0 when both epsilons are 0.
double threshold_scale(const Tolerance& tol);

const std::vector<std::string>& suite_names();

/// Runs one suite ("algebra", "deformation", "semidirect", "symplectic") or
/// "all". Throws ConfigurationError / DomainError for invalid configurations.
VerifyReport run_suite(const std::string& suite, const VerifyConfig& cfg);

}  // namespace lieorbit
