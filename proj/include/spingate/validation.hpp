#pragma once

#include <string>
#include <vector>

#include "spingate/config.hpp"

namespace spingate {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;  // pass iff value <= limit
  bool passed = false;
};

/// Maximum over samples and basis states of | |lab|^2 - |rotating|^2 | for the same pulse run
/// in both frames. Both runs use the given sampling.
double frameMismatch(const PulseSpec& pulse, const IntegratorConfig& cfg, std::size_t samples,
                     double* worstNormDrift = nullptr);

/// Internal-consistency checks on the configured parameter set:
///   - resonant NOT transfer,
///   - second-order (Mathieu) residual and d1 reconstruction at a nonzero delta,
///   - lab/rotating population agreement for NOT and both CNOT inputs at delta = 0 and nonzero delta,
///   - norm drift over all of the above.
/// The nonzero delta is the configured `delta`, or 5e-4 (2pi MHz) when that is zero.
std::vector<CheckResult> runValidationSuite(const ExperimentConfig& config);

}  // namespace spingate
