#include "spingate/validation.hpp"

#include <algorithm>
#include <cmath>

namespace spingate {

double frameMismatch(const PulseSpec& pulse, const IntegratorConfig& cfg, std::size_t samples,
                     double* worstNormDrift) {
  PulseSpec lab = pulse, rotating = pulse;
  lab.frame = Frame::Lab;
  rotating.frame = Frame::Rotating;
  const Trajectory a = simulatePulse(lab, cfg, samples);
  const Trajectory b = simulatePulse(rotating, cfg, samples);

  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a.states[i].size(); ++k) {
      worst = std::max(worst, std::abs(std::norm(a.states[i][k]) - std::norm(b.states[i][k])));
    }
  }
  if (worstNormDrift) *worstNormDrift = std::max({*worstNormDrift, normDrift(a), normDrift(b)});
  return worst;
}

std::vector<CheckResult> runValidationSuite(const ExperimentConfig& config) {
  config.validate();
  const IntegratorConfig cfg = config.integrator();
  const double deltaCheck = config.delta != 0.0 ? config.delta : 5e-4;

  std::vector<CheckResult> checks;
  auto add = [&](std::string name, double value, double limit) {
    checks.push_back({std::move(name), value, limit, value <= limit});
  };
  double drift = 0.0;

  OneQubitParams one = config.notParams();
  one.modulation = AngularFrequency{};
  {
    const GateRun run = runNotGate(one, StateVector::basis(2, 0), cfg);
    drift = std::max(drift, run.normDrift);
    add("resonant NOT: 1 - |c1(tau)|^2", 1.0 - run.fidelity.targetPopulation, 1e-8);
  }

  one.modulation = AngularFrequency::twoPiMHz(deltaCheck);
  {
    const auto pulse = PulseSpec::piPulse(one, StateVector::basis(2, 0));
    const Trajectory traj = simulatePulse(pulse, cfg, 2000);
    drift = std::max(drift, normDrift(traj));
    const MathieuCheck m = mathieuResidual(traj, one);
    add("second-order residual (normalized)", m.residual, 1e-4);
    add("d1 reconstruction error", m.reconstructionError, 1e-6);
  }

  const TwoQubitParams two = config.cnotParams();
  for (const double delta : {0.0, deltaCheck}) {
    const std::string at = delta == 0.0 ? " at delta = 0" : " at delta = " + std::to_string(deltaCheck);
    OneQubitParams p1 = one;
    p1.modulation = AngularFrequency::twoPiMHz(delta);
    add("frame equivalence NOT" + at,
        frameMismatch(PulseSpec::piPulse(p1, StateVector::basis(2, 0)), cfg, 100, &drift), 1e-7);

    TwoQubitParams p2 = two;
    p2.modulation = AngularFrequency::twoPiMHz(delta);
    add("frame equivalence CNOT digital" + at,
        frameMismatch(PulseSpec::piPulse(p2, digitalInitialState()), cfg, 100, &drift), 1e-7);
    add("frame equivalence CNOT superposition" + at,
        frameMismatch(PulseSpec::piPulse(p2, superpositionInitialState()), cfg, 100, &drift), 1e-7);
  }

  add("max norm drift", drift, 1e-9);
  return checks;
}

}  // namespace spingate
