#pragma once

#include <map>
#include <mutex>
#include <string>
#include <variant>

#include "spingate/integrator.hpp"
#include "spingate/spin_model.hpp"

namespace spingate {

/// Gate-quality measures, all squared magnitudes in [0, 1].
struct FidelityReport {
  /// M1: |<reference|sim>|^2, reference = the same pulse simulated without field modulation.
  double overlapVsReference = 0.0;
  /// M2: (sum_i sqrt(P_i^sim P_i^ideal))^2, blind to phases.
  double bhattacharyyaVsIdeal = 0.0;
  /// M3: population of the designated target basis state.
  double targetPopulation = 0.0;
};

/// pi / rabi in us. Throws DomainError unless rabi > 0.
double piPulseDuration(AngularFrequency rabi);

/// Swaps |0> and |1>, each picking up a factor e^{i pi/2}.
StateVector idealNotTarget(const StateVector& initial);
/// Swaps |10> and |11>, each picking up a factor e^{i pi/2}; |00>, |01> untouched.
StateVector idealCnotTarget(const StateVector& initial);

/// Index of the largest-population basis state (lowest index on ties).
std::size_t dominantBasisState(const StateVector& state);

/// Throws ContractViolation on mismatched dimensions or an out-of-range target.
FidelityReport fidelityReport(std::span<const Complex> sim, const StateVector& ideal,
                              std::span<const Complex> reference, std::size_t targetIndex);
inline FidelityReport fidelityReport(const StateVector& sim, const StateVector& ideal,
                                     const StateVector& reference) {
  return fidelityReport(sim.amplitudes(), ideal, reference.amplitudes(), dominantBasisState(ideal));
}

// Reference parameter sets (2pi MHz): Omega = 0.1, w0 = 200 and Omega = 0.1, w1 = 100, w2 = 110,
// J = 10, with the drive tuned to the respective resonance.
OneQubitParams defaultNotParams(AngularFrequency modulation = {});
TwoQubitParams defaultCnotParams(AngularFrequency modulation = {});

/// |10>: control on, target off.
StateVector digitalInitialState();
/// sqrt(2/10)|00> + sqrt(1/10)|01> + sqrt(6/10)|10> + sqrt(1/10)|11>.
StateVector superpositionInitialState();

struct PulseSpec {
  double duration = 0.0;  // us
  Frame frame = Frame::Rotating;
  std::variant<OneQubitParams, TwoQubitParams> params;
  StateVector initial;

  /// duration = pulseArea * pi / Omega; pulseArea = 1 is a pi-pulse.
  static PulseSpec piPulse(const OneQubitParams& p, StateVector initial,
                           Frame frame = Frame::Rotating, double pulseArea = 1.0);
  static PulseSpec piPulse(const TwoQubitParams& p, StateVector initial,
                           Frame frame = Frame::Rotating, double pulseArea = 1.0);
};

/// Final states of unmodulated (delta = 0) pulses, keyed by everything else that defines the run.
/// Concurrent lookups are safe; a missing entry is computed outside the lock and the first
/// inserted value wins (runs are deterministic, so every candidate is identical).
class ReferenceCache {
public:
  std::vector<Complex> finalState(const PulseSpec& pulse, const IntegratorConfig& cfg,
                                  std::size_t samples);
  std::size_t size() const;

private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<Complex>> entries_;
};

struct GateRun {
  Trajectory trajectory;
  FidelityReport fidelity;
  StateVector ideal;
  std::size_t target = 0;
  double normDrift = 0.0;
};

/// Simulates a pulse, samples it at `samples` + 1 evenly spaced times and scores the final
/// state against the ideal target of the gate implied by the dimension (NOT or CNOT).
/// Without a cache the unmodulated reference is integrated on the spot.
GateRun runPulse(const PulseSpec& pulse, const IntegratorConfig& cfg, std::size_t samples = 100,
                 ReferenceCache* cache = nullptr);

GateRun runNotGate(const OneQubitParams& p, const StateVector& initial, const IntegratorConfig& cfg,
                   Frame frame = Frame::Rotating, std::size_t samples = 100,
                   ReferenceCache* cache = nullptr);
GateRun runCnotGate(const TwoQubitParams& p, const StateVector& initial,
                    const IntegratorConfig& cfg, Frame frame = Frame::Rotating,
                    std::size_t samples = 100, ReferenceCache* cache = nullptr);

/// Integrates a pulse without scoring it.
Trajectory simulatePulse(const PulseSpec& pulse, const IntegratorConfig& cfg, std::size_t samples);

}  // namespace spingate
