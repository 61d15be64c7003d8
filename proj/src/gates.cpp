#include "spingate/gates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spingate/errors.hpp"

namespace spingate {

namespace {

constexpr Complex kHalfPiPhase{0.0, 1.0};  // e^{i pi/2}

void requireDimension(const StateVector& s, std::size_t d, const char* what) {
  if (s.dimension() != d) {
    throw ContractViolation(std::string(what) + ": expected dimension " + std::to_string(d));
  }
}

std::size_t dimensionOf(const PulseSpec& pulse) {
  return std::holds_alternative<OneQubitParams>(pulse.params) ? 2 : 4;
}

ComplexRhs makeRhs(const PulseSpec& pulse) {
  if (const auto* one = std::get_if<OneQubitParams>(&pulse.params)) {
    return [p = *one, frame = pulse.frame](double t, std::span<const Complex> y,
                                           std::span<Complex> out) { rhsOneQubit(frame, t, y, p, out); };
  }
  return [p = std::get<TwoQubitParams>(pulse.params), frame = pulse.frame](
             double t, std::span<const Complex> y, std::span<Complex> out) {
    rhsTwoQubit(frame, t, y, p, out);
  };
}

PulseSpec unmodulated(const PulseSpec& pulse) {
  PulseSpec ref = pulse;
  std::visit([](auto& p) { p.modulation = AngularFrequency{}; }, ref.params);
  return ref;
}

// Bit-exact description of an unmodulated run.
std::string cacheKey(const PulseSpec& pulse, const IntegratorConfig& cfg, std::size_t samples) {
  std::ostringstream key;
  auto put = [&](double v) { key << std::bit_cast<std::uint64_t>(v) << ','; };
  put(pulse.duration);
  key << (pulse.frame == Frame::Lab ? 'L' : 'R') << ';';
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, OneQubitParams>) {
          key << "1q;";
          put(p.larmor.radPerUs());
        } else {
          key << "2q;";
          put(p.larmor1.radPerUs());
          put(p.larmor2.radPerUs());
          put(p.coupling.radPerUs());
        }
        put(p.rabi.radPerUs());
        put(p.drive.radPerUs());
      },
      pulse.params);
  for (const auto& a : pulse.initial.amplitudes()) {
    put(a.real());
    put(a.imag());
  }
  put(cfg.relTol);
  put(cfg.absTol);
  put(cfg.maxStep);
  put(cfg.initialStep);
  key << cfg.maxSteps << ';' << samples;
  return key.str();
}

// Sample times clamp the step sequence, so the reference is integrated with the same sampling
// as the run it is compared against. At delta = 0 both then coincide bit for bit.
std::vector<Complex> referenceEndpoint(const PulseSpec& pulse, const IntegratorConfig& cfg,
                                       std::size_t samples) {
  return simulatePulse(unmodulated(pulse), cfg, samples).finalState();
}

}  // namespace

double piPulseDuration(AngularFrequency rabi) {
  if (!(rabi.radPerUs() > 0.0) || !rabi.finite()) {
    throw DomainError("pi-pulse duration needs a positive Rabi frequency");
  }
  return std::numbers::pi / rabi.radPerUs();
}

StateVector idealNotTarget(const StateVector& initial) {
  requireDimension(initial, 2, "ideal NOT target");
  return StateVector({kHalfPiPhase * initial[1], kHalfPiPhase * initial[0]});
}

StateVector idealCnotTarget(const StateVector& initial) {
  requireDimension(initial, 4, "ideal CNOT target");
  return StateVector(
      {initial[0], initial[1], kHalfPiPhase * initial[3], kHalfPiPhase * initial[2]});
}

std::size_t dominantBasisState(const StateVector& state) {
  const auto p = state.populations();
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

FidelityReport fidelityReport(std::span<const Complex> sim, const StateVector& ideal,
                              std::span<const Complex> reference, std::size_t targetIndex) {
  const std::size_t n = ideal.dimension();
  if (sim.size() != n || reference.size() != n) {
    throw ContractViolation("fidelity report: sim, ideal and reference must share a dimension");
  }
  if (targetIndex >= n) throw ContractViolation("fidelity report: target index out of range");

  Complex overlap{};
  double refNorm = 0.0, simNorm = 0.0;
  double bhattacharyya = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    overlap += std::conj(reference[i]) * sim[i];
    refNorm += std::norm(reference[i]);
    simNorm += std::norm(sim[i]);
    bhattacharyya += std::sqrt(std::norm(sim[i]) * std::norm(ideal[i]));
  }

  FidelityReport r;
  r.overlapVsReference = std::clamp(std::norm(overlap) / (refNorm * simNorm), 0.0, 1.0);
  r.bhattacharyyaVsIdeal = std::clamp(bhattacharyya * bhattacharyya, 0.0, 1.0);
  r.targetPopulation = std::clamp(std::norm(sim[targetIndex]), 0.0, 1.0);
  return r;
}

OneQubitParams defaultNotParams(AngularFrequency modulation) {
  OneQubitParams p;
  p.larmor = AngularFrequency::twoPiMHz(200.0);
  p.rabi = AngularFrequency::twoPiMHz(0.1);
  p.modulation = modulation;
  p.drive = notResonance(p);
  return p;
}

TwoQubitParams defaultCnotParams(AngularFrequency modulation) {
  TwoQubitParams p;
  p.larmor1 = AngularFrequency::twoPiMHz(100.0);
  p.larmor2 = AngularFrequency::twoPiMHz(110.0);
  p.coupling = AngularFrequency::twoPiMHz(10.0);
  p.rabi = AngularFrequency::twoPiMHz(0.1);
  p.modulation = modulation;
  p.drive = cnotResonance(p);
  return p;
}

StateVector digitalInitialState() { return StateVector::basis(4, 2); }

StateVector superpositionInitialState() {
  return StateVector({std::sqrt(0.2), std::sqrt(0.1), std::sqrt(0.6), std::sqrt(0.1)});
}

PulseSpec PulseSpec::piPulse(const OneQubitParams& p, StateVector initial, Frame frame,
                             double pulseArea) {
  if (initial.dimension() != 2) throw ContractViolation("NOT pulse needs a one-qubit state");
  return PulseSpec{pulseArea * piPulseDuration(p.rabi), frame, p, std::move(initial)};
}

PulseSpec PulseSpec::piPulse(const TwoQubitParams& p, StateVector initial, Frame frame,
                             double pulseArea) {
  if (initial.dimension() != 4) throw ContractViolation("CNOT pulse needs a two-qubit state");
  return PulseSpec{pulseArea * piPulseDuration(p.rabi), frame, p, std::move(initial)};
}

std::vector<Complex> ReferenceCache::finalState(const PulseSpec& pulse, const IntegratorConfig& cfg,
                                                std::size_t samples) {
  const std::string key = cacheKey(pulse, cfg, samples);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto state = referenceEndpoint(pulse, cfg, samples);
  std::lock_guard lock(mutex_);
  return entries_.try_emplace(key, std::move(state)).first->second;
}

std::size_t ReferenceCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

Trajectory simulatePulse(const PulseSpec& pulse, const IntegratorConfig& cfg, std::size_t samples) {
  std::visit([](const auto& p) { p.validate(); }, pulse.params);
  if (pulse.initial.dimension() != dimensionOf(pulse)) {
    throw ContractViolation("pulse: initial state dimension does not match the parameter set");
  }
  if (!(pulse.duration >= 0.0) || !std::isfinite(pulse.duration)) {
    throw ContractViolation("pulse: duration must be finite and non-negative");
  }
  return integrate(makeRhs(pulse), pulse.initial.amplitudes(), 0.0, pulse.duration, cfg, samples);
}

GateRun runPulse(const PulseSpec& pulse, const IntegratorConfig& cfg, std::size_t samples,
                 ReferenceCache* cache) {
  GateRun run{.trajectory = simulatePulse(pulse, cfg, samples),
              .fidelity = {},
              .ideal = dimensionOf(pulse) == 2 ? idealNotTarget(pulse.initial)
                                               : idealCnotTarget(pulse.initial)};
  run.target = dominantBasisState(run.ideal);
  run.normDrift = normDrift(run.trajectory);

  const bool modulated = std::visit(
      [](const auto& p) { return p.modulation.radPerUs() != 0.0; }, pulse.params);
  std::vector<Complex> reference;
  if (cache) reference = cache->finalState(pulse, cfg, samples);
  else if (modulated) reference = referenceEndpoint(pulse, cfg, samples);
  else reference = run.trajectory.finalState();

  run.fidelity = fidelityReport(run.trajectory.finalState(), run.ideal, reference, run.target);
  return run;
}

GateRun runNotGate(const OneQubitParams& p, const StateVector& initial, const IntegratorConfig& cfg,
                   Frame frame, std::size_t samples, ReferenceCache* cache) {
  return runPulse(PulseSpec::piPulse(p, initial, frame), cfg, samples, cache);
}

GateRun runCnotGate(const TwoQubitParams& p, const StateVector& initial,
                    const IntegratorConfig& cfg, Frame frame, std::size_t samples,
                    ReferenceCache* cache) {
  return runPulse(PulseSpec::piPulse(p, initial, frame), cfg, samples, cache);
}

}  // namespace spingate
