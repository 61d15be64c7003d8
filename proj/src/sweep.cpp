#include "spingate/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace spingate {

namespace {

std::string describeDelta(AngularFrequency delta) {
  std::ostringstream os;
  os.precision(17);
  os << "delta = " << delta.twoPiMHz() << " (2pi MHz)";
  return os.str();
}

unsigned resolveJobs(unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return jobs;
}

}  // namespace

SweepPointError::SweepPointError(AngularFrequency delta, const std::string& what)
    : Error(describeDelta(delta) + ": " + what), delta_(delta) {}

FidelityMeasure defaultMeasure(GateKind gate) {
  return gate == GateKind::CnotSuperposition ? FidelityMeasure::Bhattacharyya
                                             : FidelityMeasure::TargetPopulation;
}

double measureValue(const FidelityReport& report, FidelityMeasure measure) {
  switch (measure) {
    case FidelityMeasure::OverlapVsReference: return report.overlapVsReference;
    case FidelityMeasure::Bhattacharyya: return report.bhattacharyyaVsIdeal;
    case FidelityMeasure::TargetPopulation: return report.targetPopulation;
  }
  return 0.0;
}

std::size_t gateDimension(GateKind gate) { return gate == GateKind::Not ? 2 : 4; }

StateVector gateInitialState(GateKind gate) {
  switch (gate) {
    case GateKind::Not: return StateVector::basis(2, 0);
    case GateKind::CnotDigital: return digitalInitialState();
    case GateKind::CnotSuperposition: return superpositionInitialState();
  }
  return StateVector::basis(2, 0);
}

void SweepSpec::validate() const {
  if (!deltaMin.finite()) throw ValidationError("delta_min", "must be finite");
  if (!deltaMax.finite()) throw ValidationError("delta_max", "must be finite");
  if (!(deltaMin < deltaMax)) throw ValidationError("delta_max", "must exceed delta_min");
  if (points < 2) throw ValidationError("delta_points", "must be >= 2");
  if (scale == GridScale::Log && !(deltaMin.radPerUs() > 0.0)) {
    throw ValidationError("delta_min", "must be > 0 for a log-scale grid");
  }
  if (!(fidelityThreshold > 0.0 && fidelityThreshold < 1.0)) {
    throw ValidationError("fidelity", "must lie in (0, 1)");
  }
  if (samples == 0) throw ValidationError("samples", "must be >= 1");
  if (gate == GateKind::Not) notParams.validate();
  else cnotParams.validate();
}

std::vector<AngularFrequency> SweepSpec::grid() const {
  std::vector<AngularFrequency> g(points);
  const double lo = deltaMin.radPerUs();
  const double hi = deltaMax.radPerUs();
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double k = static_cast<double>(i);
    double v;
    if (scale == GridScale::Linear) {
      v = (lo * (last - k) + hi * k) / last;
    } else {
      v = std::exp((std::log(lo) * (last - k) + std::log(hi) * k) / last);
    }
    g[i] = AngularFrequency::radPerUs(v);
  }
  g.front() = deltaMin;
  g.back() = deltaMax;
  return g;
}

GateRun runGateAt(const SweepSpec& spec, AngularFrequency delta, const IntegratorConfig& cfg,
                  ReferenceCache* cache) {
  const StateVector initial = gateInitialState(spec.gate);
  if (spec.gate == GateKind::Not) {
    OneQubitParams p = spec.notParams;
    p.modulation = delta;
    return runNotGate(p, initial, cfg, spec.frame, spec.samples, cache);
  }
  TwoQubitParams p = spec.cnotParams;
  p.modulation = delta;
  return runCnotGate(p, initial, cfg, spec.frame, spec.samples, cache);
}

SweepResult runSweep(const SweepSpec& spec, const IntegratorConfig& cfg, unsigned jobs) {
  spec.validate();
  cfg.validate();
  const auto grid = spec.grid();

  SweepResult result;
  result.gate = spec.gate;
  result.rows.resize(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());
  ReferenceCache cache;

  // Fill the reference before fanning out so workers only read it.
  try {
    (void)runGateAt(spec, AngularFrequency{}, cfg, &cache);
  } catch (const std::exception& e) {
    throw SweepPointError(AngularFrequency{}, std::string("reference run failed: ") + e.what());
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        GateRun run = runGateAt(spec, grid[i], cfg, &cache);
        result.rows[i] = SweepRow{grid[i], run.fidelity, populations(run.trajectory.finalState()),
                                  run.normDrift};
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const unsigned n = std::min<std::size_t>(resolveJobs(jobs), grid.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw SweepPointError(grid[i], e.what());
    }
  }

  const auto measure = spec.selectedMeasure();
  if (measureValue(result.rows.front().fidelity, measure) >= spec.fidelityThreshold) {
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
      if (measureValue(result.rows[i].fidelity, measure) < spec.fidelityThreshold) {
        result.thresholdDeltaStar = result.rows[i - 1].delta;
        break;
      }
    }
  }
  return result;
}

AngularFrequency findThreshold(const SweepSpec& spec, const IntegratorConfig& cfg, unsigned jobs) {
  const SweepResult coarse = runSweep(spec, cfg, jobs);
  const auto measure = spec.selectedMeasure();
  const double threshold = spec.fidelityThreshold;

  const double first = measureValue(coarse.rows.front().fidelity, measure);
  const double last = measureValue(coarse.rows.back().fidelity, measure);
  if (!(first >= threshold) || !(last < threshold)) {
    std::ostringstream os;
    os << "threshold " << threshold << " not bracketed: fidelity " << first << " at delta_min, "
       << last << " at delta_max";
    throw ThresholdNotBracketed(os.str());
  }

  std::size_t fail = 1;
  while (measureValue(coarse.rows[fail].fidelity, measure) >= threshold) ++fail;
  double lo = coarse.rows[fail - 1].delta.radPerUs();
  double hi = coarse.rows[fail].delta.radPerUs();

  ReferenceCache cache;
  while (hi - lo > 2.5e-4 * std::max(std::abs(lo), std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    const auto delta = AngularFrequency::radPerUs(mid);
    double value;
    try {
      value = measureValue(runGateAt(spec, delta, cfg, &cache).fidelity, measure);
    } catch (const std::exception& e) {
      throw SweepPointError(delta, e.what());
    }
    (value >= threshold ? lo : hi) = mid;
  }
  return AngularFrequency::radPerUs(lo);
}

Complex mathieuAlpha(double t, const OneQubitParams& p) {
  const double w = p.drive.radPerUs();
  if (!(w > 0.0)) throw DomainError("mathieu alpha needs a positive drive frequency");
  const double w0 = p.larmor.radPerUs();
  const double rabi = p.rabi.radPerUs();
  const double delta = p.modulation.radPerUs();
  const double bracket = 1.0 - (w0 / w) * std::cos(delta * t);
  return {0.25 * (rabi * rabi + w * w * bracket * bracket),
          0.5 * w0 * delta * std::sin(delta * t)};
}

MathieuCheck mathieuResidual(const Trajectory& run, const OneQubitParams& p) {
  if (run.size() < 1000) {
    throw ContractViolation("mathieu residual needs >= 1000 samples, got " +
                            std::to_string(run.size()));
  }
  for (const auto& s : run.states) {
    if (s.size() != 2) throw ContractViolation("mathieu residual needs a one-qubit trajectory");
  }

  MathieuCheck check;
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < run.size(); ++i) {
    const double t = run.times[i];
    const Complex d0 = run.states[i][0];
    const Complex alpha = mathieuAlpha(t, p);
    scale = std::max(scale, std::abs(alpha * d0));

    if (i > 0 && i + 1 < run.size()) {
      const double hm = t - run.times[i - 1];
      const double hp = run.times[i + 1] - t;
      const Complex second = 2.0 * ((run.states[i + 1][0] - d0) / hp - (d0 - run.states[i - 1][0]) / hm) /
                             (hm + hp);
      worst = std::max(worst, std::abs(second + alpha * d0));
    }

    const auto deriv = rhsOneQubit(Frame::Rotating, t, run.states[i], p);
    const double rabi = p.rabi.radPerUs();
    const double detuning = p.drive.radPerUs() - p.larmor.radPerUs() * std::cos(p.modulation.radPerUs() * t);
    const Complex rebuilt = (detuning / rabi) * d0 - Complex(0.0, 2.0 / rabi) * deriv[0];
    check.reconstructionError = std::max(check.reconstructionError, std::abs(rebuilt - run.states[i][1]));
  }
  check.residual = scale > 0.0 ? worst / scale : worst;
  return check;
}

}  // namespace spingate
