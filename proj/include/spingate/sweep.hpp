#pragma once

#include <optional>
#include <vector>

#include "spingate/errors.hpp"
#include "spingate/gates.hpp"

namespace spingate {

enum class GateKind { Not, CnotDigital, CnotSuperposition };
enum class GridScale { Linear, Log };
enum class FidelityMeasure { OverlapVsReference, Bhattacharyya, TargetPopulation };

/// M3 for the basis-state experiments, M2 for the superposition input.
FidelityMeasure defaultMeasure(GateKind gate);
double measureValue(const FidelityReport& report, FidelityMeasure measure);

/// Dimension of the state evolved by a gate experiment (2 or 4).
std::size_t gateDimension(GateKind gate);
StateVector gateInitialState(GateKind gate);

struct SweepSpec {
  AngularFrequency deltaMin;
  AngularFrequency deltaMax = AngularFrequency::twoPiMHz(1e-2);
  std::size_t points = 201;
  GridScale scale = GridScale::Linear;
  GateKind gate = GateKind::Not;
  OneQubitParams notParams = defaultNotParams();
  TwoQubitParams cnotParams = defaultCnotParams();
  Frame frame = Frame::Rotating;
  double fidelityThreshold = 0.99;
  std::optional<FidelityMeasure> measure;  // unset: defaultMeasure(gate)
  std::size_t samples = 100;                // trajectory intervals per gate run

  void validate() const;
  /// Ascending grid with both ends hit exactly. Linear grids over [-b, -a] and [a, b] are exact
  /// negatives of each other.
  std::vector<AngularFrequency> grid() const;
  FidelityMeasure selectedMeasure() const { return measure.value_or(defaultMeasure(gate)); }
};

struct SweepRow {
  AngularFrequency delta;
  FidelityReport fidelity;
  std::vector<double> populations;  // final, per basis state
  double normDrift = 0.0;
};

struct SweepResult {
  GateKind gate = GateKind::Not;
  std::vector<SweepRow> rows;
  /// Last grid point before the selected measure first drops below the threshold, when the
  /// grid brackets a crossing. findThreshold refines it.
  std::optional<AngularFrequency> thresholdDeltaStar;
};

/// An individual gate run inside a sweep failed.
class SweepPointError : public Error {
public:
  SweepPointError(AngularFrequency delta, const std::string& what);
  AngularFrequency delta() const { return delta_; }

private:
  AngularFrequency delta_;
};

/// One gate experiment of the sweep's kind at the given modulation frequency.
GateRun runGateAt(const SweepSpec& spec, AngularFrequency delta, const IntegratorConfig& cfg,
                  ReferenceCache* cache = nullptr);

/// Runs every grid point. `jobs` worker threads (0 = hardware concurrency); the result does not
/// depend on the worker count.
SweepResult runSweep(const SweepSpec& spec, const IntegratorConfig& cfg, unsigned jobs = 1);

/// First crossing from the left of the selected measure through the threshold, refined by
/// bisection to a relative bracket width of 2.5e-4. Returns the lower (passing) end.
/// Throws ThresholdNotBracketed unless the measure passes at deltaMin and fails at deltaMax.
AngularFrequency findThreshold(const SweepSpec& spec, const IntegratorConfig& cfg, unsigned jobs = 1);

/// alpha(t) of d0'' + alpha d0 = 0, the second-order form of the rotating-frame one-qubit system.
Complex mathieuAlpha(double t, const OneQubitParams& p);

struct MathieuCheck {
  /// max over interior samples of |d0'' + alpha d0| / max |alpha d0|, d0'' by central differences.
  double residual = 0.0;
  /// max |d1 - d1_rec|, d1_rec rebuilt from d0 and the right-hand-side derivative of d0.
  double reconstructionError = 0.0;
};

/// Checks a densely sampled (>= 1000 samples) rotating-frame one-qubit trajectory against the
/// second-order equation and the d1 reconstruction formula.
MathieuCheck mathieuResidual(const Trajectory& rotatingRun, const OneQubitParams& p);

}  // namespace spingate
