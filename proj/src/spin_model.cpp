#include "spingate/spin_model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "spingate/errors.hpp"

namespace spingate {

namespace {

constexpr Complex kI{0.0, 1.0};

void requireFinite(AngularFrequency f, const char* field) {
  if (!f.finite()) throw ValidationError(field, "must be finite");
}

void requirePositive(AngularFrequency f, const char* field) {
  requireFinite(f, field);
  if (!(f.radPerUs() > 0.0)) throw ValidationError(field, "must be > 0");
}

void requireDimension(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ContractViolation(std::string(what) + ": expected dimension " + std::to_string(want) +
                            ", got " + std::to_string(got));
  }
}

// Phase exponent k in  lab = exp(i k w t) * rotating  for each basis state.
std::span<const double> framePhases(std::size_t dimension) {
  static constexpr double one[] = {0.5, -0.5};
  static constexpr double two[] = {0.5, -0.5, -0.5, -1.5};
  if (dimension == 2) return one;
  if (dimension == 4) return two;
  throw ContractViolation("frame map: dimension must be 2 or 4, got " + std::to_string(dimension));
}

}  // namespace

void OneQubitParams::validate() const {
  requirePositive(larmor, "larmor");
  requirePositive(rabi, "rabi");
  requireFinite(drive, "drive");
  requireFinite(modulation, "delta");
}

void TwoQubitParams::validate() const {
  requirePositive(larmor1, "larmor1");
  requirePositive(larmor2, "larmor2");
  if (larmor1 == larmor2) throw ValidationError("larmor2", "must differ from larmor1");
  requirePositive(coupling, "coupling");
  requirePositive(rabi, "rabi");
  requireFinite(drive, "drive");
  requireFinite(modulation, "delta");
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != 2 && amplitudes_.size() != 4) {
    throw ContractViolation("state vector must have dimension 2 or 4, got " +
                            std::to_string(amplitudes_.size()));
  }
  const double n = normSquared(amplitudes_);
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw ContractViolation("state vector is not normalized (|psi|^2 = " + std::to_string(n) + ")");
  }
}

StateVector StateVector::basis(std::size_t dimension, std::size_t index) {
  if (index >= dimension) throw ContractViolation("basis index out of range");
  std::vector<Complex> a(dimension);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

std::vector<double> StateVector::populations() const { return spingate::populations(amplitudes_); }

std::vector<double> populations(std::span<const Complex> amplitudes) {
  std::vector<double> p(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) p[i] = std::norm(amplitudes[i]);
  return p;
}

double normSquared(std::span<const Complex> amplitudes) {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

void rhsOneQubit(Frame frame, double t, std::span<const Complex> c, const OneQubitParams& p,
                 std::span<Complex> out) {
  requireDimension(c.size(), 2, "one-qubit rhs state");
  requireDimension(out.size(), 2, "one-qubit rhs output");
  const double w0 = p.larmor.radPerUs() * std::cos(p.modulation.radPerUs() * t);
  const double halfRabi = 0.5 * p.rabi.radPerUs();
  if (frame == Frame::Lab) {
    const Complex carrier = std::polar(1.0, p.drive.radPerUs() * t);
    out[0] = -kI * (-0.5 * w0 * c[0] - halfRabi * c[1] * carrier);
    out[1] = -kI * (0.5 * w0 * c[1] - halfRabi * c[0] * std::conj(carrier));
  } else {
    const double detuning = 0.5 * (p.drive.radPerUs() - w0);
    out[0] = -kI * (detuning * c[0] - halfRabi * c[1]);
    out[1] = -kI * (-detuning * c[1] - halfRabi * c[0]);
  }
}

void rhsTwoQubit(Frame frame, double t, std::span<const Complex> c, const TwoQubitParams& p,
                 std::span<Complex> out) {
  requireDimension(c.size(), 4, "two-qubit rhs state");
  requireDimension(out.size(), 4, "two-qubit rhs output");
  const double mod = std::cos(p.modulation.radPerUs() * t);
  const double w1 = p.larmor1.radPerUs() * mod;
  const double w2 = p.larmor2.radPerUs() * mod;
  const double quarterJ = 0.25 * p.coupling.radPerUs();
  const double halfRabi = 0.5 * p.rabi.radPerUs();

  double h00 = -0.5 * (w1 + w2) + quarterJ;
  double h01 = -0.5 * (w1 - w2) - quarterJ;
  double h10 = -0.5 * (w2 - w1) - quarterJ;
  double h11 = 0.5 * (w1 + w2) + quarterJ;

  Complex up{1.0, 0.0};    // multiplies amplitudes driven up from a lower-energy partner
  Complex down{1.0, 0.0};  // and its conjugate
  const double w = p.drive.radPerUs();
  if (frame == Frame::Lab) {
    up = std::polar(1.0, w * t);
    down = std::conj(up);
  } else {
    h00 += 0.5 * w;
    h01 -= 0.5 * w;
    h10 -= 0.5 * w;
    h11 -= 1.5 * w;
  }

  out[0] = -kI * (h00 * c[0] - halfRabi * (c[1] + c[2]) * up);
  out[1] = -kI * (h01 * c[1] - halfRabi * (c[0] * down + c[3] * up));
  out[2] = -kI * (h10 * c[2] - halfRabi * (c[0] * down + c[3] * up));
  out[3] = -kI * (h11 * c[3] - halfRabi * (c[1] + c[2]) * down);
}

std::array<Complex, 2> rhsOneQubit(Frame frame, double t, std::span<const Complex> state,
                                   const OneQubitParams& p) {
  std::array<Complex, 2> out{};
  rhsOneQubit(frame, t, state, p, out);
  return out;
}

std::array<Complex, 4> rhsTwoQubit(Frame frame, double t, std::span<const Complex> state,
                                   const TwoQubitParams& p) {
  std::array<Complex, 4> out{};
  rhsTwoQubit(frame, t, state, p, out);
  return out;
}

std::array<AngularFrequency, 4> energySpectrum(const TwoQubitParams& p) {
  const double w1 = p.larmor1.radPerUs();
  const double w2 = p.larmor2.radPerUs();
  const double halfJ = 0.5 * p.coupling.radPerUs();
  return {
      AngularFrequency::radPerUs(-0.5 * (w1 + w2 - halfJ)),
      AngularFrequency::radPerUs(-0.5 * (w1 - w2 + halfJ)),
      AngularFrequency::radPerUs(-0.5 * (-w1 + w2 + halfJ)),
      AngularFrequency::radPerUs(-0.5 * (-w1 - w2 - halfJ)),
  };
}

AngularFrequency cnotResonance(const TwoQubitParams& p) {
  const auto e = energySpectrum(p);
  return e[3] - e[2];
}

AngularFrequency notResonance(const OneQubitParams& p) { return p.larmor; }

std::vector<Complex> labToRotating(std::span<const Complex> lab, double t, AngularFrequency drive) {
  const auto k = framePhases(lab.size());
  std::vector<Complex> out(lab.size());
  for (std::size_t i = 0; i < lab.size(); ++i) {
    out[i] = lab[i] * std::polar(1.0, -k[i] * drive.radPerUs() * t);
  }
  return out;
}

std::vector<Complex> rotatingToLab(std::span<const Complex> rotating, double t,
                                   AngularFrequency drive) {
  const auto k = framePhases(rotating.size());
  std::vector<Complex> out(rotating.size());
  for (std::size_t i = 0; i < rotating.size(); ++i) {
    out[i] = rotating[i] * std::polar(1.0, k[i] * drive.radPerUs() * t);
  }
  return out;
}

}  // namespace spingate
