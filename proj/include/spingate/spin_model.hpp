#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "spingate/units.hpp"

namespace spingate {

using Complex = std::complex<double>;

/// Amplitude picture in which the equations of motion are written.
/// Lab: coefficients c (one qubit) / C (two qubits), carrier e^{+-i w t} in the drive terms.
/// Rotating: coefficients d / D after the phase substitution that removes the carrier from the drive.
enum class Frame { Lab, Rotating };

/// Single spin-1/2 in B = (Ba cos wt, -Ba sin wt, B0 cos dt).
struct OneQubitParams {
  AngularFrequency larmor;      // w0 = gamma B0(z0)
  AngularFrequency rabi;        // Omega = gamma Ba
  AngularFrequency drive;       // RF carrier w
  AngularFrequency modulation;  // delta

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Two Ising-coupled spins sharing the same RF drive and field modulation.
struct TwoQubitParams {
  AngularFrequency larmor1;
  AngularFrequency larmor2;
  AngularFrequency coupling;  // J
  AngularFrequency rabi;
  AngularFrequency drive;
  AngularFrequency modulation;

  void validate() const;
};

/// Normalized amplitude vector over |0>,|1> or |00>,|01>,|10>,|11> (left qubit = control).
class StateVector {
public:
  static constexpr double kNormTolerance = 1e-9;

  /// Checks dimension (2 or 4) and normalization; throws ContractViolation otherwise.
  explicit StateVector(std::vector<Complex> amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes)
      : StateVector(std::vector<Complex>(amplitudes)) {}

  /// Computational basis state |index> of the given dimension.
  static StateVector basis(std::size_t dimension, std::size_t index);

  std::size_t dimension() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  std::vector<double> populations() const;

private:
  std::vector<Complex> amplitudes_;
};

std::vector<double> populations(std::span<const Complex> amplitudes);
double normSquared(std::span<const Complex> amplitudes);

// Equations of motion. Both write d(state)/dt into `out` and throw ContractViolation on a
// dimension mismatch. Parameters are used as given (no validation) so that degenerate
// cases such as a switched-off drive can be probed.

void rhsOneQubit(Frame frame, double t, std::span<const Complex> state, const OneQubitParams& p,
                 std::span<Complex> out);
void rhsTwoQubit(Frame frame, double t, std::span<const Complex> state, const TwoQubitParams& p,
                 std::span<Complex> out);

std::array<Complex, 2> rhsOneQubit(Frame frame, double t, std::span<const Complex> state,
                                   const OneQubitParams& p);
std::array<Complex, 4> rhsTwoQubit(Frame frame, double t, std::span<const Complex> state,
                                   const TwoQubitParams& p);

/// Static-field (delta = 0) energies (E00, E01, E10, E11) of the diagonal Hamiltonian,
/// in angular-frequency units (hbar = 1). They sum to zero.
std::array<AngularFrequency, 4> energySpectrum(const TwoQubitParams& p);

/// Drive frequency resonant with the controlled flip |10> <-> |11>, i.e. E11 - E10.
AngularFrequency cnotResonance(const TwoQubitParams& p);

/// Drive frequency resonant with the single-spin flip: the Larmor frequency.
AngularFrequency notResonance(const OneQubitParams& p);

// Phase maps between the two frames at time t (componentwise |.|^2 preserved).
std::vector<Complex> labToRotating(std::span<const Complex> lab, double t, AngularFrequency drive);
std::vector<Complex> rotatingToLab(std::span<const Complex> rotating, double t,
                                   AngularFrequency drive);

}  // namespace spingate
