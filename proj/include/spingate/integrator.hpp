#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace spingate {

using Complex = std::complex<double>;

/// dy/dt = f(t, y), written into the output span.
using ComplexRhs = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dydt)>;

struct IntegratorConfig {
  double relTol = 1e-12;
  double absTol = 1e-14;
  /// Upper bound on |h|. Zero selects |t1 - t0| / 100.
  double maxStep = 0.0;
  /// First trial step. Zero selects an automatic guess.
  double initialStep = 0.0;
  std::uint64_t maxSteps = 100'000'000;

  void validate() const;
};

/// Samples of an integration, evenly spaced in time, endpoints included.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<Complex>> states;
  std::vector<double> norms;  // sum of |amplitude|^2 per sample

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  const std::vector<Complex>& finalState() const { return states.back(); }
};

/// Adaptive Dormand-Prince 8(5,3) (DOP853) on the real/imaginary split of y.
///
/// The error of each step is measured against absTol + relTol * max(|y_n|, |y_n+1|) per real
/// component in RMS norm. Steps are clamped so every sample time (and t1) is hit exactly, and
/// the returned trajectory holds `samples + 1` evenly spaced states. `t1 < t0` integrates
/// backwards; `t1 == t0` yields the single sample y0. The state is never renormalized.
///
/// Throws IntegrationError when the step budget is exhausted, when the step size underflows,
/// or as soon as the right-hand side produces a non-finite value.
Trajectory integrate(const ComplexRhs& rhs, std::span<const Complex> y0, double t0, double t1,
                     const IntegratorConfig& cfg, std::size_t samples);

/// Largest | sum |a|^2 - 1 | over the samples of a trajectory.
double normDrift(const Trajectory& trajectory);

}  // namespace spingate
