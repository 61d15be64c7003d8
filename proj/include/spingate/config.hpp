#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "spingate/sweep.hpp"

namespace spingate {

/// Everything a command-line experiment needs. Frequencies are in units of 2pi MHz, times in us.
///
/// Text form: one `key = value` per line, `#` starts a comment, keys may appear once.
///
///   gate          not | cnot-digital | cnot-superposition
///   rabi larmor larmor1 larmor2 coupling drive        frequencies (drive: unset = resonant)
///   delta delta_min delta_max delta_points scale      modulation and sweep grid (linear | log)
///   frame         rotating | lab
///   rel_tol abs_tol max_step max_steps samples        integrator and trajectory sampling
///   fidelity measure                                  threshold and m1 | m2 | m3 (unset = per gate)
///   out jobs                                          output path (empty = stdout), worker threads
struct ExperimentConfig {
  GateKind gate = GateKind::Not;
  double rabi = 0.1;
  double larmor = 200.0;
  double larmor1 = 100.0;
  double larmor2 = 110.0;
  double coupling = 10.0;
  std::optional<double> drive;
  double delta = 0.0;
  double deltaMin = 0.0;
  double deltaMax = 1e-2;
  std::size_t deltaPoints = 201;
  GridScale scale = GridScale::Linear;
  Frame frame = Frame::Rotating;
  double relTol = 1e-12;
  double absTol = 1e-14;
  double maxStep = 0.0;
  std::uint64_t maxSteps = 100'000'000;
  std::size_t samples = 100;
  double fidelity = 0.99;
  std::optional<FidelityMeasure> measure;
  std::string out;
  unsigned jobs = 0;

  /// Assigns one key from its text value. Throws ParseError (line 0) for an unknown key or a
  /// value that does not parse; range checks are left to validate().
  void set(std::string_view key, std::string_view value);
  /// Throws ValidationError naming the first offending field.
  void validate() const;
  /// Text form that parseConfig maps back to an equal config.
  std::string serialize() const;

  OneQubitParams notParams() const;
  TwoQubitParams cnotParams() const;
  IntegratorConfig integrator() const;
  SweepSpec sweepSpec() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Applies a document on top of `config` without validating the result.
void loadConfig(ExperimentConfig& config, std::string_view text);

/// Defaults + document, validated.
ExperimentConfig parseConfig(std::string_view text);

std::string_view toString(GateKind gate);
std::string_view toString(Frame frame);
std::string_view toString(GridScale scale);
std::string_view toString(FidelityMeasure measure);

}  // namespace spingate
