#include "spingate/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "spingate/csv.hpp"

namespace spingate {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void badValue(std::string_view key, std::string_view value, std::string_view expected) {
  throw ParseError(0, std::string(key) + ": invalid value '" + std::string(value) + "' (expected " +
                          std::string(expected) + ")");
}

double toDouble(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) badValue(key, v, "a number");
  return out;
}

template <class Int>
Int toInteger(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    badValue(key, v, "a non-negative integer");
  }
  return out;
}

GateKind toGate(std::string_view key, std::string_view v) {
  if (v == "not") return GateKind::Not;
  if (v == "cnot-digital" || v == "cnot") return GateKind::CnotDigital;
  if (v == "cnot-superposition") return GateKind::CnotSuperposition;
  badValue(key, v, "not | cnot-digital | cnot-superposition");
}

Frame toFrame(std::string_view key, std::string_view v) {
  if (v == "rotating") return Frame::Rotating;
  if (v == "lab") return Frame::Lab;
  badValue(key, v, "rotating | lab");
}

GridScale toScale(std::string_view key, std::string_view v) {
  if (v == "linear") return GridScale::Linear;
  if (v == "log") return GridScale::Log;
  badValue(key, v, "linear | log");
}

FidelityMeasure toMeasure(std::string_view key, std::string_view v) {
  if (v == "m1") return FidelityMeasure::OverlapVsReference;
  if (v == "m2") return FidelityMeasure::Bhattacharyya;
  if (v == "m3") return FidelityMeasure::TargetPopulation;
  badValue(key, v, "m1 | m2 | m3");
}

void requirePositive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be a finite value > 0");
}

void requireFinite(double v, const char* field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

AngularFrequency ghz(double v) { return AngularFrequency::twoPiMHz(v); }

}  // namespace

std::string_view toString(GateKind gate) {
  switch (gate) {
    case GateKind::Not: return "not";
    case GateKind::CnotDigital: return "cnot-digital";
    case GateKind::CnotSuperposition: return "cnot-superposition";
  }
  return "?";
}

std::string_view toString(Frame frame) { return frame == Frame::Lab ? "lab" : "rotating"; }

std::string_view toString(GridScale scale) { return scale == GridScale::Log ? "log" : "linear"; }

std::string_view toString(FidelityMeasure measure) {
  switch (measure) {
    case FidelityMeasure::OverlapVsReference: return "m1";
    case FidelityMeasure::Bhattacharyya: return "m2";
    case FidelityMeasure::TargetPopulation: return "m3";
  }
  return "?";
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "gate") gate = toGate(key, value);
  else if (key == "rabi") rabi = toDouble(key, value);
  else if (key == "larmor") larmor = toDouble(key, value);
  else if (key == "larmor1") larmor1 = toDouble(key, value);
  else if (key == "larmor2") larmor2 = toDouble(key, value);
  else if (key == "coupling") coupling = toDouble(key, value);
  else if (key == "drive") drive = value == "resonant" ? std::nullopt : std::optional(toDouble(key, value));
  else if (key == "delta") delta = toDouble(key, value);
  else if (key == "delta_min") deltaMin = toDouble(key, value);
  else if (key == "delta_max") deltaMax = toDouble(key, value);
  else if (key == "delta_points") deltaPoints = toInteger<std::size_t>(key, value);
  else if (key == "scale") scale = toScale(key, value);
  else if (key == "frame") frame = toFrame(key, value);
  else if (key == "rel_tol") relTol = toDouble(key, value);
  else if (key == "abs_tol") absTol = toDouble(key, value);
  else if (key == "max_step") maxStep = toDouble(key, value);
  else if (key == "max_steps") maxSteps = toInteger<std::uint64_t>(key, value);
  else if (key == "samples") samples = toInteger<std::size_t>(key, value);
  else if (key == "fidelity") fidelity = toDouble(key, value);
  else if (key == "measure") measure = value == "default" ? std::nullopt : std::optional(toMeasure(key, value));
  else if (key == "out") out = std::string(value);
  else if (key == "jobs") jobs = toInteger<unsigned>(key, value);
  else throw ParseError(0, "unknown key '" + std::string(key) + "'");
}

void ExperimentConfig::validate() const {
  requirePositive(rabi, "rabi");
  requirePositive(larmor, "larmor");
  requirePositive(larmor1, "larmor1");
  requirePositive(larmor2, "larmor2");
  if (larmor1 == larmor2) throw ValidationError("larmor2", "must differ from larmor1");
  requirePositive(coupling, "coupling");
  if (drive) requireFinite(*drive, "drive");
  requireFinite(delta, "delta");
  requireFinite(deltaMin, "delta_min");
  requireFinite(deltaMax, "delta_max");
  if (!(deltaMin < deltaMax)) throw ValidationError("delta_max", "must exceed delta_min");
  if (deltaPoints < 2) throw ValidationError("delta_points", "must be >= 2");
  if (scale == GridScale::Log && !(deltaMin > 0.0)) {
    throw ValidationError("delta_min", "must be > 0 for a log-scale grid");
  }
  requirePositive(relTol, "rel_tol");
  requirePositive(absTol, "abs_tol");
  if (!(maxStep >= 0.0) || !std::isfinite(maxStep)) {
    throw ValidationError("max_step", "must be >= 0 (0 selects the default)");
  }
  if (maxSteps == 0) throw ValidationError("max_steps", "must be > 0");
  if (samples == 0) throw ValidationError("samples", "must be >= 1");
  if (!(fidelity > 0.0 && fidelity < 1.0)) throw ValidationError("fidelity", "must lie in (0, 1)");
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  auto line = [&](std::string_view key, std::string_view value) { os << key << " = " << value << '\n'; };
  auto num = [&](std::string_view key, double v) { line(key, formatNumber(v)); };
  line("gate", toString(gate));
  num("rabi", rabi);
  num("larmor", larmor);
  num("larmor1", larmor1);
  num("larmor2", larmor2);
  num("coupling", coupling);
  if (drive) num("drive", *drive);
  num("delta", delta);
  num("delta_min", deltaMin);
  num("delta_max", deltaMax);
  line("delta_points", std::to_string(deltaPoints));
  line("scale", toString(scale));
  line("frame", toString(frame));
  num("rel_tol", relTol);
  num("abs_tol", absTol);
  num("max_step", maxStep);
  line("max_steps", std::to_string(maxSteps));
  line("samples", std::to_string(samples));
  num("fidelity", fidelity);
  if (measure) line("measure", toString(*measure));
  if (!out.empty()) line("out", out);
  line("jobs", std::to_string(jobs));
  return os.str();
}

OneQubitParams ExperimentConfig::notParams() const {
  OneQubitParams p;
  p.larmor = ghz(larmor);
  p.rabi = ghz(rabi);
  p.modulation = ghz(delta);
  p.drive = drive ? ghz(*drive) : notResonance(p);
  return p;
}

TwoQubitParams ExperimentConfig::cnotParams() const {
  TwoQubitParams p;
  p.larmor1 = ghz(larmor1);
  p.larmor2 = ghz(larmor2);
  p.coupling = ghz(coupling);
  p.rabi = ghz(rabi);
  p.modulation = ghz(delta);
  p.drive = drive ? ghz(*drive) : cnotResonance(p);
  return p;
}

IntegratorConfig ExperimentConfig::integrator() const {
  IntegratorConfig cfg;
  cfg.relTol = relTol;
  cfg.absTol = absTol;
  cfg.maxStep = maxStep;
  cfg.maxSteps = maxSteps;
  return cfg;
}

SweepSpec ExperimentConfig::sweepSpec() const {
  SweepSpec spec;
  spec.deltaMin = ghz(deltaMin);
  spec.deltaMax = ghz(deltaMax);
  spec.points = deltaPoints;
  spec.scale = scale;
  spec.gate = gate;
  spec.notParams = notParams();
  spec.cnotParams = cnotParams();
  spec.frame = frame;
  spec.fidelityThreshold = fidelity;
  spec.measure = measure;
  spec.samples = samples;
  return spec;
}

void loadConfig(ExperimentConfig& config, std::string_view text) {
  std::set<std::string, std::less<>> seen;
  std::size_t lineNo = 0;
  while (!text.empty()) {
    ++lineNo;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineNo, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(lineNo, "missing key before '='");
    if (!seen.emplace(key).second) throw ParseError(lineNo, "duplicate key '" + std::string(key) + "'");
    try {
      config.set(key, line.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(lineNo, e.what());
    }
  }
}

ExperimentConfig parseConfig(std::string_view text) {
  ExperimentConfig config;
  loadConfig(config, text);
  config.validate();
  return config;
}

}  // namespace spingate
