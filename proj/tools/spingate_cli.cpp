// Command-line front end. Talks to the simulator exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spingate/spingate.h"

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageFailure = 2;

struct CliError {
  int code;
  std::string message;
};

void check(sg_status status, const char* context) {
  if (status != SG_OK) {
    throw CliError{kRuntimeFailure, std::string(context) + ": " + sg_status_name(status) + ": " +
                                        sg_last_error()};
  }
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<sg_config, Deleter<sg_config, sg_config_destroy>>;
using GateRunPtr = std::unique_ptr<sg_gate_run, Deleter<sg_gate_run, sg_gate_run_destroy>>;
using SweepPtr = std::unique_ptr<sg_sweep, Deleter<sg_sweep, sg_sweep_destroy>>;
using ValidationPtr = std::unique_ptr<sg_validation, Deleter<sg_validation, sg_validation_destroy>>;

std::string owned(char* s) {
  std::string out = s ? s : "";
  sg_string_free(s);
  return out;
}

std::string getKey(const sg_config* config, const char* key) {
  char* value = nullptr;
  check(sg_config_get(config, key, &value), key);
  return owned(value);
}

std::string number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(12);
  os << v;
  return os.str();
}

// Flag name -> config key. Every flag is a plain override of the corresponding key.
const std::vector<std::pair<std::string, std::string>> kOverrides = {
    {"--gate", "gate"},           {"--rabi", "rabi"},           {"--larmor", "larmor"},
    {"--larmor1", "larmor1"},     {"--larmor2", "larmor2"},     {"--coupling", "coupling"},
    {"--drive", "drive"},         {"--delta", "delta"},         {"--delta-min", "delta_min"},
    {"--delta-max", "delta_max"}, {"--delta-points", "delta_points"},
    {"--scale", "scale"},         {"--frame", "frame"},         {"--rel-tol", "rel_tol"},
    {"--abs-tol", "abs_tol"},     {"--max-step", "max_step"},   {"--max-steps", "max_steps"},
    {"--samples", "samples"},     {"--fidelity", "fidelity"},   {"--measure", "measure"},
    {"--out", "out"},             {"--jobs", "jobs"},
};

struct Options {
  std::string configPath;
  std::map<std::string, std::string> overrides;  // key -> value
  std::string initial;                           // cnot-gate only
  bool gnuplot = false;
};

void addCommonOptions(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.configPath, "key = value configuration file")->check(CLI::ExistingFile);
  for (const auto& [flag, key] : kOverrides) {
    cmd->add_option_function<std::string>(
        flag, [&opts, key = key](const std::string& v) { opts.overrides[key] = v; },
        "override config key '" + key + "'");
  }
  cmd->add_flag("--gnuplot", opts.gnuplot, "also write <out>.gp plotting the CSV");
}

// forcedGate == "cnot" keeps a configured CNOT variant and otherwise selects the digital input.
ConfigPtr buildConfig(const Options& opts, const char* forcedGate) {
  sg_config* raw = nullptr;
  check(sg_config_create(&raw), "config");
  ConfigPtr config(raw);
  if (!opts.configPath.empty()) {
    std::ifstream in(opts.configPath);
    if (!in) throw CliError{kRuntimeFailure, "cannot read " + opts.configPath};
    std::stringstream text;
    text << in.rdbuf();
    check(sg_config_load(config.get(), text.str().c_str()), opts.configPath.c_str());
  }
  for (const auto& [key, value] : opts.overrides) {
    check(sg_config_set(config.get(), key.c_str(), value.c_str()), ("--" + key).c_str());
  }
  if (forcedGate && std::string(forcedGate) == "cnot") {
    if (getKey(config.get(), "gate") == "not") check(sg_config_set(config.get(), "gate", "cnot-digital"), "gate");
  } else if (forcedGate) {
    check(sg_config_set(config.get(), "gate", forcedGate), "gate");
  }
  check(sg_config_validate(config.get()), "config");
  return config;
}

unsigned jobsOf(const sg_config* config) { return static_cast<unsigned>(std::stoul(getKey(config, "jobs"))); }

void writeGnuplot(const Options& opts, const std::string& out, bool sweep, size_t dimension) {
  if (!opts.gnuplot) return;
  char* script = nullptr;
  check(sg_gnuplot_script(out.c_str(), sweep ? 1 : 0, dimension, &script), "gnuplot");
  const std::string text = owned(script);
  std::ofstream gp(out + ".gp");
  if (!(gp << text)) throw CliError{kRuntimeFailure, "cannot write " + out + ".gp"};
  std::cerr << "wrote " << out << ".gp\n";
}

size_t dimensionForGate(const std::string& gate) { return gate == "not" ? 2 : 4; }

int runGate(const Options& opts, const char* gate, bool csvOnly) {
  ConfigPtr config = buildConfig(opts, gate);
  sg_gate_run* raw = nullptr;
  check(sg_gate_run_create(config.get(), &raw), "gate run");
  GateRunPtr run(raw);
  const std::string out = getKey(config.get(), "out");

  size_t dim = 0;
  check(sg_gate_run_dimension(run.get(), &dim), "dimension");
  if (csvOnly) {
    check(sg_gate_run_write_csv(run.get(), out.c_str()), "trajectory csv");
    writeGnuplot(opts, out, false, dim);
    return 0;
  }

  double m1 = 0, m2 = 0, m3 = 0, drift = 0, duration = 0, drive = 0;
  check(sg_gate_run_fidelity(run.get(), &m1, &m2, &m3), "fidelity");
  check(sg_gate_run_norm_drift(run.get(), &drift), "norm drift");
  check(sg_gate_run_duration(run.get(), &duration), "duration");
  check(sg_gate_run_drive(run.get(), &drive), "drive");
  std::vector<double> pops(dim);
  check(sg_gate_run_final_populations(run.get(), pops.data(), pops.size()), "populations");

  static const char* oneQubit[] = {"p0", "p1"};
  static const char* twoQubit[] = {"p00", "p01", "p10", "p11"};
  std::cout << "gate          " << getKey(config.get(), "gate") << '\n'
            << "frame         " << getKey(config.get(), "frame") << '\n'
            << "drive_2piMHz  " << number(drive) << '\n'
            << "delta_2piMHz  " << getKey(config.get(), "delta") << '\n'
            << "duration_us   " << number(duration) << '\n'
            << "M1            " << number(m1) << '\n'
            << "M2            " << number(m2) << '\n'
            << "M3            " << number(m3) << '\n';
  for (size_t i = 0; i < dim; ++i) {
    std::cout << (dim == 2 ? oneQubit[i] : twoQubit[i]) << (dim == 2 ? "            " : "           ")
              << number(pops[i]) << '\n';
  }
  std::cout << "norm_drift    " << number(drift) << '\n';
  if (!out.empty()) {
    check(sg_gate_run_write_csv(run.get(), out.c_str()), "trajectory csv");
    writeGnuplot(opts, out, false, dim);
  }
  return 0;
}

int runSweepCommand(const Options& opts) {
  ConfigPtr config = buildConfig(opts, nullptr);
  sg_sweep* raw = nullptr;
  check(sg_sweep_create(config.get(), jobsOf(config.get()), &raw), "sweep");
  SweepPtr sweep(raw);
  const std::string out = getKey(config.get(), "out");
  check(sg_sweep_write_csv(sweep.get(), out.c_str()), "sweep csv");

  int found = 0;
  double delta = 0;
  check(sg_sweep_threshold(sweep.get(), &found, &delta), "threshold");
  if (found) std::cerr << "grid threshold: fidelity stays >= " << getKey(config.get(), "fidelity")
                       << " up to delta = " << number(delta) << " (2pi MHz)\n";
  writeGnuplot(opts, out, true, dimensionForGate(getKey(config.get(), "gate")));
  return 0;
}

int runThresholdCommand(const Options& opts) {
  ConfigPtr config = buildConfig(opts, nullptr);
  double star = 0;
  check(sg_find_threshold(config.get(), jobsOf(config.get()), &star), "threshold");
  const double twoPi = 6.283185307179586;
  std::cout << "gate                    " << getKey(config.get(), "gate") << '\n'
            << "fidelity_threshold      " << getKey(config.get(), "fidelity") << '\n'
            << "measure                 " << getKey(config.get(), "measure") << '\n'
            << "delta_star_2piMHz       " << number(star)
            << "    # delta quoted as a cyclic frequency in MHz (angular = 2pi x value rad/us)\n"
            << "delta_star_rad_per_us   " << number(twoPi * star)
            << "    # the same delta read as an angular frequency in 1/us\n";
  return 0;
}

int runValidateCommand(const Options& opts) {
  ConfigPtr config = buildConfig(opts, nullptr);
  sg_validation* raw = nullptr;
  check(sg_validation_create(config.get(), &raw), "validate");
  ValidationPtr validation(raw);
  size_t count = 0;
  check(sg_validation_count(validation.get(), &count), "validate");
  bool allPassed = true;
  for (size_t i = 0; i < count; ++i) {
    const char* name = nullptr;
    double value = 0, limit = 0;
    int passed = 0;
    check(sg_validation_check(validation.get(), i, &name, &value, &limit, &passed), "validate");
    allPassed = allPassed && passed;
    std::cout << (passed ? "PASS  " : "FAIL  ") << name << ": " << number(value)
              << " <= " << number(limit) << '\n';
  }
  return allPassed ? 0 : kRuntimeFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-qubit NOT / CNOT gate simulator under a modulated longitudinal field"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sg_version()));

  Options opts;
  auto* notGate = app.add_subcommand("not-gate", "simulate the NOT pi-pulse and report fidelity");
  auto* cnotGate = app.add_subcommand("cnot-gate", "simulate the CNOT pi-pulse and report fidelity");
  auto* sweep = app.add_subcommand("sweep", "fidelity vs delta, CSV output");
  auto* threshold = app.add_subcommand("threshold", "largest delta keeping the fidelity threshold");
  auto* trajectory = app.add_subcommand("trajectory", "populations over one pulse, CSV output");
  auto* validate = app.add_subcommand("validate", "internal consistency checks");
  for (auto* cmd : {notGate, cnotGate, sweep, threshold, trajectory, validate}) addCommonOptions(cmd, opts);
  cnotGate->add_option("--initial", opts.initial, "digital | superposition")
      ->check(CLI::IsMember({"digital", "superposition"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsageFailure;
  }

  try {
    if (opts.gnuplot && !opts.overrides.contains("out")) {
      throw CliError{kUsageFailure, "--gnuplot needs --out"};
    }
    if (*notGate) return runGate(opts, "not", false);
    if (*cnotGate) {
      const char* gate = opts.initial == "superposition" ? "cnot-superposition"
                         : opts.initial == "digital"     ? "cnot-digital"
                                                         : "cnot";
      return runGate(opts, gate, false);
    }
    if (*trajectory) return runGate(opts, nullptr, true);
    if (*sweep) return runSweepCommand(opts);
    if (*threshold) return runThresholdCommand(opts);
    if (*validate) return runValidateCommand(opts);
  } catch (const CliError& e) {
    std::cerr << "spingate: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "spingate: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageFailure;
}
