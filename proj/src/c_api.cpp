#include "spingate/spingate.h"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <memory>
#include <new>

#include "spingate/config.hpp"
#include "spingate/csv.hpp"
#include "spingate/validation.hpp"

struct sg_config {
  spingate::ExperimentConfig config;
};

struct sg_gate_run {
  spingate::GateRun run;
  double duration = 0.0;
  double drive = 0.0;  // 2pi MHz
};

struct sg_sweep {
  spingate::SweepResult result;
};

struct sg_validation {
  std::vector<spingate::CheckResult> checks;
};

namespace {

using namespace spingate;

thread_local std::string lastError;

struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

sg_status fail(sg_status status, const char* message) {
  try {
    lastError = message;
  } catch (...) {
  }
  return status;
}

template <class F>
sg_status guarded(F&& body) noexcept {
  lastError.clear();
  try {
    body();
    return SG_OK;
  } catch (const InvalidArgument& e) {
    return fail(SG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const ParseError& e) {
    return fail(SG_ERR_PARSE, e.what());
  } catch (const ValidationError& e) {
    return fail(SG_ERR_VALIDATION, e.what());
  } catch (const ContractViolation& e) {
    return fail(SG_ERR_CONTRACT, e.what());
  } catch (const DomainError& e) {
    return fail(SG_ERR_DOMAIN, e.what());
  } catch (const ThresholdNotBracketed& e) {
    return fail(SG_ERR_NOT_BRACKETED, e.what());
  } catch (const IntegrationError& e) {
    return fail(SG_ERR_INTEGRATION, e.what());
  } catch (const SweepPointError& e) {
    return fail(SG_ERR_INTEGRATION, e.what());
  } catch (const IoError& e) {
    return fail(SG_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SG_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
T& deref(T* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is NULL");
  return *p;
}

const char* cstr(const char* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is NULL");
  return p;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool toStdout(const char* path) { return !path || !*path || std::strcmp(path, "-") == 0; }

std::string configValue(const ExperimentConfig& c, std::string_view key) {
  // Reuse the serializer so that get() and the text form always agree.
  const std::string text = c.serialize();
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto eol = rest.find('\n');
    const std::string_view line = rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
    const auto eq = line.find(" = ");
    if (eq != std::string_view::npos && line.substr(0, eq) == key) return std::string(line.substr(eq + 3));
  }
  // Optional keys that are unset.
  if (key == "drive") return "resonant";
  if (key == "measure") return "default";
  if (key == "out") return "";
  throw InvalidArgument("unknown key '" + std::string(key) + "'");
}

}  // namespace

extern "C" {

const char* sg_last_error(void) { return lastError.c_str(); }

const char* sg_status_name(sg_status status) {
  switch (status) {
    case SG_OK: return "ok";
    case SG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SG_ERR_PARSE: return "parse error";
    case SG_ERR_VALIDATION: return "validation error";
    case SG_ERR_CONTRACT: return "contract violation";
    case SG_ERR_DOMAIN: return "domain error";
    case SG_ERR_INTEGRATION: return "integration error";
    case SG_ERR_NOT_BRACKETED: return "threshold not bracketed";
    case SG_ERR_IO: return "i/o error";
    case SG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sg_version(void) { return "1.0.0"; }

void sg_string_free(char* s) { std::free(s); }

sg_status sg_config_create(sg_config** out) {
  return guarded([&] { deref(out, "out") = new sg_config{}; });
}

void sg_config_destroy(sg_config* config) { delete config; }

sg_status sg_config_parse(const char* text, sg_config** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = nullptr;
    auto config = std::make_unique<sg_config>();
    config->config = parseConfig(text ? text : "");
    slot = config.release();
  });
}

sg_status sg_config_load(sg_config* config, const char* text) {
  return guarded([&] { loadConfig(deref(config, "config").config, cstr(text, "text")); });
}

sg_status sg_config_set(sg_config* config, const char* key, const char* value) {
  return guarded([&] {
    auto& c = deref(config, "config").config;
    const std::string k = cstr(key, "key");
    ExperimentConfig scratch = c;
    try {
      scratch.set(k, cstr(value, "value"));
    } catch (const ParseError& e) {
      if (std::string_view(e.what()).starts_with("unknown key")) throw InvalidArgument(e.what());
      throw;
    }
    c = std::move(scratch);
  });
}

sg_status sg_config_get(const sg_config* config, const char* key, char** value) {
  return guarded([&] {
    auto& slot = deref(value, "value");
    slot = duplicate(configValue(deref(config, "config").config, cstr(key, "key")));
  });
}

sg_status sg_config_validate(const sg_config* config) {
  return guarded([&] { deref(config, "config").config.validate(); });
}

sg_status sg_config_serialize(const sg_config* config, char** text) {
  return guarded([&] { deref(text, "text") = duplicate(deref(config, "config").config.serialize()); });
}

sg_status sg_gate_run_create(const sg_config* config, sg_gate_run** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = nullptr;
    const auto& c = deref(config, "config").config;
    c.validate();
    const SweepSpec spec = c.sweepSpec();
    const auto delta = AngularFrequency::twoPiMHz(c.delta);
    slot = new sg_gate_run{runGateAt(spec, delta, c.integrator()),
                           piPulseDuration(AngularFrequency::twoPiMHz(c.rabi)),
                           spec.gate == GateKind::Not ? spec.notParams.drive.twoPiMHz()
                                                      : spec.cnotParams.drive.twoPiMHz()};
  });
}

void sg_gate_run_destroy(sg_gate_run* run) { delete run; }

sg_status sg_gate_run_fidelity(const sg_gate_run* run, double* m1, double* m2, double* m3) {
  return guarded([&] {
    const auto& f = deref(run, "run").run.fidelity;
    if (m1) *m1 = f.overlapVsReference;
    if (m2) *m2 = f.bhattacharyyaVsIdeal;
    if (m3) *m3 = f.targetPopulation;
  });
}

sg_status sg_gate_run_dimension(const sg_gate_run* run, size_t* dimension) {
  return guarded([&] { deref(dimension, "dimension") = deref(run, "run").run.ideal.dimension(); });
}

sg_status sg_gate_run_final_populations(const sg_gate_run* run, double* out, size_t capacity) {
  return guarded([&] {
    const auto p = populations(deref(run, "run").run.trajectory.finalState());
    if (capacity < p.size()) throw InvalidArgument("population buffer too small");
    std::copy(p.begin(), p.end(), &deref(out, "populations"));
  });
}

sg_status sg_gate_run_norm_drift(const sg_gate_run* run, double* drift) {
  return guarded([&] { deref(drift, "drift") = deref(run, "run").run.normDrift; });
}

sg_status sg_gate_run_duration(const sg_gate_run* run, double* microseconds) {
  return guarded([&] { deref(microseconds, "microseconds") = deref(run, "run").duration; });
}

sg_status sg_gate_run_drive(const sg_gate_run* run, double* drive) {
  return guarded([&] { deref(drive, "drive") = deref(run, "run").drive; });
}

sg_status sg_gate_run_write_csv(const sg_gate_run* run, const char* path) {
  return guarded([&] {
    const auto& traj = deref(run, "run").run.trajectory;
    if (toStdout(path)) {
      writeTrajectoryCsv(std::cout, traj);
      std::cout.flush();
    } else {
      writeTrajectoryCsv(std::string(path), traj);
    }
  });
}

sg_status sg_sweep_create(const sg_config* config, unsigned jobs, sg_sweep** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = nullptr;
    const auto& c = deref(config, "config").config;
    c.validate();
    auto handle = std::make_unique<sg_sweep>();
    handle->result = runSweep(c.sweepSpec(), c.integrator(), jobs);
    slot = handle.release();
  });
}

void sg_sweep_destroy(sg_sweep* sweep) { delete sweep; }

sg_status sg_sweep_row_count(const sg_sweep* sweep, size_t* rows) {
  return guarded([&] { deref(rows, "rows") = deref(sweep, "sweep").result.rows.size(); });
}

sg_status sg_sweep_row(const sg_sweep* sweep, size_t index, double* delta, double* m1, double* m2,
                       double* m3) {
  return guarded([&] {
    const auto& rows = deref(sweep, "sweep").result.rows;
    if (index >= rows.size()) throw InvalidArgument("row index out of range");
    const auto& r = rows[index];
    if (delta) *delta = r.delta.twoPiMHz();
    if (m1) *m1 = r.fidelity.overlapVsReference;
    if (m2) *m2 = r.fidelity.bhattacharyyaVsIdeal;
    if (m3) *m3 = r.fidelity.targetPopulation;
  });
}

sg_status sg_sweep_threshold(const sg_sweep* sweep, int* found, double* delta) {
  return guarded([&] {
    const auto& t = deref(sweep, "sweep").result.thresholdDeltaStar;
    deref(found, "found") = t.has_value() ? 1 : 0;
    if (delta) *delta = t ? t->twoPiMHz() : 0.0;
  });
}

sg_status sg_sweep_write_csv(const sg_sweep* sweep, const char* path) {
  return guarded([&] {
    const auto& result = deref(sweep, "sweep").result;
    if (toStdout(path)) {
      writeSweepCsv(std::cout, result);
      std::cout.flush();
    } else {
      writeSweepCsv(std::string(path), result);
    }
  });
}

sg_status sg_find_threshold(const sg_config* config, unsigned jobs, double* delta_star) {
  return guarded([&] {
    auto& slot = deref(delta_star, "delta_star");
    const auto& c = deref(config, "config").config;
    c.validate();
    slot = findThreshold(c.sweepSpec(), c.integrator(), jobs).twoPiMHz();
  });
}

sg_status sg_validation_create(const sg_config* config, sg_validation** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = nullptr;
    auto handle = std::make_unique<sg_validation>();
    handle->checks = runValidationSuite(deref(config, "config").config);
    slot = handle.release();
  });
}

void sg_validation_destroy(sg_validation* validation) { delete validation; }

sg_status sg_validation_count(const sg_validation* validation, size_t* count) {
  return guarded([&] { deref(count, "count") = deref(validation, "validation").checks.size(); });
}

sg_status sg_validation_check(const sg_validation* validation, size_t index, const char** name,
                              double* value, double* limit, int* passed) {
  return guarded([&] {
    const auto& checks = deref(validation, "validation").checks;
    if (index >= checks.size()) throw InvalidArgument("check index out of range");
    const auto& c = checks[index];
    if (name) *name = c.name.c_str();
    if (value) *value = c.value;
    if (limit) *limit = c.limit;
    if (passed) *passed = c.passed ? 1 : 0;
  });
}

sg_status sg_gnuplot_script(const char* csv_path, int sweep, size_t dimension, char** script) {
  return guarded([&] {
    if (dimension != 2 && dimension != 4) throw InvalidArgument("dimension must be 2 or 4");
    deref(script, "script") = duplicate(gnuplotScript(cstr(csv_path, "csv_path"), sweep != 0, dimension));
  });
}

}  // extern "C"
