#include <doctest.h>

#include <cstring>
#include <string>

#include "spingate/spingate.h"

namespace {

std::string getValue(const sg_config* c, const char* key) {
  char* v = nullptr;
  REQUIRE(sg_config_get(c, key, &v) == SG_OK);
  std::string out(v);
  sg_string_free(v);
  return out;
}

}  // namespace

TEST_CASE("config handle lifecycle") {
  sg_config* c = nullptr;
  REQUIRE(sg_config_create(&c) == SG_OK);
  CHECK(getValue(c, "gate") == "not");
  CHECK(getValue(c, "rabi") == "0.1");

  CHECK(sg_config_set(c, "gate", "cnot-digital") == SG_OK);
  CHECK(getValue(c, "gate") == "cnot-digital");
  CHECK(sg_config_set(c, "no_such_key", "1") == SG_ERR_INVALID_ARGUMENT);
  CHECK(sg_config_set(c, "rabi", "fast") == SG_ERR_PARSE);
  CHECK(std::strlen(sg_last_error()) > 0);
  CHECK(getValue(c, "rabi") == "0.1");  // failed set leaves the config untouched

  CHECK(sg_config_set(c, "coupling", "0") == SG_OK);
  CHECK(sg_config_validate(c) == SG_ERR_VALIDATION);
  CHECK(std::string(sg_last_error()).find("coupling") != std::string::npos);
  CHECK(sg_config_set(c, "coupling", "10") == SG_OK);
  CHECK(sg_config_validate(c) == SG_OK);

  char* text = nullptr;
  REQUIRE(sg_config_serialize(c, &text) == SG_OK);
  sg_config* back = nullptr;
  REQUIRE(sg_config_parse(text, &back) == SG_OK);
  sg_string_free(text);
  CHECK(getValue(back, "gate") == "cnot-digital");
  sg_config_destroy(back);
  sg_config_destroy(c);
}

TEST_CASE("parse errors and null arguments") {
  sg_config* c = nullptr;
  CHECK(sg_config_parse("rabi = 0.1\nrabi 0.2\n", &c) == SG_ERR_PARSE);
  CHECK(c == nullptr);
  CHECK(std::string(sg_last_error()).find("line 2") != std::string::npos);
  CHECK(sg_config_parse("coupling = -1\n", &c) == SG_ERR_VALIDATION);
  CHECK(sg_config_create(nullptr) == SG_ERR_INVALID_ARGUMENT);
  CHECK(sg_config_validate(nullptr) == SG_ERR_INVALID_ARGUMENT);
  double m = 0;
  CHECK(sg_gate_run_fidelity(nullptr, &m, &m, &m) == SG_ERR_INVALID_ARGUMENT);
  sg_config_destroy(nullptr);
  sg_gate_run_destroy(nullptr);
  sg_sweep_destroy(nullptr);
  sg_validation_destroy(nullptr);
  CHECK(std::string(sg_status_name(SG_ERR_NOT_BRACKETED)).size() > 0);
  CHECK(std::string(sg_version()).size() > 0);
}

TEST_CASE("gate run through the C API") {
  sg_config* c = nullptr;
  REQUIRE(sg_config_parse("gate = cnot-superposition\n", &c) == SG_OK);
  sg_gate_run* run = nullptr;
  REQUIRE(sg_gate_run_create(c, &run) == SG_OK);
  size_t dim = 0;
  CHECK(sg_gate_run_dimension(run, &dim) == SG_OK);
  CHECK(dim == 4);
  double pops[4] = {};
  CHECK(sg_gate_run_final_populations(run, pops, 2) == SG_ERR_INVALID_ARGUMENT);
  REQUIRE(sg_gate_run_final_populations(run, pops, 4) == SG_OK);
  CHECK(pops[0] == doctest::Approx(0.2).epsilon(0.05));
  CHECK(pops[3] == doctest::Approx(0.6).epsilon(0.02));
  double m1, m2, m3, drift, tau, drive;
  CHECK(sg_gate_run_fidelity(run, &m1, &m2, &m3) == SG_OK);
  CHECK(m1 == 1.0);
  CHECK(m2 > 0.99);
  CHECK(sg_gate_run_norm_drift(run, &drift) == SG_OK);
  CHECK(drift <= 1e-9);
  CHECK(sg_gate_run_duration(run, &tau) == SG_OK);
  CHECK(tau == doctest::Approx(5.0));
  CHECK(sg_gate_run_drive(run, &drive) == SG_OK);
  CHECK(drive == doctest::Approx(115.0));
  CHECK(sg_gate_run_write_csv(run, "/nonexistent-dir/t.csv") == SG_ERR_IO);
  sg_gate_run_destroy(run);
  sg_config_destroy(c);
}

TEST_CASE("sweep, threshold and validation through the C API") {
  sg_config* c = nullptr;
  REQUIRE(sg_config_parse("delta_max = 2e-3\ndelta_points = 11\n", &c) == SG_OK);
  sg_sweep* s = nullptr;
  REQUIRE(sg_sweep_create(c, 2, &s) == SG_OK);
  size_t rows = 0;
  CHECK(sg_sweep_row_count(s, &rows) == SG_OK);
  CHECK(rows == 11);
  double d, m1, m2, m3;
  CHECK(sg_sweep_row(s, 0, &d, &m1, &m2, &m3) == SG_OK);
  CHECK(d == 0.0);
  CHECK(m1 == 1.0);
  CHECK(sg_sweep_row(s, 11, &d, &m1, &m2, &m3) == SG_ERR_INVALID_ARGUMENT);
  int found = 0;
  double coarse = 0;
  CHECK(sg_sweep_threshold(s, &found, &coarse) == SG_OK);
  CHECK(found == 1);
  sg_sweep_destroy(s);

  double star = 0;
  REQUIRE(sg_find_threshold(c, 1, &star) == SG_OK);
  CHECK(star >= coarse);
  CHECK(star > 1e-4);
  CHECK(star < 1e-3);

  REQUIRE(sg_config_set(c, "delta_min", "1e-3") == SG_OK);
  CHECK(sg_find_threshold(c, 1, &star) == SG_ERR_NOT_BRACKETED);

  sg_validation* v = nullptr;
  REQUIRE(sg_validation_create(c, &v) == SG_OK);
  size_t n = 0;
  CHECK(sg_validation_count(v, &n) == SG_OK);
  CHECK(n >= 5);
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    double value, limit;
    int passed = 0;
    REQUIRE(sg_validation_check(v, i, &name, &value, &limit, &passed) == SG_OK);
    CAPTURE(name);
    CHECK(passed == 1);
  }
  sg_validation_destroy(v);

  char* script = nullptr;
  CHECK(sg_gnuplot_script("x.csv", 1, 3, &script) == SG_ERR_INVALID_ARGUMENT);
  REQUIRE(sg_gnuplot_script("x.csv", 1, 2, &script) == SG_OK);
  sg_string_free(script);
  sg_config_destroy(c);
}
