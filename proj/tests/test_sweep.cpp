#include <doctest.h>

#include <numbers>

#include "spingate/errors.hpp"
#include "spingate/sweep.hpp"
#include "support.hpp"

using namespace spingate;
using namespace spingate::literals;

namespace {

SweepSpec notSpec(double lo, double hi, std::size_t points) {
  SweepSpec s;
  s.deltaMin = AngularFrequency::twoPiMHz(lo);
  s.deltaMax = AngularFrequency::twoPiMHz(hi);
  s.points = points;
  return s;
}

// Independent re-coding of the second-order coefficient.
Complex alphaOracle(double t, double rabi, double w, double w0, double delta) {
  const double detune = 1.0 - (w0 / w) * std::cos(delta * t);
  return Complex(0.25 * (rabi * rabi + w * w * detune * detune), 0.5 * w0 * delta * std::sin(delta * t));
}

}  // namespace

TEST_CASE("SweepSpec validation") {
  CHECK_NOTHROW(SweepSpec{}.validate());
  auto s = notSpec(1e-3, 1e-3, 10);
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = notSpec(0, 1e-3, 1);
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = notSpec(0, 1e-3, 10);
  s.scale = GridScale::Log;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = notSpec(0, 1e-3, 10);
  s.fidelityThreshold = 1.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("grid") {
  SUBCASE("linear: ascending, exact ends, even spacing") {
    const auto g = notSpec(0.0, 1e-2, 201).grid();
    REQUIRE(g.size() == 201);
    CHECK(g.front().twoPiMHz() == 0.0);
    CHECK(g.back() == AngularFrequency::twoPiMHz(1e-2));
    for (std::size_t i = 1; i < g.size(); ++i) {
      CHECK(g[i] > g[i - 1]);
      CHECK(g[i].twoPiMHz() == doctest::Approx(i * 5e-5).epsilon(1e-12));
    }
  }
  SUBCASE("log") {
    auto s = notSpec(1e-5, 1e-2, 4);
    s.scale = GridScale::Log;
    const auto g = s.grid();
    CHECK(g.front() == AngularFrequency::twoPiMHz(1e-5));
    CHECK(g.back() == AngularFrequency::twoPiMHz(1e-2));
    CHECK(g[1].twoPiMHz() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(g[2].twoPiMHz() == doctest::Approx(1e-3).epsilon(1e-12));
  }
  SUBCASE("property: mirrored linear grids are exact negatives") {
    gen::Rng rng(59);
    for (int trial = 0; trial < 100; ++trial) {
      const double a = rng.uniform(-1e-2, 1e-2), b = a + rng.uniform(1e-6, 1e-2);
      const auto n = static_cast<std::size_t>(rng.integer(2, 300));
      const auto pos = notSpec(a, b, n).grid();
      const auto neg = notSpec(-b, -a, n).grid();
      for (std::size_t i = 0; i < n; ++i) CHECK(neg[n - 1 - i].radPerUs() == -pos[i].radPerUs());
    }
  }
}

TEST_CASE("NOT sweep rows") {
  const auto result = runSweep(notSpec(0.0, 1e-3, 11), IntegratorConfig{});
  REQUIRE(result.rows.size() == 11);
  CHECK(result.rows[0].fidelity.overlapVsReference == 1.0);
  CHECK(result.rows[0].fidelity.targetPopulation >= 1.0 - 1e-8);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    if (i) CHECK(row.delta > result.rows[i - 1].delta);
    double sum = 0.0;
    for (double p : row.populations) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-8);
    CHECK(row.normDrift <= 1e-9);
  }
  // well defined up to 0.2e-3, gone by 1e-3
  for (const auto& row : result.rows)
    if (row.delta.twoPiMHz() <= 0.2e-3) CHECK(row.fidelity.targetPopulation >= 0.99);
  CHECK(result.rows.back().fidelity.targetPopulation < 0.99);
  REQUIRE(result.thresholdDeltaStar);
  CHECK(result.thresholdDeltaStar->twoPiMHz() >= 1e-4);
  CHECK(result.thresholdDeltaStar->twoPiMHz() < 1e-3);
}

TEST_CASE("serial and parallel sweeps agree exactly") {
  auto spec = notSpec(0.0, 2e-3, 17);
  spec.gate = GateKind::CnotSuperposition;
  const auto serial = runSweep(spec, IntegratorConfig{}, 1);
  const auto parallel = runSweep(spec, IntegratorConfig{}, 4);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].delta == parallel.rows[i].delta);
    CHECK(serial.rows[i].populations == parallel.rows[i].populations);
    CHECK(serial.rows[i].fidelity.overlapVsReference == parallel.rows[i].fidelity.overlapVsReference);
    CHECK(serial.rows[i].fidelity.bhattacharyyaVsIdeal == parallel.rows[i].fidelity.bhattacharyyaVsIdeal);
    CHECK(serial.rows[i].fidelity.targetPopulation == parallel.rows[i].fidelity.targetPopulation);
  }
}

TEST_CASE("a failing point aborts the sweep and names its delta") {
  IntegratorConfig starved;
  starved.maxSteps = 3;
  CHECK_THROWS_AS(runSweep(notSpec(1e-4, 1e-3, 5), starved, 2), SweepPointError);
}

TEST_CASE("threshold search") {
  const IntegratorConfig cfg;
  const auto spec = notSpec(0.0, 2e-3, 21);
  const auto star = findThreshold(spec, cfg);
  CHECK(star.twoPiMHz() >= 1e-4);
  CHECK(star.twoPiMHz() <= 1e-3);

  SUBCASE("bracket: passes at delta*, fails just above") {
    const auto at = runGateAt(spec, star, cfg);
    const auto above = runGateAt(spec, (1.0 + 2e-3) * star, cfg);
    CHECK(at.fidelity.targetPopulation >= 0.99);
    CHECK(above.fidelity.targetPopulation < 0.99);
  }
  SUBCASE("independent of the coarse grid") {
    const auto finer = findThreshold(notSpec(0.0, 2e-3, 57), cfg);
    CHECK(std::abs(finer.radPerUs() - star.radPerUs()) <= 1e-3 * star.radPerUs());
  }
  SUBCASE("not bracketed") {
    CHECK_THROWS_AS(findThreshold(notSpec(1e-3, 2e-3, 5), cfg), ThresholdNotBracketed);
    CHECK_THROWS_AS(findThreshold(notSpec(0.0, 1e-4, 5), cfg), ThresholdNotBracketed);
  }
}

TEST_CASE("mathieu alpha") {
  const auto p = defaultNotParams();
  const Complex a0 = mathieuAlpha(1.3, p);
  CHECK(a0.real() == doctest::Approx(0.25 * p.rabi.radPerUs() * p.rabi.radPerUs()).epsilon(1e-12));
  CHECK(a0.imag() == 0.0);
  CHECK(mathieuAlpha(0.0, defaultNotParams(AngularFrequency::twoPiMHz(1e-3))).imag() == 0.0);

  gen::Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    auto q = rng.oneQubit();
    q.modulation = AngularFrequency::twoPiMHz(rng.uniform(-1e-2, 1e-2));
    const double t = rng.uniform(0.0, 5.0);
    const Complex want = alphaOracle(t, q.rabi.radPerUs(), q.drive.radPerUs(), q.larmor.radPerUs(),
                                     q.modulation.radPerUs());
    CHECK(std::abs(mathieuAlpha(t, q) - want) <= 1e-12 * std::abs(want));
  }
  OneQubitParams bad = p;
  bad.drive = {};
  CHECK_THROWS_AS(mathieuAlpha(0.0, bad), DomainError);
}

TEST_CASE("mathieu residual") {
  const IntegratorConfig cfg;
  SUBCASE("resonant run and Rabi reconstruction") {
    const auto p = defaultNotParams();
    const auto traj = simulatePulse(PulseSpec::piPulse(p, StateVector::basis(2, 0)), cfg, 2000);
    const auto check = mathieuResidual(traj, p);
    CHECK(check.residual <= 1e-4);
    CHECK(check.reconstructionError <= 1e-6);
    for (std::size_t i = 0; i < traj.size(); i += 97) {
      const auto exact = oracle::rabi(traj.times[i], p.rabi.radPerUs());
      CHECK(std::abs(traj.states[i][1] - exact[1]) < 1e-9);
    }
  }
  SUBCASE("modulated run") {
    const auto p = defaultNotParams(AngularFrequency::twoPiMHz(5e-4));
    const auto traj = simulatePulse(PulseSpec::piPulse(p, StateVector::basis(2, 0)), cfg, 2000);
    const auto check = mathieuResidual(traj, p);
    CHECK(check.residual <= 1e-4);
    CHECK(check.reconstructionError <= 1e-6);
  }
  SUBCASE("zero d0 gives zero residual") {
    Trajectory t;
    for (std::size_t i = 0; i <= 1000; ++i) {
      t.times.push_back(i * 0.005);
      t.states.push_back({0.0, 1.0});
      t.norms.push_back(1.0);
    }
    CHECK(mathieuResidual(t, defaultNotParams()).residual == 0.0);
  }
  SUBCASE("needs dense sampling") {
    const auto p = defaultNotParams();
    const auto coarse = simulatePulse(PulseSpec::piPulse(p, StateVector::basis(2, 0)), cfg, 100);
    CHECK_THROWS_AS(mathieuResidual(coarse, p), ContractViolation);
  }
}
