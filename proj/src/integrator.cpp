#include "spingate/integrator.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>

#include "spingate/errors.hpp"
#include "spingate/spin_model.hpp"

namespace spingate {

namespace {

// Dormand-Prince 8(5,3) coefficients as published with Hairer's DOP853.
constexpr double c2 = 0.526001519587677318785587544488e-01;
constexpr double c3 = 0.789002279381515978178381316732e-01;
constexpr double c4 = 0.118350341907227396726757197510e+00;
constexpr double c5 = 0.281649658092772603273242802490e+00;
constexpr double c6 = 0.333333333333333333333333333333e+00;
constexpr double c7 = 0.25e+00;
constexpr double c8 = 0.307692307692307692307692307692e+00;
constexpr double c9 = 0.651282051282051282051282051282e+00;
constexpr double c10 = 0.6e+00;
constexpr double c11 = 0.857142857142857142857142857142e+00;

constexpr double a21 = 5.26001519587677318785587544488e-2;
constexpr double a31 = 1.97250569845378994544595329183e-2;
constexpr double a32 = 5.91751709536136983633785987549e-2;
constexpr double a41 = 2.95875854768068491816892993775e-2;
constexpr double a43 = 8.87627564304205475450678981324e-2;
constexpr double a51 = 2.41365134159266685502369798665e-1;
constexpr double a53 = -8.84549479328286085344864962717e-1;
constexpr double a54 = 9.24834003261792003115737966543e-1;
constexpr double a61 = 3.7037037037037037037037037037e-2;
constexpr double a64 = 1.70828608729473871279604482173e-1;
constexpr double a65 = 1.25467687566822425016691814123e-1;
constexpr double a71 = 3.7109375e-2;
constexpr double a74 = 1.70252211019544039314978060272e-1;
constexpr double a75 = 6.02165389804559606850219397283e-2;
constexpr double a76 = -1.7578125e-2;
constexpr double a81 = 3.70920001185047927108779319836e-2;
constexpr double a84 = 1.70383925712239993810214054705e-1;
constexpr double a85 = 1.07262030446373284651809199168e-1;
constexpr double a86 = -1.53194377486244017527936158236e-2;
constexpr double a87 = 8.27378916381402288758473766002e-3;
constexpr double a91 = 6.24110958716075717114429577812e-1;
constexpr double a94 = -3.36089262944694129406857109825e0;
constexpr double a95 = -8.68219346841726006818189891453e-1;
constexpr double a96 = 2.75920996994467083049415600797e1;
constexpr double a97 = 2.01540675504778934086186788979e1;
constexpr double a98 = -4.34898841810699588477366255144e1;
constexpr double a101 = 4.77662536438264365890433908527e-1;
constexpr double a104 = -2.48811461997166764192642586468e0;
constexpr double a105 = -5.90290826836842996371446475743e-1;
constexpr double a106 = 2.12300514481811942347288949897e1;
constexpr double a107 = 1.52792336328824235832596922938e1;
constexpr double a108 = -3.32882109689848629194453265587e1;
constexpr double a109 = -2.03312017085086261358222928593e-2;
constexpr double a111 = -9.3714243008598732571704021658e-1;
constexpr double a114 = 5.18637242884406370830023853209e0;
constexpr double a115 = 1.09143734899672957818500254654e0;
constexpr double a116 = -8.14978701074692612513997267357e0;
constexpr double a117 = -1.85200656599969598641566180701e1;
constexpr double a118 = 2.27394870993505042818970056734e1;
constexpr double a119 = 2.49360555267965238987089396762e0;
constexpr double a1110 = -3.0467644718982195003823669022e0;
constexpr double a121 = 2.27331014751653820792359768449e0;
constexpr double a124 = -1.05344954667372501984066689879e1;
constexpr double a125 = -2.00087205822486249909675718444e0;
constexpr double a126 = -1.79589318631187989172765950534e1;
constexpr double a127 = 2.79488845294199600508499808837e1;
constexpr double a128 = -2.85899827713502369474065508674e0;
constexpr double a129 = -8.87285693353062954433549289258e0;
constexpr double a1210 = 1.23605671757943030647266201528e1;
constexpr double a1211 = 6.43392746015763530355970484046e-1;

constexpr double b1 = 5.42937341165687622380535766363e-2;
constexpr double b6 = 4.45031289275240888144113950566e0;
constexpr double b7 = 1.89151789931450038304281599044e0;
constexpr double b8 = -5.8012039600105847814672114227e0;
constexpr double b9 = 3.1116436695781989440891606237e-1;
constexpr double b10 = -1.52160949662516078556178806805e-1;
constexpr double b11 = 2.01365400804030348374776537501e-1;
constexpr double b12 = 4.47106157277725905176885569043e-2;

// 3rd-order error estimator (difference of the 8th-order increment and a 3rd-order one).
constexpr double bhh1 = 0.244094488188976377952755905512e+00;
constexpr double bhh2 = 0.733846688281611857341361741547e+00;
constexpr double bhh3 = 0.220588235294117647058823529412e-01;

// 5th-order error estimator.
constexpr double er1 = 0.1312004499419488073250102996e-01;
constexpr double er6 = -0.1225156446376204440720569753e+01;
constexpr double er7 = -0.4957589496572501915214079952e+00;
constexpr double er8 = 0.1664377182454986536961530415e+01;
constexpr double er9 = -0.3503288487499736816886487290e+00;
constexpr double er10 = 0.3341791187130174790297318841e+00;
constexpr double er11 = 0.8192320648511571246570742613e-01;
constexpr double er12 = -0.2235530786388629525884427845e-01;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.333;  // smallest h_new / h
constexpr double kMaxFactor = 6.0;

bool allFinite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double componentScale(double a, double b, const IntegratorConfig& cfg) {
  return cfg.absTol + cfg.relTol * std::max(std::abs(a), std::abs(b));
}

class Stepper {
public:
  Stepper(const ComplexRhs& rhs, std::size_t n, const IntegratorConfig& cfg)
      : rhs_(rhs), cfg_(cfg), k_(13, std::vector<Complex>(n)), tmp_(n), next_(n), incr_(n) {}

  void eval(double t, std::span<const Complex> y, std::vector<Complex>& out) {
    rhs_(t, y, out);
    // reported time is the last accepted one, not the stage time
    if (!allFinite(out)) throw IntegrationError("non-finite value in right-hand side", from_);
  }

  void prime(double t, std::span<const Complex> y) {
    from_ = t;
    eval(t, y, k_[0]);
  }

  // One trial step of size h from (t, y). Returns the scaled error norm; the candidate state is
  // left in next_ and its derivative in k_[12].
  double attempt(double t, std::span<const Complex> y, double h) {
    from_ = t;
    const std::size_t n = y.size();
    auto& k1 = k_[0];
    auto& k2 = k_[1];
    auto& k3 = k_[2];
    auto& k4 = k_[3];
    auto& k5 = k_[4];
    auto& k6 = k_[5];
    auto& k7 = k_[6];
    auto& k8 = k_[7];
    auto& k9 = k_[8];
    auto& k10 = k_[9];
    auto& k11 = k_[10];
    auto& k12 = k_[11];
    auto& k13 = k_[12];

    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * a21 * k1[i];
    eval(t + c2 * h, tmp_, k2);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval(t + c3 * h, tmp_, k3);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * (a41 * k1[i] + a43 * k3[i]);
    eval(t + c4 * h, tmp_, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a51 * k1[i] + a53 * k3[i] + a54 * k4[i]);
    eval(t + c5 * h, tmp_, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a61 * k1[i] + a64 * k4[i] + a65 * k5[i]);
    eval(t + c6 * h, tmp_, k6);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    eval(t + c7 * h, tmp_, k7);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
    eval(t + c8 * h, tmp_, k8);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] +
                            a98 * k8[i]);
    eval(t + c9 * h, tmp_, k9);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] +
                            a107 * k7[i] + a108 * k8[i] + a109 * k9[i]);
    eval(t + c10 * h, tmp_, k10);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] +
                            a117 * k7[i] + a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
    eval(t + c11 * h, tmp_, k11);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] +
                            a127 * k7[i] + a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] +
                            a1211 * k11[i]);
    eval(t + h, tmp_, k12);

    for (std::size_t i = 0; i < n; ++i) {
      incr_[i] = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] + b10 * k10[i] +
                 b11 * k11[i] + b12 * k12[i];
      next_[i] = y[i] + h * incr_[i];
    }

    double err3 = 0.0, err5 = 0.0;
    auto accumulate = [&](double e3, double e5, double sc) {
      err3 += (e3 / sc) * (e3 / sc);
      err5 += (e5 / sc) * (e5 / sc);
    };
    for (std::size_t i = 0; i < n; ++i) {
      const Complex e3 = incr_[i] - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k12[i];
      const Complex e5 = er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] + er9 * k9[i] +
                         er10 * k10[i] + er11 * k11[i] + er12 * k12[i];
      accumulate(e3.real(), e5.real(), componentScale(y[i].real(), next_[i].real(), cfg_));
      accumulate(e3.imag(), e5.imag(), componentScale(y[i].imag(), next_[i].imag(), cfg_));
    }
    double deno = err5 + 0.01 * err3;
    if (deno <= 0.0) deno = 1.0;
    const double err = std::abs(h) * err5 * std::sqrt(1.0 / (static_cast<double>(2 * n) * deno));

    // Only needed once the step is accepted, but evaluating here keeps accept() trivial.
    if (err <= 1.0) eval(t + h, next_, k13);
    return err;
  }

  // Commits the candidate from the last successful attempt.
  void accept(std::vector<Complex>& y) {
    y.swap(next_);
    k_[0].swap(k_[12]);
  }

  const std::vector<Complex>& derivative() const { return k_[0]; }

private:
  const ComplexRhs& rhs_;
  const IntegratorConfig& cfg_;
  std::vector<std::vector<Complex>> k_;
  std::vector<Complex> tmp_, next_, incr_;
  double from_ = 0.0;
};

double initialGuess(std::span<const Complex> y, std::span<const Complex> f, double span,
                    const IntegratorConfig& cfg) {
  // Crude version of the Hairer-Norsett-Wanner starting step.
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double sc = cfg.absTol + cfg.relTol * std::abs(y[i]);
    d0 += std::norm(y[i]) / (sc * sc);
    d1 += std::norm(f[i]) / (sc * sc);
  }
  double h = (d0 < 1e-10 || d1 < 1e-10) ? 1e-6 : 0.01 * std::sqrt(d0 / d1);
  return std::min(h, std::abs(span));
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(relTol > 0.0) || !std::isfinite(relTol)) throw ValidationError("rel_tol", "must be > 0");
  if (!(absTol > 0.0) || !std::isfinite(absTol)) throw ValidationError("abs_tol", "must be > 0");
  if (!(maxStep >= 0.0) || !std::isfinite(maxStep))
    throw ValidationError("max_step", "must be > 0 (or 0 for the default)");
  if (!(initialStep >= 0.0) || !std::isfinite(initialStep))
    throw ValidationError("initial_step", "must be >= 0");
  if (maxSteps == 0) throw ValidationError("max_steps", "must be > 0");
}

Trajectory integrate(const ComplexRhs& rhs, std::span<const Complex> y0, double t0, double t1,
                     const IntegratorConfig& cfg, std::size_t samples) {
  cfg.validate();
  if (y0.empty()) throw ContractViolation("integrate: empty initial state");
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw ContractViolation("integrate: non-finite time span");

  Trajectory traj;
  std::vector<Complex> y(y0.begin(), y0.end());
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(y);
    traj.norms.push_back(normSquared(y));
  };

  if (t1 == t0) {
    record(t0);
    return traj;
  }
  if (samples == 0) throw ContractViolation("integrate: need at least one sample interval");

  const double span = t1 - t0;
  const double dir = span > 0 ? 1.0 : -1.0;
  const double maxStep = cfg.maxStep > 0.0 ? cfg.maxStep : std::abs(span) / 100.0;
  traj.times.reserve(samples + 1);
  traj.states.reserve(samples + 1);
  traj.norms.reserve(samples + 1);

  Stepper stepper(rhs, y.size(), cfg);
  double t = t0;
  stepper.prime(t, y);
  record(t);

  double h = cfg.initialStep > 0.0 ? cfg.initialStep : initialGuess(y, stepper.derivative(), span, cfg);
  h = std::min(h, maxStep);

  std::uint64_t steps = 0;
  for (std::size_t s = 1; s <= samples; ++s) {
    const double target = (s == samples) ? t1 : t0 + span * static_cast<double>(s) / static_cast<double>(samples);
    while (dir * (target - t) > 0.0) {
      if (++steps > cfg.maxSteps) throw IntegrationError("step budget exhausted", t);

      const double remaining = std::abs(target - t);
      // Stretch a step that would leave a sliver shorter than 1% of itself before the target.
      const bool clamp = h >= remaining * 0.99;
      const double trial = clamp ? remaining : h;
      if (trial < 1e-14 * std::max(std::abs(t), std::abs(span)) && !clamp) throw IntegrationError("step size underflow", t);

      const double err = stepper.attempt(t, y, dir * trial);
      if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate", t);
      const double factor =
          err == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(err, -0.125), kMinFactor, kMaxFactor);
      if (err <= 1.0) {
        stepper.accept(y);
        t = clamp ? target : t + dir * trial;
        // A clamped step says nothing about the natural step length; only grow from a full one.
        if (!clamp || trial >= h) h = std::min(trial * factor, maxStep);
        else h = std::min(std::max(h, trial * factor), maxStep);
      } else {
        h = trial * std::max(factor, kMinFactor);
      }
    }
    record(t);
  }
  return traj;
}

double normDrift(const Trajectory& trajectory) {
  double worst = 0.0;
  for (const double n : trajectory.norms) worst = std::max(worst, std::abs(n - 1.0));
  return worst;
}

}  // namespace spingate
