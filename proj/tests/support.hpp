#pragma once

// Independent oracles and hand-rolled generators shared by the unit tests.
// Nothing here calls into the equations of motion under test.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "spingate/spin_model.hpp"

namespace oracle {

using spingate::Complex;
constexpr Complex I{0.0, 1.0};

template <std::size_t N>
using Matrix = std::array<std::array<Complex, N>, N>;

template <std::size_t N>
std::vector<Complex> minusIH(const Matrix<N>& h, const std::vector<Complex>& psi) {
  std::vector<Complex> out(N);
  for (std::size_t r = 0; r < N; ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < N; ++c) acc += h[r][c] * psi[c];
    out[r] = -I * acc;
  }
  return out;
}

// Lab-frame Hamiltonians read straight off the amplitude equations i c' = H c.
inline Matrix<2> labHamiltonian(double t, const spingate::OneQubitParams& p) {
  const double w0 = p.larmor.radPerUs(), om = p.rabi.radPerUs(), w = p.drive.radPerUs();
  const double c = std::cos(p.modulation.radPerUs() * t);
  const Complex carrier = std::exp(I * w * t);
  Matrix<2> h{};
  h[0][0] = -0.5 * w0 * c;
  h[1][1] = 0.5 * w0 * c;
  h[0][1] = -0.5 * om * carrier;
  h[1][0] = -0.5 * om * std::conj(carrier);
  return h;
}

inline Matrix<4> labHamiltonian(double t, const spingate::TwoQubitParams& p) {
  const double w1 = p.larmor1.radPerUs(), w2 = p.larmor2.radPerUs(), j = p.coupling.radPerUs();
  const double om = p.rabi.radPerUs(), w = p.drive.radPerUs();
  const double c = std::cos(p.modulation.radPerUs() * t);
  const Complex up = -0.5 * om * std::exp(I * w * t);
  Matrix<4> h{};
  h[0][0] = -0.5 * ((w1 + w2) * c - 0.5 * j);
  h[1][1] = -0.5 * ((w1 - w2) * c + 0.5 * j);
  h[2][2] = -0.5 * ((w2 - w1) * c + 0.5 * j);
  h[3][3] = -0.5 * (-(w1 + w2) * c - 0.5 * j);
  // rows 00 and 11 couple to 01 and 10 only
  h[0][1] = h[0][2] = up;
  h[1][3] = h[2][3] = up;
  h[1][0] = h[2][0] = std::conj(up);
  h[3][1] = h[3][2] = std::conj(up);
  return h;
}

// Frame exponents k with lab = e^{i k w t} rotating.
inline std::vector<double> frameExponents(std::size_t dim) {
  if (dim == 2) return {0.5, -0.5};
  return {0.5, -0.5, -0.5, -1.5};
}

// Rotating-frame derivative obtained by differentiating lab = e^{ikwt} d and substituting the lab
// equations: d' = e^{-ikwt} c' - i k w d.
template <class Params, std::size_t N>
std::vector<Complex> rotatingDerivative(double t, const std::vector<Complex>& d, const Params& p) {
  const double w = p.drive.radPerUs();
  const auto k = frameExponents(N);
  std::vector<Complex> lab(N);
  for (std::size_t i = 0; i < N; ++i) lab[i] = std::exp(I * k[i] * w * t) * d[i];
  const auto labDot = minusIH<N>(labHamiltonian(t, p), lab);
  std::vector<Complex> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = std::exp(-I * k[i] * w * t) * labDot[i] - I * k[i] * w * d[i];
  return out;
}

// Resonant Rabi flop in the rotating frame at delta = 0 starting from |0>.
inline std::array<Complex, 2> rabi(double t, double rabiRadPerUs) {
  return {std::cos(0.5 * rabiRadPerUs * t), I * std::sin(0.5 * rabiRadPerUs * t)};
}

inline double maxAbsDiff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace oracle

namespace gen {

using spingate::AngularFrequency;
using spingate::Complex;

// Fixed-seed generator so failures reproduce.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 20240917) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  std::vector<Complex> state(std::size_t dim) {
    std::normal_distribution<double> n;
    std::vector<Complex> v(dim);
    double norm = 0.0;
    for (auto& a : v) {
      a = {n(engine_), n(engine_)};
      norm += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(norm);
    return v;
  }

  // Arbitrary (not necessarily physical) frequencies in 2pi MHz; delta may be negative.
  spingate::OneQubitParams oneQubit() {
    return {AngularFrequency::twoPiMHz(uniform(1.0, 300.0)), AngularFrequency::twoPiMHz(uniform(0.01, 5.0)),
            AngularFrequency::twoPiMHz(uniform(1.0, 300.0)), AngularFrequency::twoPiMHz(uniform(-0.1, 0.1))};
  }
  spingate::TwoQubitParams twoQubit() {
    return {AngularFrequency::twoPiMHz(uniform(1.0, 200.0)), AngularFrequency::twoPiMHz(uniform(1.0, 200.0)),
            AngularFrequency::twoPiMHz(uniform(0.1, 30.0)), AngularFrequency::twoPiMHz(uniform(0.01, 5.0)),
            AngularFrequency::twoPiMHz(uniform(1.0, 300.0)), AngularFrequency::twoPiMHz(uniform(-0.1, 0.1))};
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace gen
