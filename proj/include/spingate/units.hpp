#pragma once

#include <cmath>
#include <numbers>

namespace spingate {

/// Angular frequency stored in rad/us. The user-facing convention quotes frequencies
/// in "units of 2pi MHz", i.e. a value x stands for 2*pi*x rad/us.
class AngularFrequency {
public:
  constexpr AngularFrequency() = default;

  static constexpr AngularFrequency radPerUs(double value) { return AngularFrequency(value); }
  static constexpr AngularFrequency twoPiMHz(double value) {
    return AngularFrequency(2.0 * std::numbers::pi * value);
  }

  constexpr double radPerUs() const { return value_; }
  constexpr double twoPiMHz() const { return value_ / (2.0 * std::numbers::pi); }

  bool finite() const { return std::isfinite(value_); }

  constexpr AngularFrequency operator-() const { return AngularFrequency(-value_); }
  friend constexpr AngularFrequency operator+(AngularFrequency a, AngularFrequency b) {
    return AngularFrequency(a.value_ + b.value_);
  }
  friend constexpr AngularFrequency operator-(AngularFrequency a, AngularFrequency b) {
    return AngularFrequency(a.value_ - b.value_);
  }
  friend constexpr AngularFrequency operator*(double s, AngularFrequency a) {
    return AngularFrequency(s * a.value_);
  }
  friend constexpr auto operator<=>(AngularFrequency, AngularFrequency) = default;

private:
  constexpr explicit AngularFrequency(double v) : value_(v) {}
  double value_ = 0.0;
};

namespace literals {
constexpr AngularFrequency operator""_2piMHz(long double v) {
  return AngularFrequency::twoPiMHz(static_cast<double>(v));
}
constexpr AngularFrequency operator""_radPerUs(long double v) {
  return AngularFrequency::radPerUs(static_cast<double>(v));
}
}  // namespace literals

}  // namespace spingate
