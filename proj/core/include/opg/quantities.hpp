#pragma once

#include <compare>

namespace opg {

/// Strongly typed scalar carrying a unit role.  Arithmetic is defined only
/// where the radiometric formula chain needs it; mixing roles (adding a
/// length to a solid angle, comparing kelvin with meters) does not compile.
/// Values are stored in base SI units throughout; conversion happens at the
/// I/O boundary.
template <class Tag>
class Quantity {
 public:
  Quantity() = default;
  explicit constexpr Quantity(double value) : value_(value) {}

  constexpr double value() const { return value_; }

  friend constexpr Quantity operator+(Quantity a, Quantity b) {
    return Quantity{a.value_ + b.value_};
  }
  friend constexpr Quantity operator-(Quantity a, Quantity b) {
    return Quantity{a.value_ - b.value_};
  }
  friend constexpr Quantity operator*(double s, Quantity q) {
    return Quantity{s * q.value_};
  }
  friend constexpr Quantity operator*(Quantity q, double s) {
    return Quantity{q.value_ * s};
  }
  friend constexpr Quantity operator/(Quantity q, double s) {
    return Quantity{q.value_ / s};
  }
  /// Ratio of like quantities is dimensionless.
  friend constexpr double operator/(Quantity a, Quantity b) {
    return a.value_ / b.value_;
  }
  friend constexpr auto operator<=>(const Quantity&, const Quantity&) = default;

 private:
  double value_ = 0.0;
};

using Length = Quantity<struct LengthTag>;            ///< m
using Area = Quantity<struct AreaTag>;                ///< m^2
using Angle = Quantity<struct AngleTag>;              ///< rad
using SolidAngle = Quantity<struct SolidAngleTag>;    ///< sr
using Etendue = Quantity<struct EtendueTag>;          ///< m^2 sr
using Temperature = Quantity<struct TemperatureTag>;  ///< K
using Frequency = Quantity<struct FrequencyTag>;      ///< Hz
using Duration = Quantity<struct DurationTag>;        ///< s
using Energy = Quantity<struct EnergyTag>;            ///< J
using Power = Quantity<struct PowerTag>;              ///< W
using Radiance = Quantity<struct RadianceTag>;        ///< W m^-2 sr^-1

// Cross-role products used by the formula chain.
constexpr Area operator*(Length a, Length b) { return Area{a.value() * b.value()}; }
constexpr SolidAngle operator*(Angle a, Angle b) { return SolidAngle{a.value() * b.value()}; }
constexpr Etendue operator*(Area a, SolidAngle w) { return Etendue{a.value() * w.value()}; }
constexpr Etendue operator*(SolidAngle w, Area a) { return a * w; }
constexpr Power operator*(Radiance l, Etendue f) { return Power{l.value() * f.value()}; }
constexpr Power operator*(Etendue f, Radiance l) { return l * f; }

// Factories; the argument is interpreted in the named unit.
constexpr Length meters(double v) { return Length{v}; }
constexpr Length millimeters(double v) { return Length{v * 1e-3}; }
constexpr Length micrometers(double v) { return Length{v * 1e-6}; }
constexpr Area square_meters(double v) { return Area{v}; }
constexpr Angle radians(double v) { return Angle{v}; }
constexpr Angle milliradians(double v) { return Angle{v * 1e-3}; }
constexpr SolidAngle steradians(double v) { return SolidAngle{v}; }
constexpr Etendue square_meter_steradians(double v) { return Etendue{v}; }
constexpr Temperature kelvin(double v) { return Temperature{v}; }
constexpr Frequency hertz(double v) { return Frequency{v}; }
constexpr Duration seconds(double v) { return Duration{v}; }
constexpr Energy joules(double v) { return Energy{v}; }
constexpr Power watts(double v) { return Power{v}; }
constexpr Radiance watts_per_square_meter_steradian(double v) { return Radiance{v}; }

}  // namespace opg
