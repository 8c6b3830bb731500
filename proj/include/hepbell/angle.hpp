#pragma once

#include <cmath>
#include <numbers>

namespace hepbell {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Plane angle in radians, stored reduced to [0, 2π).
class Angle {
public:
    constexpr Angle() = default;
    explicit Angle(double radians);

    static Angle pi_fraction(double numerator, double denominator) {
        return Angle(numerator * kPi / denominator);
    }

    double radians() const noexcept { return value_; }

    // Headless-direction representative in [0, π). Used only for comparisons.
    double modulo_pi() const noexcept;

    friend bool operator==(const Angle&, const Angle&) = default;

private:
    double value_ = 0.0;
};

// Reduce x into [0, period), mapping values that round up to the period back to 0.
double wrap(double x, double period);

// Distance between two angles on the circle of the given period.
double circular_distance(double a, double b, double period);

}  // namespace hepbell
