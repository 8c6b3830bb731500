#include "hepbell/angle.hpp"

#include "hepbell/errors.hpp"

namespace hepbell {

double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r = 0.0;
    return r;
}

double circular_distance(double a, double b, double period) {
    const double d = wrap(a - b, period);
    return std::min(d, period - d);
}

Angle::Angle(double radians) {
    if (!std::isfinite(radians)) throw InvalidArgument("angle must be finite");
    value_ = wrap(radians, kTwoPi);
}

double Angle::modulo_pi() const noexcept { return wrap(value_, kPi); }

}  // namespace hepbell
