#pragma once

#include <cmath>
#include <numbers>

namespace bellsim {

inline constexpr double kPi = std::numbers::pi;

// Linear-polarization direction. Directions theta and theta + pi are the
// same physical axis, so the value is kept canonical in [0, pi).
class Angle {
public:
    Angle() = default;

    explicit Angle(double radians) : radians_(canonicalize(radians)) {}

    static Angle from_degrees(double degrees) { return Angle(degrees * kPi / 180.0); }

    double radians() const { return radians_; }
    double degrees() const { return radians_ * 180.0 / kPi; }

    friend bool operator==(const Angle& a, const Angle& b) { return a.radians_ == b.radians_; }
    friend bool operator<(const Angle& a, const Angle& b) { return a.radians_ < b.radians_; }

private:
    static double canonicalize(double r) {
        r = std::fmod(r, kPi);
        if (r < 0.0) r += kPi;
        if (r >= kPi) r = 0.0;  // fmod round-off can land exactly on pi
        return r;
    }

    double radians_ = 0.0;
};

}  // namespace bellsim
