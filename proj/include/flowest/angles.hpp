#ifndef FLOWEST_ANGLES_HPP_
#define FLOWEST_ANGLES_HPP_

#include <cmath>

#include "flowest/types.hpp"

namespace flowest
{

/// Wrap into [0, 2π).
inline double wrap_2pi(double a)
{
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    // fmod of a tiny negative number can round up to exactly 2π
    if (r >= kTwoPi)
        r = 0.0;
    return r;
}

/// Shortest signed angle from b to a, in [-π, π].
inline double wrapped_diff(double a, double b)
{
    return std::atan2(std::sin(a - b), std::cos(a - b));
}

inline double rad2deg(double a) { return a * 180.0 / std::numbers::pi; }
inline double deg2rad(double a) { return a * std::numbers::pi / 180.0; }

} // namespace flowest

#endif
