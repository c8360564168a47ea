#pragma once

#include <complex>

namespace smoothnum {

using Real = double;
using Complex = std::complex<double>;

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace smoothnum
