#pragma once

#include <cmath>
#include <numbers>

namespace riesz {

inline constexpr double kPi = std::numbers::pi;

/// Volume of the unit j-sphere S^j in R^{j+1}: 2 pi^{(j+1)/2} / Gamma((j+1)/2).
/// sigma_0 = 2 (two points), sigma_1 = 2 pi, sigma_2 = 4 pi.
inline double unit_sphere_volume(int j) {
  const double h = 0.5 * (j + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

/// Volume of the unit d-ball: pi^{d/2} / Gamma(d/2 + 1).
inline double unit_ball_volume(int d) {
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

}  // namespace riesz
