#include "riesz/special.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "riesz/constants.hpp"

namespace riesz {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    x += kLanczos[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  if (z.imag() == 0.0) return {std::tgamma(z.real()), 0.0};
  return std::exp(log_gamma(z));
}

Complex reciprocal_gamma(Complex z) {
  if (is_nonpositive_integer(z)) return {0.0, 0.0};
  if (z.imag() == 0.0) return {1.0 / std::tgamma(z.real()), 0.0};
  return std::exp(-log_gamma(z));
}

}  // namespace riesz
