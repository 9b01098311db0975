#pragma once

#include <complex>

namespace riesz {

using Complex = std::complex<double>;

/// Principal branch of log Gamma for complex arguments (Lanczos, g = 7).
/// Accurate to roughly 1e-14 relative away from the poles.
Complex log_gamma(Complex z);

/// Gamma(z) for complex z. Returns an infinite value at non-positive integers.
Complex gamma(Complex z);

/// 1 / Gamma(z); entire, exactly zero at non-positive integers.
Complex reciprocal_gamma(Complex z);

/// t^z = exp(z log t) with the real logarithm, t > 0.
inline Complex cpow(double t, Complex z) {
  if (z.imag() == 0.0) return {std::pow(t, z.real()), 0.0};
  return std::exp(z * std::log(t));
}

}  // namespace riesz
