#include "riesz/random.hpp"

#include <cmath>

namespace riesz {

KroneckerLattice::KroneckerLattice(int dim, Rng& rng) : dim_(dim) {
  // phi_d is the positive root of x^{d+1} = x + 1; alpha_j = phi_d^{-j}.
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
  for (int j = 0; j < dim; ++j) {
    const double alpha = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);
    step_[j] = static_cast<std::uint64_t>(std::ldexp(alpha, 64));
    shift_[j] = rng.bits();
  }
}

}  // namespace riesz
