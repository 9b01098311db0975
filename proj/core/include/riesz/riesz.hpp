#pragma once

#include <cstddef>

#include "riesz/pairkernel.hpp"
#include "riesz/shapes.hpp"
#include "riesz/special.hpp"

namespace riesz {

enum class EnergyMethod {
  kDirect,     // plain pair average of |x-y|^z
  kStokes,     // boundary form for bodies
  kHistogram,  // regularized: profile model near t = 0, pairs elsewhere
};
const char* to_string(EnergyMethod method);

struct EnergyValue {
  Complex z{0.0, 0.0};
  Complex value{0.0, 0.0};
  double std_error = 0.0;
  EnergyMethod method = EnergyMethod::kDirect;
  std::size_t n_pairs = 0;
};

/// I_z(X) = double integral of |x-y|^z over X x X (interior for bodies).
/// Re z <= -m is rejected (DomainError); use beta_eval there. Direct pair
/// sampling for Re z > -m/2, the regularized route below that.
EnergyValue riesz_energy(const Shape& shape, Complex z, const PairPlan& plan);

/// -1/((z+2)(z+d)) times the boundary integral of |x-y|^{z+2} <n_x, n_y>.
/// Requires a body and Re z > -d-1; z = -2 and z = -d are rejected.
EnergyValue body_energy_stokes(const Shape& body, Complex z, const PairPlan& plan);

/// Moebius energy of a single closed curve: the integral over pairs of
/// |x-y|^-2 - d_C(x,y)^-2, d_C the shorter arc length between x and y.
/// Uniform parameter grid with n_grid nodes, Richardson-combined with the
/// grid of n_grid/2 nodes. Equals 4 for a round circle.
double moebius_energy(const Shape& curve, int n_grid = 2048);

}  // namespace riesz
