#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "riesz/shapes.hpp"
#include "riesz/special.hpp"

namespace riesz {

enum class PairSampling { kRandom, kLattice };

/// Sampling budget for a double integral over X x X.
///
/// kLattice uses a randomly shifted Kronecker point set per batch; kRandom
/// uses an independent pseudo-random stream per batch. Either way the batch
/// count is fixed, so results do not depend on the number of threads, and the
/// standard error is the spread of the batch estimates.
struct PairPlan {
  std::size_t n_pairs = 1'000'000;
  std::uint64_t seed = 0;
  PairSampling mode = PairSampling::kLattice;
  int batches = 16;
  /// Pairs closer than this are sampled from a local window. Negative picks
  /// a default per estimator; zero disables the near stratum.
  double near_radius = -1.0;
  double near_fraction = 0.5;
};

void validate(const PairPlan& plan);

/// |x - y|^exponent, optionally times <n_x, n_y>.
struct PairKernel {
  Complex exponent{0.0, 0.0};
  bool normal_weight = false;
  std::string tag() const;
};

struct PairEstimate {
  Complex value{0.0, 0.0};
  double std_error = 0.0;
  std::size_t n_pairs = 0;
  std::string kernel;
};

/// Monte-Carlo estimate of the double integral of the kernel over the
/// stratum. Refuses Re(exponent) <= -m (m the stratum dimension), where the
/// integral diverges. For -m < Re(exponent) <= -m/2 the estimate is unbiased
/// but its variance is infinite; riesz_energy switches to the regularized
/// route there.
PairEstimate pair_integral(const Shape& shape, Stratum stratum, const PairKernel& kernel,
                           const PairPlan& plan);

enum class PairWeight { kUnit, kNormal };
const char* to_string(PairWeight w);

struct WeightedHistogram {
  std::vector<double> edges;  // bins + 1 increasing values, edges[0] = 0
  std::vector<double> mass;
  std::vector<double> mass_error;
  double total = 0.0;
  PairWeight weight = PairWeight::kUnit;
  std::size_t n_pairs = 0;
};

/// Bin edges on [0, diam]: a quarter of the bins geometric below diam / 10,
/// the rest uniform above.
std::vector<double> histogram_edges(double diam, int bins);

/// Pair masses per distance bin. Requires bins >= 16 and n_pairs >= 1e4.
WeightedHistogram distance_histogram(const Shape& shape, Stratum stratum, int bins,
                                     const PairPlan& plan, PairWeight weight = PairWeight::kUnit);

/// Columns t_lo, t_hi, mass, stderr.
void write_csv(std::ostream& os, const WeightedHistogram& h);

}  // namespace riesz
