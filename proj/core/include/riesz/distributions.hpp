#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "riesz/pairkernel.hpp"
#include "riesz/riesz.hpp"
#include "riesz/shapes.hpp"

namespace riesz {

/// Weighted sample of pair distances. The step function
///   F(r) = sum of w_i over t_i <= r
/// estimates the interpoint distance distribution, the product-measure
/// volume of pairs at distance <= r; F(diam) = Vol(X)^2.
struct DistanceDistribution {
  std::vector<double> t;       // increasing
  std::vector<double> cum;     // cum[i] = weight of t[0..i]
  std::vector<double> weight;  // per sample
  std::vector<std::uint8_t> batch;
  int batches = 16;
  int m = 1;        // dimension of the sampled stratum
  double diam = 0.0;
  std::size_t n_pairs = 0;
  std::uint64_t seed = 0;

  double total() const { return cum.empty() ? 0.0 : cum.back(); }
  double operator()(double r) const;
  /// Kish effective sample size (sum w)^2 / sum w^2.
  double effective_size() const;
  /// Batch-mean estimate of sum_i w_i g(t_i).
  template <class G>
  std::pair<double, double> integral(G g) const;
};

/// Plain pseudo-random pair sample of the default stratum (no near window,
/// so the draws are independent and identically distributed).
DistanceDistribution interpoint_cdf(const Shape& shape, std::size_t n_pairs, std::uint64_t seed);

/// sup_r |F_a(r)/F_a(inf) - F_b(r)/F_b(inf)|.
double ks_distance(const DistanceDistribution& a, const DistanceDistribution& b);
/// Two-sample threshold lambda * sqrt((n_a + n_b) / (n_a n_b)) using
/// effective sizes. lambda = 1.817 is the 3-sigma (p = 0.0027) quantile of
/// the Kolmogorov distribution.
double ks_threshold(const DistanceDistribution& a, const DistanceDistribution& b,
                    double lambda = 1.817);

/// |sum_i w_i t_i^{q-1} - I_{q-1}(X)| in units of the combined standard error.
/// Requires q > 1 - m.
double mellin_check(const DistanceDistribution& dist, double q, const EnergyValue& energy);

/// Columns r, F(r) on `points` equispaced radii in [0, diam].
void write_csv(std::ostream& os, const DistanceDistribution& dist, int points = 257);

/// Lines meeting a convex body. Each sampled line carries weight
/// (measure of the sampled line set) / n_lines; lines missing the body are
/// dropped.
struct ChordDistribution {
  int dim = 2;
  std::vector<double> length;
  std::vector<double> weight;
  std::vector<std::uint8_t> batch;
  int batches = 16;
  double hitting_measure = 0.0;
  double hitting_error = 0.0;
  double sampled_measure = 0.0;  // measure of all sampled lines
  double diam = 0.0;
  std::size_t n_lines = 0;
  std::uint64_t seed = 0;

  double mean_length() const;
};

/// Line measure: uniform direction on the half sphere (total pi in the plane,
/// 2 pi in space) times Lebesgue measure on the orthogonal offsets. Offsets
/// are drawn from a slab 1.25 times the body's circumradius. Balls and disks
/// only (ValidationError otherwise).
ChordDistribution chord_length_distribution(const Shape& body, std::size_t n_lines,
                                            std::uint64_t seed);

struct CroftonConstants {
  double volume = 0.0;    // Vol = volume * integral of chord length
  double boundary = 0.0;  // Vol(boundary) = boundary * measure of hitting lines
};

/// Frozen constants from the unit disk / unit ball calibration
/// (d = 2: 1/pi and 1; d = 3: 1/(2 pi) and 2/pi).
CroftonConstants crofton_constants(int dim);
/// Re-runs the calibration on the unit disk or ball.
CroftonConstants calibrate_crofton(int dim, std::size_t n_lines, std::uint64_t seed);

struct CroftonEstimate {
  double volume = 0.0;
  double volume_error = 0.0;
  double boundary = 0.0;
  double boundary_error = 0.0;
};

CroftonEstimate crofton_moments(const ChordDistribution& chords);
CroftonEstimate crofton_moments(const ChordDistribution& chords, const CroftonConstants& c);

/// Columns length, weight.
void write_csv(std::ostream& os, const ChordDistribution& chords);

template <class G>
std::pair<double, double> DistanceDistribution::integral(G g) const {
  std::vector<double> part(static_cast<std::size_t>(batches), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) part[batch[i]] += weight[i] * g(t[i]);
  double mean = 0.0;
  for (double p : part) mean += p;
  const double nb = static_cast<double>(batches);
  double ss = 0.0;
  for (double p : part) ss += (nb * p - mean) * (nb * p - mean);
  // each batch estimates the total with its own weights times nb
  const double err = batches > 1 ? std::sqrt(ss / (nb - 1.0) / nb) : 0.0;
  return {mean, err};
}

}  // namespace riesz
