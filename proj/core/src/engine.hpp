#pragma once

// Pair-sampling engine shared by every double-integral estimator.
//
// Pairs come from two strata. The near stratum draws x on the shape and y
// from a window of the same piece around x; it carries psi(|x-y|), a smooth
// cutoff equal to 1 below near_radius/1.5 and 0 above near_radius. The far
// stratum draws x and y independently and carries 1 - psi for same-piece
// pairs and 1 otherwise. Every accumulator sees (t, weight, <n_x, n_y>) with
// weights already divided by the per-stratum pair count, so a plain weighted
// sum is an unbiased estimate of the double integral.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "riesz/pairkernel.hpp"
#include "riesz/parallel.hpp"
#include "riesz/random.hpp"
#include "sampler.hpp"

namespace riesz::detail {

inline double smootherstep(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

struct NearCutoff {
  double radius = 0.0;
  double operator()(double t) const {
    const double t0 = radius / 1.5;
    if (t <= t0) return 1.0;
    if (t >= radius) return 0.0;
    return 1.0 - smootherstep((t - t0) / (radius - t0));
  }
};

class UnitSource {
 public:
  UnitSource(int dim, PairSampling mode, std::uint64_t seed, std::uint64_t stream)
      : dim_(dim), rng_(seed, stream) {
    if (mode == PairSampling::kLattice) lattice_.emplace(dim, rng_);
  }
  void next(double* u) {
    if (lattice_) {
      lattice_->point(k_++, u);
    } else {
      for (int j = 0; j < dim_; ++j) u[j] = rng_.uniform();
    }
  }

 private:
  int dim_;
  Rng rng_;
  std::optional<KroneckerLattice> lattice_;
  std::uint64_t k_ = 0;
};

struct EngineRun {
  std::size_t n_pairs = 0;
  std::uint64_t seed = 0;
  PairSampling mode = PairSampling::kLattice;
  int batches = 16;
  double near_radius = 0.0;
  double near_fraction = 0.5;
  // stream family, so that different estimators fed the same seed use
  // independent streams
  std::uint64_t salt = 0;
};

// Runs all batches and returns one accumulator per batch, in batch order.
template <class Acc, class Make>
std::vector<Acc> run_pairs(const StratumSampler& s, const EngineRun& run, Make make) {
  const int nb = std::max(1, run.batches);
  std::vector<Acc> out(static_cast<std::size_t>(nb), make());
  const bool use_near = s.has_near() && run.near_radius > 0.0;
  const NearCutoff psi{run.near_radius};
  const int dx = s.dim();
  parallel_for(static_cast<std::size_t>(nb), [&](std::size_t b) {
    Acc& acc = out[b];
    const std::size_t per = run.n_pairs / static_cast<std::size_t>(nb) +
                            (b < run.n_pairs % static_cast<std::size_t>(nb) ? 1 : 0);
    const std::size_t n_near =
        use_near ? static_cast<std::size_t>(std::llround(run.near_fraction * static_cast<double>(per)))
                 : 0;
    const std::size_t n_far = per - n_near;
    const std::uint64_t stream = (run.salt << 32) ^ (static_cast<std::uint64_t>(b) << 1);
    double u[kMaxLatticeDim];
    PointSample x, y;
    if (n_near > 0) {
      UnitSource src(dx + s.near_dim(), run.mode, run.seed, stream);
      const double inv = 1.0 / static_cast<double>(n_near);
      for (std::size_t k = 0; k < n_near; ++k) {
        src.next(u);
        s.map(u, x);
        s.near(x, u + dx, run.near_radius, y);
        if (y.weight == 0.0) continue;
        const double t = (x.pos - y.pos).norm();
        if (!(t > 0.0)) continue;
        const double f = psi(t);
        if (f == 0.0) continue;
        const double nd = (x.has_normal && y.has_normal) ? x.normal.dot(y.normal) : 0.0;
        acc.add(t, x.weight * y.weight * f * inv, nd);
      }
    }
    if (n_far > 0) {
      UnitSource src(2 * dx, run.mode, run.seed, stream | 1);
      const double inv = 1.0 / static_cast<double>(n_far);
      for (std::size_t k = 0; k < n_far; ++k) {
        src.next(u);
        s.map(u, x);
        s.map(u + dx, y);
        const double t = (x.pos - y.pos).norm();
        if (!(t > 0.0)) continue;
        const double f = (use_near && x.piece == y.piece) ? 1.0 - psi(t) : 1.0;
        if (f == 0.0) continue;
        const double nd = (x.has_normal && y.has_normal) ? x.normal.dot(y.normal) : 0.0;
        acc.add(t, x.weight * y.weight * f * inv, nd);
      }
    }
  });
  return out;
}

// Batch-mean statistics of a scalar (or any vector of scalars) per batch.
struct MeanError {
  double mean = 0.0;
  double error = 0.0;
};

inline MeanError batch_stats(const std::vector<double>& v) {
  MeanError r;
  const double n = static_cast<double>(v.size());
  for (double x : v) r.mean += x;
  r.mean /= n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.error = std::sqrt(ss / (n - 1.0) / n);
  }
  return r;
}

}  // namespace riesz::detail
