#include "riesz/distributions.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <numeric>
#include <ostream>

#include "engine.hpp"
#include "riesz/constants.hpp"
#include "riesz/errors.hpp"
#include "riesz/random.hpp"

namespace riesz {

namespace {

struct Collect {
  std::vector<std::pair<double, double>> items;
  void add(double t, double w, double) { items.emplace_back(t, w); }
};

// total of per-batch sums, error of the batch means
std::pair<double, double> batch_total(const std::vector<double>& part) {
  const double nb = static_cast<double>(part.size());
  const double mean = std::accumulate(part.begin(), part.end(), 0.0);
  double ss = 0.0;
  for (double p : part) ss += (nb * p - mean) * (nb * p - mean);
  return {mean, part.size() > 1 ? std::sqrt(ss / (nb - 1.0) / nb) : 0.0};
}

}  // namespace

double DistanceDistribution::operator()(double r) const {
  const auto it = std::upper_bound(t.begin(), t.end(), r);
  if (it == t.begin()) return 0.0;
  return cum[static_cast<std::size_t>(it - t.begin()) - 1];
}

double DistanceDistribution::effective_size() const {
  double s = 0.0, s2 = 0.0;
  for (double w : weight) {
    s += w;
    s2 += w * w;
  }
  return s2 > 0.0 ? s * s / s2 : 0.0;
}

DistanceDistribution interpoint_cdf(const Shape& shape, std::size_t n_pairs, std::uint64_t seed) {
  if (n_pairs < 1000) throw ValidationError("interpoint_cdf needs at least 1000 pairs");
  const Stratum st = shape.default_stratum();
  const detail::StratumSampler sampler(shape, st);
  DistanceDistribution d;
  d.m = shape.stratum_dim(st);
  d.diam = exact_diameter(shape);
  d.n_pairs = n_pairs;
  d.seed = seed;
  const detail::EngineRun run{n_pairs, seed, PairSampling::kRandom, d.batches, 0.0, 0.0, 6};
  const auto parts = detail::run_pairs<Collect>(sampler, run, [] { return Collect{}; });

  struct Row {
    double t, w;
    std::uint8_t b;
  };
  std::vector<Row> rows;
  rows.reserve(n_pairs);
  const double inv = 1.0 / static_cast<double>(parts.size());
  for (std::size_t b = 0; b < parts.size(); ++b) {
    for (const auto& [t, w] : parts[b].items) rows.push_back({t, w * inv, static_cast<std::uint8_t>(b)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
  d.t.resize(rows.size());
  d.weight.resize(rows.size());
  d.cum.resize(rows.size());
  d.batch.resize(rows.size());
  double c = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.t[i] = rows[i].t;
    d.weight[i] = rows[i].w;
    d.batch[i] = rows[i].b;
    c += rows[i].w;
    d.cum[i] = c;
  }
  return d;
}

double ks_distance(const DistanceDistribution& a, const DistanceDistribution& b) {
  if (a.t.empty() || b.t.empty()) throw ValidationError("empty distance distribution");
  const double ta = a.total(), tb = b.total();
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.t.size() || j < b.t.size()) {
    double r;
    if (j == b.t.size() || (i < a.t.size() && a.t[i] <= b.t[j])) {
      r = a.t[i];
    } else {
      r = b.t[j];
    }
    while (i < a.t.size() && a.t[i] <= r) ++i;
    while (j < b.t.size() && b.t[j] <= r) ++j;
    const double fa = i == 0 ? 0.0 : a.cum[i - 1] / ta;
    const double fb = j == 0 ? 0.0 : b.cum[j - 1] / tb;
    best = std::max(best, std::abs(fa - fb));
  }
  return best;
}

double ks_threshold(const DistanceDistribution& a, const DistanceDistribution& b, double lambda) {
  const double na = a.effective_size(), nb = b.effective_size();
  if (!(na > 0.0 && nb > 0.0)) throw ValidationError("empty distance distribution");
  return lambda * std::sqrt((na + nb) / (na * nb));
}

double mellin_check(const DistanceDistribution& dist, double q, const EnergyValue& energy) {
  if (!(q > 1.0 - dist.m)) {
    throw DomainError("the Mellin transform of f' at q needs q > 1 - m");
  }
  if (std::abs(energy.z - Complex(q - 1.0, 0.0)) > 1e-12) {
    throw ValidationError("energy exponent must equal q - 1");
  }
  const auto [lhs, lhs_err] = dist.integral([q](double t) { return std::pow(t, q - 1.0); });
  const double rhs = energy.value.real();
  const double scale = std::hypot(lhs_err, energy.std_error);
  return std::abs(lhs - rhs) / std::max(scale, 1e-12 * std::abs(rhs));
}

void write_csv(std::ostream& os, const DistanceDistribution& dist, int points) {
  if (points < 2) throw ValidationError("need at least two output radii");
  os << "r,F\n";
  for (int i = 0; i < points; ++i) {
    const double r = dist.diam * i / (points - 1);
    os << r << ',' << dist(r) << '\n';
  }
}

double ChordDistribution::mean_length() const {
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < length.size(); ++i) {
    s += weight[i] * length[i];
    w += weight[i];
  }
  if (w == 0.0) throw ValidationError("empty chord distribution");
  return s / w;
}

ChordDistribution chord_length_distribution(const Shape& body, std::size_t n_lines,
                                            std::uint64_t seed) {
  if (body.kind() != ShapeKind::kBody || body.is_union()) {
    throw ValidationError("chord distributions need a single convex body (a disk or a ball)");
  }
  if (n_lines < 1000) throw ValidationError("need at least 1000 lines");
  const auto& comp = body.components().front();
  const auto& b = std::get<Ball>(comp.primitive);
  const int d = b.dim;
  const Vec3 c = comp.placement.offset;
  const double rho = 1.25 * b.radius;

  ChordDistribution out;
  out.dim = d;
  out.diam = 2.0 * b.radius;
  out.n_lines = n_lines;
  out.seed = seed;
  out.sampled_measure = 0.5 * unit_sphere_volume(d - 1) * std::pow(2.0 * rho, d - 1);
  const double w = out.sampled_measure / static_cast<double>(n_lines);

  const int nb = out.batches;
  struct Part {
    std::vector<double> len;
    double hit = 0.0;
  };
  std::vector<Part> parts(static_cast<std::size_t>(nb));
  parallel_for(static_cast<std::size_t>(nb), [&](std::size_t k) {
    Rng rng(seed, (std::uint64_t{7} << 32) ^ (static_cast<std::uint64_t>(k) << 1));
    const std::size_t per = n_lines / static_cast<std::size_t>(nb) +
                            (k < n_lines % static_cast<std::size_t>(nb) ? 1 : 0);
    auto& part = parts[k];
    for (std::size_t i = 0; i < per; ++i) {
      Vec3 u, e1, e2;
      if (d == 2) {
        const double a = kPi * rng.uniform();
        u = Vec3(std::cos(a), std::sin(a), 0.0);
        e1 = Vec3(-u.y(), u.x(), 0.0);
        e2.setZero();
      } else {
        const double z = rng.uniform();
        const double ph = 2.0 * kPi * rng.uniform();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        u = Vec3(s * std::cos(ph), s * std::sin(ph), z);
        const Vec3 h = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
        e1 = u.cross(h).normalized();
        e2 = u.cross(e1);
      }
      const double p1 = rho * (2.0 * rng.uniform() - 1.0);
      const double p2 = d == 3 ? rho * (2.0 * rng.uniform() - 1.0) : 0.0;
      const Vec3 q = c + p1 * e1 + p2 * e2;
      // |q + s u - c|^2 = r^2
      const Vec3 qc = q - c;
      const double bq = qc.dot(u);
      const double disc = bq * bq - (qc.squaredNorm() - b.radius * b.radius);
      if (disc <= 0.0) continue;
      part.len.push_back(2.0 * std::sqrt(disc));
      part.hit += w;
    }
  });
  std::vector<double> hits;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (double l : parts[k].len) {
      out.length.push_back(l);
      out.weight.push_back(w);
      out.batch.push_back(static_cast<std::uint8_t>(k));
    }
    hits.push_back(parts[k].hit);
  }
  const auto [h, he] = batch_total(hits);
  out.hitting_measure = h;
  out.hitting_error = he;
  return out;
}

CroftonConstants crofton_constants(int dim) {
  if (dim == 2) return {1.0 / kPi, 1.0};
  if (dim == 3) return {1.0 / (2.0 * kPi), 2.0 / kPi};
  throw ValidationError("Crofton constants are tabulated for d = 2, 3");
}

CroftonConstants calibrate_crofton(int dim, std::size_t n_lines, std::uint64_t seed) {
  const Shape unit = ball(dim, 1.0);
  const auto ch = chord_length_distribution(unit, n_lines, seed);
  double first = 0.0;
  for (std::size_t i = 0; i < ch.length.size(); ++i) first += ch.weight[i] * ch.length[i];
  return {unit.measure(Stratum::kInterior) / first,
          unit.measure(Stratum::kBoundary) / ch.hitting_measure};
}

CroftonEstimate crofton_moments(const ChordDistribution& chords) {
  return crofton_moments(chords, crofton_constants(chords.dim));
}

CroftonEstimate crofton_moments(const ChordDistribution& chords, const CroftonConstants& c) {
  if (chords.length.empty()) throw ValidationError("empty chord distribution");
  std::vector<double> part(static_cast<std::size_t>(chords.batches), 0.0);
  for (std::size_t i = 0; i < chords.length.size(); ++i) {
    part[chords.batch[i]] += chords.weight[i] * chords.length[i];
  }
  const auto [first, first_err] = batch_total(part);
  CroftonEstimate e;
  e.volume = c.volume * first;
  e.volume_error = c.volume * first_err;
  e.boundary = c.boundary * chords.hitting_measure;
  e.boundary_error = c.boundary * chords.hitting_error;
  return e;
}

void write_csv(std::ostream& os, const ChordDistribution& chords) {
  os << "length,weight\n";
  for (std::size_t i = 0; i < chords.length.size(); ++i) {
    os << chords.length[i] << ',' << chords.weight[i] << '\n';
  }
}

}  // namespace riesz
