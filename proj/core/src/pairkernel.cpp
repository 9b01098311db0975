#include "riesz/pairkernel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "engine.hpp"
#include "riesz/errors.hpp"

namespace riesz {

void validate(const PairPlan& plan) {
  if (plan.n_pairs == 0) throw ValidationError("pair budget must be positive");
  if (plan.batches < 2) throw ValidationError("at least 2 batches are needed for an error bar");
  if (plan.n_pairs < static_cast<std::size_t>(plan.batches)) {
    throw ValidationError("pair budget smaller than the batch count");
  }
  if (!(plan.near_fraction > 0.0 && plan.near_fraction < 1.0)) {
    throw ValidationError("near fraction must lie in (0, 1)");
  }
}

std::string PairKernel::tag() const {
  std::ostringstream os;
  os << "|x-y|^(" << exponent.real();
  if (exponent.imag() != 0.0) os << (exponent.imag() > 0 ? "+" : "") << exponent.imag() << "i";
  os << ")";
  if (normal_weight) os << "*<nx,ny>";
  return os.str();
}

const char* to_string(PairWeight w) { return w == PairWeight::kUnit ? "unit" : "normal"; }

namespace {

struct ComplexSum {
  Complex z;
  bool normal;
  Complex sum{0.0, 0.0};
  void add(double t, double w, double nd) {
    const double ww = normal ? w * nd : w;
    sum += ww * cpow(t, z);
  }
};

}  // namespace

PairEstimate pair_integral(const Shape& shape, Stratum stratum, const PairKernel& kernel,
                           const PairPlan& plan) {
  validate(plan);
  const int m = shape.stratum_dim(stratum);
  if (kernel.exponent.real() <= -m) {
    std::ostringstream os;
    os << "exponent " << kernel.exponent.real() << " is at or below the integrability threshold "
       << -m << " of a " << m << "-dimensional stratum";
    throw DomainError(os.str());
  }
  const detail::StratumSampler sampler(shape, stratum);
  if (kernel.normal_weight && !sampler.has_normals()) {
    throw ValidationError("normal weight needs a stratum of codimension 1");
  }
  detail::EngineRun run{plan.n_pairs, plan.seed, plan.mode, plan.batches, plan.near_radius,
                        plan.near_fraction, 1};
  if (run.near_radius < 0.0) {
    run.near_radius = kernel.exponent.real() < 0.0 ? 0.25 * exact_diameter(shape) : 0.0;
  }
  const auto parts = detail::run_pairs<ComplexSum>(sampler, run, [&] {
    return ComplexSum{kernel.exponent, kernel.normal_weight};
  });
  std::vector<double> re, im;
  for (const auto& p : parts) {
    re.push_back(p.sum.real());
    im.push_back(p.sum.imag());
  }
  const auto sr = detail::batch_stats(re);
  const auto si = detail::batch_stats(im);
  PairEstimate e;
  e.value = {sr.mean, si.mean};
  e.std_error = std::hypot(sr.error, si.error);
  e.n_pairs = plan.n_pairs;
  e.kernel = kernel.tag();
  return e;
}

std::vector<double> histogram_edges(double diam, int bins) {
  if (bins < 16) throw ValidationError("histograms need at least 16 bins");
  if (!(diam > 0.0)) throw ValidationError("diameter must be positive");
  const int ng = bins / 4;
  const int nu = bins - ng;
  const double t1 = diam / 10.0;
  const double t0 = t1 * 1e-3;
  std::vector<double> e{0.0};
  for (int i = 0; i < ng; ++i) e.push_back(t0 * std::pow(t1 / t0, static_cast<double>(i) / (ng - 1)));
  for (int i = 1; i <= nu; ++i) e.push_back(t1 + (diam - t1) * i / nu);
  // guard against rounding beyond diam for pairs at exact diameter
  e.back() = diam * (1.0 + 1e-12);
  return e;
}

namespace {

struct BinSum {
  const std::vector<double>* edges;
  bool normal;
  std::vector<double> mass;
  void add(double t, double w, double nd) {
    const auto it = std::upper_bound(edges->begin(), edges->end(), t);
    if (it == edges->begin() || it == edges->end()) return;
    mass[static_cast<std::size_t>(it - edges->begin() - 1)] += normal ? w * nd : w;
  }
};

}  // namespace

WeightedHistogram distance_histogram(const Shape& shape, Stratum stratum, int bins,
                                     const PairPlan& plan, PairWeight weight) {
  validate(plan);
  if (plan.n_pairs < 10'000) throw ValidationError("histograms need at least 1e4 pairs");
  const detail::StratumSampler sampler(shape, stratum);
  const bool normal = weight == PairWeight::kNormal;
  if (normal && !sampler.has_normals()) {
    throw ValidationError("normal weight needs a stratum of codimension 1");
  }
  const double diam = exact_diameter(shape);
  WeightedHistogram h;
  h.edges = histogram_edges(diam, bins);
  h.weight = weight;
  h.n_pairs = plan.n_pairs;
  detail::EngineRun run{plan.n_pairs, plan.seed, plan.mode, plan.batches,
                        plan.near_radius < 0.0 ? 0.25 * diam : plan.near_radius,
                        plan.near_fraction, 2};
  const auto parts = detail::run_pairs<BinSum>(sampler, run, [&] {
    return BinSum{&h.edges, normal, std::vector<double>(static_cast<std::size_t>(bins), 0.0)};
  });
  h.mass.assign(static_cast<std::size_t>(bins), 0.0);
  h.mass_error.assign(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> col(parts.size());
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    for (std::size_t b = 0; b < parts.size(); ++b) col[b] = parts[b].mass[i];
    const auto st = detail::batch_stats(col);
    h.mass[i] = st.mean;
    h.mass_error[i] = st.error;
    h.total += st.mean;
  }
  return h;
}

void write_csv(std::ostream& os, const WeightedHistogram& h) {
  os << "t_lo,t_hi,mass,stderr\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    os << h.edges[i] << ',' << h.edges[i + 1] << ',' << h.mass[i] << ',' << h.mass_error[i]
       << '\n';
  }
}

}  // namespace riesz
