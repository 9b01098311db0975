#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "engine.hpp"
#include "riesz/beta.hpp"
#include "riesz/errors.hpp"

namespace riesz {

double ProfilePolynomial::coefficient(int k) const {
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] == k) return coeffs[i];
  }
  return 0.0;
}

double ProfilePolynomial::coefficient_error(int k) const {
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] == k) {
      const auto j = static_cast<Eigen::Index>(i);
      return std::sqrt(std::max(0.0, covariance(j, j)));
    }
  }
  return 0.0;
}

double ProfilePolynomial::eval(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i) s += coeffs[i] * std::pow(t, powers[i]);
  return s;
}

int ProfilePolynomial::i_max() const {
  int best = 0;
  for (int k : powers) {
    if (k % 2 == 0) best = std::max(best, k / 2);
  }
  return best;
}

double default_t_fit(const Shape& shape) {
  double t = exact_diameter(shape) / 8.0;
  if (const auto gap = shape.min_component_gap()) t = std::min(t, 0.5 * *gap);
  return t;
}

int default_i_max(const Shape& shape) {
  const int k = shape.smoothness() - 1;
  return std::clamp((k - 1) / 2, 0, 2);
}

namespace {

struct MomentSum {
  double t_fit;
  int p;
  int count;
  bool normal;
  std::vector<double> m;
  std::size_t hits = 0;
  void add(double t, double w, double nd) {
    if (t >= t_fit) return;
    const double s2 = (t / t_fit) * (t / t_fit);
    const double ww = (normal ? w * nd : w) * std::pow(1.0 - s2, p);
    double sp = 1.0;
    for (int j = 0; j < count; ++j) {
      m[static_cast<std::size_t>(j)] += ww * sp;
      sp *= s2;
    }
    ++hits;
  }
};

struct SmallBinSum {
  double t_fit;
  bool normal;
  std::vector<double> mass;
  std::size_t hits = 0;
  void add(double t, double w, double nd) {
    if (t >= t_fit) return;
    const auto nb = mass.size();
    const auto b = std::min(nb - 1, static_cast<std::size_t>(t / t_fit * static_cast<double>(nb)));
    mass[b] += normal ? w * nd : w;
    ++hits;
  }
};

Eigen::MatrixXd sample_covariance(const std::vector<Eigen::VectorXd>& xs) {
  const auto n = static_cast<double>(xs.size());
  const auto dim = xs.front().size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& x : xs) mean += x;
  mean /= n;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& x : xs) cov += (x - mean) * (x - mean).transpose();
  return cov / ((n - 1.0) * n);
}

}  // namespace

ProfilePolynomial fit_profile(const Shape& shape, Stratum stratum, PairWeight weight,
                              const ProfileOptions& options, const PairPlan& plan) {
  validate(plan);
  const detail::StratumSampler sampler(shape, stratum);
  const bool normal = weight == PairWeight::kNormal;
  if (normal && !sampler.has_normals()) {
    throw ValidationError("normal weight needs a stratum of codimension 1");
  }
  const double diam = exact_diameter(shape);
  ProfilePolynomial prof;
  prof.m = shape.intrinsic_dim();
  prof.exponent = shape.stratum_dim(stratum) - 1;
  prof.stratum = stratum;
  prof.weight = weight;
  prof.t_fit = options.t_fit > 0.0 ? options.t_fit : default_t_fit(shape);
  prof.n_pairs = plan.n_pairs;
  if (prof.t_fit > diam / 4.0 * (1.0 + 1e-12)) {
    throw ValidationError("t_fit must not exceed diam / 4");
  }
  if (!(prof.t_fit > 0.0)) throw ValidationError("t_fit must be positive");
  const int i_max = options.i_max >= 0 ? options.i_max : default_i_max(shape);
  const int k_max = 2 * i_max;
  for (int k = 0; k <= k_max; ++k) {
    if (options.odd_powers || k % 2 == 0) prof.powers.push_back(k);
  }
  const auto np = static_cast<Eigen::Index>(prof.powers.size());
  const double T = prof.t_fit;
  const int e = prof.exponent;

  detail::EngineRun run{plan.n_pairs, plan.seed, plan.mode, plan.batches,
                        plan.near_radius < 0.0 ? 1.5 * T : plan.near_radius,
                        plan.near_fraction, 3};
  // with the window covering [0, 1.5 T] the far stratum only sees t < T across pieces
  const auto gap = shape.min_component_gap();
  if (sampler.has_near() && run.near_radius >= 1.5 * T && (!gap || *gap >= T)) {
    run.near_fraction = 1.0;
  }

  // Unknowns are scaled as c_k T^{e+k+1} for conditioning.
  std::vector<Eigen::VectorXd> batch_coeffs;
  std::size_t hits = 0;
  if (options.method == ProfileMethod::kMoments) {
    const int p = options.window_power;
    const auto parts = detail::run_pairs<MomentSum>(sampler, run, [&] {
      return MomentSum{T, p, static_cast<int>(np), normal, std::vector<double>(np, 0.0)};
    });
    Eigen::MatrixXd A(np, np);
    for (Eigen::Index j = 0; j < np; ++j) {
      for (Eigen::Index i = 0; i < np; ++i) {
        const int k = prof.powers[static_cast<std::size_t>(i)];
        A(j, i) = 0.5 * std::beta(0.5 * (e + k + 2 * j + 1), p + 1.0);
      }
    }
    const auto qr = A.colPivHouseholderQr();
    for (const auto& part : parts) {
      hits += part.hits;
      Eigen::VectorXd rhs(np);
      for (Eigen::Index j = 0; j < np; ++j) rhs(j) = part.m[static_cast<std::size_t>(j)];
      batch_coeffs.push_back(qr.solve(rhs));
    }
  } else {
    const int nb = std::max<int>(options.bins, static_cast<int>(np) + 2);
    const auto parts = detail::run_pairs<SmallBinSum>(sampler, run, [&] {
      return SmallBinSum{T, normal, std::vector<double>(static_cast<std::size_t>(nb), 0.0)};
    });
    // design: integral of s^{e+k} over each bin in s = t / T
    Eigen::MatrixXd A(nb, np);
    for (int b = 0; b < nb; ++b) {
      const double lo = static_cast<double>(b) / nb, hi = static_cast<double>(b + 1) / nb;
      for (Eigen::Index i = 0; i < np; ++i) {
        const int a = e + prof.powers[static_cast<std::size_t>(i)] + 1;
        A(b, i) = (std::pow(hi, a) - std::pow(lo, a)) / a;
      }
    }
    Eigen::VectorXd w = Eigen::VectorXd::Ones(nb);
    {
      std::vector<double> col(parts.size());
      for (int b = 0; b < nb; ++b) {
        for (std::size_t q = 0; q < parts.size(); ++q) col[q] = parts[q].mass[static_cast<std::size_t>(b)];
        const auto st = detail::batch_stats(col);
        const double se = st.error * std::sqrt(static_cast<double>(parts.size()));
        w(b) = se > 0.0 ? 1.0 / se : 0.0;
      }
      if (w.maxCoeff() == 0.0) w.setOnes();
      const double wmax = w.maxCoeff();
      for (int b = 0; b < nb; ++b) {
        if (w(b) == 0.0) w(b) = wmax;
      }
    }
    const Eigen::MatrixXd Aw = w.asDiagonal() * A;
    const auto qr = Aw.colPivHouseholderQr();
    for (const auto& part : parts) {
      hits += part.hits;
      Eigen::VectorXd rhs(nb);
      for (int b = 0; b < nb; ++b) rhs(b) = w(b) * part.mass[static_cast<std::size_t>(b)];
      batch_coeffs.push_back(qr.solve(rhs));
    }
  }
  if (hits < 100 * static_cast<std::size_t>(np)) {
    throw ValidationError("insufficient small-t samples for the profile fit; raise the pair "
                          "budget or t_fit");
  }
  Eigen::VectorXd scale(np);
  for (Eigen::Index i = 0; i < np; ++i) {
    scale(i) = 1.0 / std::pow(T, e + prof.powers[static_cast<std::size_t>(i)] + 1);
  }
  for (auto& c : batch_coeffs) c = c.cwiseProduct(scale);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(np);
  for (const auto& c : batch_coeffs) mean += c;
  mean /= static_cast<double>(batch_coeffs.size());
  prof.coeffs.assign(mean.data(), mean.data() + np);
  prof.covariance = sample_covariance(batch_coeffs);
  return prof;
}

ProfilePolynomial fit_beta_profile(const Shape& shape, const ProfileOptions& options,
                                   const PairPlan& plan) {
  switch (shape.kind()) {
    case ShapeKind::kCurve:
    case ShapeKind::kSurface:
      return fit_profile(shape, Stratum::kManifold, PairWeight::kUnit, options, plan);
    case ShapeKind::kBody:
      return fit_profile(shape, Stratum::kBoundary, PairWeight::kNormal, options, plan);
    case ShapeKind::kPlanarComposite: break;
  }
  throw ValidationError("planar composites have no smooth boundary profile");
}

}  // namespace riesz
