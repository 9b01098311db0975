#include "riesz/beta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "engine.hpp"
#include "riesz/constants.hpp"
#include "riesz/errors.hpp"
#include "riesz/riesz.hpp"

namespace riesz {

namespace {

struct Form {
  bool body = false;
  int shift = 0;     // kernel exponent is z + shift
  int e = 0;         // density exponent
  int d = 0;
  bool normal = false;
};

Form form_of(const Shape& shape, const ProfilePolynomial& prof) {
  Form f;
  f.body = prof.body_form();
  f.shift = f.body ? 2 : 0;
  f.e = prof.exponent;
  f.d = shape.ambient_dim();
  f.normal = prof.weight == PairWeight::kNormal;
  if (f.body && !(shape.kind() == ShapeKind::kBody && f.normal)) {
    throw ValidationError("a boundary profile must be normal-weighted on a body");
  }
  if (!f.body && f.normal) {
    throw ValidationError("normal-weighted profiles are only defined on body boundaries");
  }
  return f;
}

// lowest admissible Re z
double strip_floor(const Form& f, const ProfilePolynomial& prof) {
  const int kmax = prof.powers.empty() ? 0 : prof.powers.back();
  if (f.body) return -f.d - kmax - 2.0;
  return -(f.e + 1) - kmax - 1.0;
}

std::vector<int> poles_of(const Form& f, const ProfilePolynomial& prof) {
  std::vector<int> p;
  for (int k : prof.powers) p.push_back(-(f.shift + f.e + 1) - k);
  if (f.body) p.push_back(-f.d);
  std::sort(p.begin(), p.end(), std::greater<>());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

void check_point(const Form& f, const ProfilePolynomial& prof, Complex z) {
  if (z.real() <= strip_floor(f, prof) + 1e-12) {
    std::ostringstream os;
    os << "z = " << z.real() << (z.imag() >= 0 ? "+" : "") << z.imag()
       << "i lies outside the continuation strip Re z > " << strip_floor(f, prof)
       << " allowed by the profile";
    throw DomainError(os.str());
  }
  for (int p : poles_of(f, prof)) {
    if (std::abs(z - Complex(p, 0.0)) < 0.1 - 1e-12) {
      std::ostringstream os;
      os << "z is within 0.1 of the pole at " << p << "; use residues for pole data";
      throw DomainError(os.str());
    }
  }
  if (f.body && std::abs(z + 2.0) < 1e-9) {
    throw DomainError("the boundary form is 0/0 at z = -2; evaluate nearby or use residues");
  }
}

struct Floor {
  double e1, e2;
  double operator()(double t) const { return detail::smootherstep((t - e1) / (e2 - e1)); }
};

// integral over [0, ts] of t^a (1 - chi(t)), continued in a
Complex model_term(Complex a, const Floor& chi, double ts) {
  const double lo = std::min(ts, chi.e1);
  Complex out = std::exp((a + 1.0) * std::log(lo)) / (a + 1.0);
  if (ts > chi.e1) {
    const double hi = std::min(ts, chi.e2);
    out += boost::math::quadrature::gauss<double, 32>::integrate(
        [&](double t) { return cpow(t, a) * (1.0 - chi(t)); }, chi.e1, hi);
  }
  return out;
}

struct SplitSum {
  const std::vector<Complex>* zs;
  int shift;
  bool normal;
  Floor chi;
  double ts;
  std::vector<Complex> sum;
  void add(double t, double w, double nd) {
    const double c = chi(t);
    const double g = c + (t >= ts ? 1.0 - c : 0.0);
    if (g == 0.0) return;
    const double ww = (normal ? w * nd : w) * g;
    const double lt = std::log(t);
    for (std::size_t i = 0; i < zs->size(); ++i) {
      const Complex a = (*zs)[i] + static_cast<double>(shift);
      sum[i] += ww * (a.imag() == 0.0 ? Complex(std::exp(a.real() * lt), 0.0) : std::exp(a * lt));
    }
  }
};

// emp + model without the body prefactor, with standard errors
std::vector<BetaValue> continued_integral(const Shape& shape, const Form& f,
                                          const std::vector<Complex>& zs,
                                          const ProfilePolynomial& prof, double t_split,
                                          const PairPlan& plan) {
  validate(plan);
  const double diam = exact_diameter(shape);
  const double ts = t_split > 0.0 ? t_split : diam;
  const Floor chi{prof.t_fit / 4.0, 3.0 * prof.t_fit / 4.0};
  const detail::StratumSampler sampler(shape, prof.stratum);
  detail::EngineRun run{plan.n_pairs, plan.seed, plan.mode, plan.batches,
                        plan.near_radius < 0.0 ? 1.5 * prof.t_fit : plan.near_radius,
                        plan.near_fraction, 4};
  const auto parts = detail::run_pairs<SplitSum>(sampler, run, [&] {
    return SplitSum{&zs, f.shift, f.normal, chi, ts, std::vector<Complex>(zs.size())};
  });
  std::vector<BetaValue> out;
  const auto np = static_cast<Eigen::Index>(prof.powers.size());
  std::vector<double> re(parts.size()), im(parts.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t b = 0; b < parts.size(); ++b) {
      re[b] = parts[b].sum[i].real();
      im[b] = parts[b].sum[i].imag();
    }
    const auto sr = detail::batch_stats(re);
    const auto si = detail::batch_stats(im);
    Eigen::VectorXcd grad(np);
    Complex model{0.0, 0.0};
    for (Eigen::Index k = 0; k < np; ++k) {
      const Complex a = zs[i] + static_cast<double>(f.shift + f.e + prof.powers[static_cast<std::size_t>(k)]);
      grad(k) = model_term(a, chi, ts);
      model += prof.coeffs[static_cast<std::size_t>(k)] * grad(k);
    }
    const double model_var =
        std::abs((grad.adjoint() * prof.covariance.cast<Complex>() * grad)(0, 0));
    BetaValue v;
    v.z = zs[i];
    v.value = Complex(sr.mean, si.mean) + model;
    v.std_error = std::sqrt(sr.error * sr.error + si.error * si.error + model_var);
    out.push_back(v);
  }
  return out;
}

struct LogSum {
  double sum = 0.0;
  void add(double t, double w, double nd) { sum += w * nd * std::log(t); }
};

}  // namespace

std::vector<int> pole_set(const Shape& shape, const ProfilePolynomial& profile) {
  const Form f = form_of(shape, profile);
  std::vector<int> out;
  for (int p : poles_of(f, profile)) {
    if (p > strip_floor(f, profile)) out.push_back(p);
  }
  return out;
}

std::vector<BetaValue> beta_eval_many(const Shape& shape, const std::vector<Complex>& zs,
                                      const ProfilePolynomial& profile, double t_split,
                                      const PairPlan& plan) {
  const Form f = form_of(shape, profile);
  for (const auto& z : zs) check_point(f, profile, z);
  auto vals = continued_integral(shape, f, zs, profile, t_split, plan);
  if (f.body) {
    for (auto& v : vals) {
      const Complex pre = -1.0 / ((v.z + 2.0) * (v.z + static_cast<double>(f.d)));
      v.value *= pre;
      v.std_error *= std::abs(pre);
    }
  }
  return vals;
}

BetaValue beta_eval(const Shape& shape, Complex z, const ProfilePolynomial& profile,
                    double t_split, const PairPlan& plan) {
  return beta_eval_many(shape, {z}, profile, t_split, plan).front();
}

const Pole* MeromorphicSummary::find(int z) const {
  for (const auto& p : poles) {
    if (p.z == z) return &p;
  }
  return nullptr;
}

nlohmann::json MeromorphicSummary::to_json() const {
  nlohmann::json poles_json = nlohmann::json::array();
  for (const auto& p : poles) {
    nlohmann::json j = {{"z", p.z}, {"res", p.residue}, {"stderr", p.std_error}, {"method", p.method}};
    if (p.check) {
      j["check"] = *p.check;
      j["check_stderr"] = p.check_error;
    }
    poles_json.push_back(j);
  }
  nlohmann::json values_json = nlohmann::json::array();
  for (const auto& v : values) {
    values_json.push_back({{"z", {v.z.real(), v.z.imag()}},
                           {"re", v.value.real()},
                           {"im", v.value.imag()},
                           {"stderr", v.std_error}});
  }
  return {{"poles", poles_json}, {"values", values_json}};
}

Complex contour_residue(const std::function<std::vector<Complex>(const std::vector<Complex>&)>& f,
                        double p, double radius, int n) {
  std::vector<Complex> zs;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * kPi * (k + 0.5) / n;
    zs.push_back(Complex(p, 0.0) + radius * Complex(std::cos(a), std::sin(a)));
  }
  const auto vals = f(zs);
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) acc += (zs[static_cast<std::size_t>(k)] - p) * vals[static_cast<std::size_t>(k)];
  return acc / static_cast<double>(n);
}

MeromorphicSummary residues(const Shape& shape, const ProfilePolynomial& profile,
                            const PairPlan& plan) {
  const Form f = form_of(shape, profile);
  MeromorphicSummary out;
  if (!f.body) {
    for (int k : profile.powers) {
      Pole p;
      p.z = -(f.e + 1) - k;
      p.residue = profile.coefficient(k);
      p.std_error = profile.coefficient_error(k);
      p.method = "profile";
      out.poles.push_back(p);
    }
    return out;
  }
  const int d = f.d;
  // Res(-d): boundary form, no profile derivatives involved
  Pole first;
  first.z = -d;
  if (d >= 3) {
    const auto j = continued_integral(shape, f, {Complex(-d, 0.0)}, profile, -1.0, plan).front();
    first.residue = j.value.real() / (d - 2);
    first.std_error = j.std_error / (d - 2);
    first.method = "stokes";
  } else {
    validate(plan);
    const detail::StratumSampler sampler(shape, Stratum::kBoundary);
    detail::EngineRun run{plan.n_pairs, plan.seed, plan.mode, plan.batches,
                          plan.near_radius < 0.0 ? 1.5 * profile.t_fit : plan.near_radius,
                          plan.near_fraction, 5};
    const auto parts = detail::run_pairs<LogSum>(sampler, run, [] { return LogSum{}; });
    std::vector<double> v;
    for (const auto& p : parts) v.push_back(-p.sum);
    const auto st = detail::batch_stats(v);
    first.residue = st.mean;
    first.std_error = st.error;
    first.method = "stokes-log";
  }
  {
    PairPlan cp = plan;
    cp.seed = plan.seed ^ 0x9E3779B97F4A7C15ULL;
    double err = 0.0;
    const Complex c = contour_residue(
        [&](const std::vector<Complex>& zs) {
          auto vals = beta_eval_many(shape, zs, profile, -1.0, cp);
          std::vector<Complex> r;
          for (std::size_t i = 0; i < vals.size(); ++i) {
            r.push_back(vals[i].value);
            err += std::pow(std::abs(zs[i] + static_cast<double>(d)) * vals[i].std_error, 2);
          }
          return r;
        },
        -d, 0.2, 16);
    first.check = c.real();
    // errors at the contour nodes are correlated; the node average bounds it
    first.check_error = std::sqrt(err / 16.0);
  }
  out.poles.push_back(first);
  for (int k : profile.powers) {
    if (k % 2 != 0) continue;
    Pole p;
    p.z = -d - (k + 1);
    const double denom = static_cast<double>((d + k - 1) * (k + 1));
    p.residue = -profile.coefficient(k) / denom;
    p.std_error = profile.coefficient_error(k) / denom;
    p.method = "profile";
    out.poles.push_back(p);
  }
  return out;
}

namespace {

enum class Std { kCircle, kSphere, kBall };

Std standard_of(const Shape& shape, double& r, int& d) {
  if (shape.kind() == ShapeKind::kPlanarComposite || shape.components().size() != 1) {
    throw ValidationError("closed-form beta exists only for a single circle, sphere or ball");
  }
  const auto& prim = shape.components().front().primitive;
  if (const auto* c = std::get_if<Circle>(&prim)) {
    r = c->radius;
    return Std::kCircle;
  }
  if (const auto* s = std::get_if<Sphere>(&prim)) {
    r = s->radius;
    return Std::kSphere;
  }
  if (const auto* b = std::get_if<Ball>(&prim)) {
    r = b->radius;
    d = b->dim;
    return Std::kBall;
  }
  throw ValidationError("closed-form beta exists only for a single circle, sphere or ball");
}

bool near_int(Complex z, double p) { return std::abs(z - Complex(p, 0.0)) < 1e-12; }

Complex beta_fn(Complex a, Complex b) { return gamma(a) * gamma(b) * reciprocal_gamma(a + b); }

}  // namespace

Complex closed_form_beta(const Shape& shape, Complex z) {
  double r = 1.0;
  int d = 0;
  const Std kind = standard_of(shape, r, d);
  const double lr = std::log(r), l2 = std::log(2.0);
  switch (kind) {
    case Std::kCircle: {
      for (int i = 0; i < 64; ++i) {
        if (near_int(z, -1.0 - 2.0 * i)) throw DomainError("closed form has a pole here");
      }
      return std::exp((z + 2.0) * (lr + l2)) * std::pow(kPi, 1.5) * gamma((z + 1.0) / 2.0) *
             reciprocal_gamma(z / 2.0 + 1.0);
    }
    case Std::kSphere: {
      if (near_int(z, -2.0)) throw DomainError("closed form has a pole here");
      return std::exp((z + 4.0) * lr + (z + 5.0) * l2) * kPi * kPi / (z + 2.0);
    }
    case Std::kBall: {
      if (near_int(z, -d)) throw DomainError("closed form has a pole here");
      for (int i = 0; i < 64; ++i) {
        if (near_int(z, -d - 1.0 - 2.0 * i)) throw DomainError("closed form has a pole here");
      }
      return std::exp((z + 2.0 * d) * lr + (z + static_cast<double>(d)) * l2) *
             unit_sphere_volume(d - 1) * unit_ball_volume(d - 1) *
             beta_fn((z + static_cast<double>(d) + 1.0) / 2.0, Complex((d + 1) / 2.0, 0.0)) /
             (z + static_cast<double>(d));
    }
  }
  return {};
}

double closed_form_residue(const Shape& shape, int pole) {
  return contour_residue(
             [&](const std::vector<Complex>& zs) {
               std::vector<Complex> v;
               for (const auto& z : zs) v.push_back(closed_form_beta(shape, z));
               return v;
             },
             pole, 0.1, 32)
      .real();
}

double extrapolate_diameter(const std::vector<int>& n, const std::vector<double>& log_b) {
  if (n.size() != 3 || log_b.size() != 3) throw ValidationError("extrapolation needs 3 points");
  Eigen::Matrix3d A;
  Eigen::Vector3d rhs;
  for (int i = 0; i < 3; ++i) {
    const double ni = n[static_cast<std::size_t>(i)];
    A(i, 0) = ni;
    A(i, 1) = 1.0;
    A(i, 2) = -std::log(ni);
    rhs(i) = log_b[static_cast<std::size_t>(i)];
  }
  return std::exp(A.fullPivLu().solve(rhs)(0));
}

DiameterEstimate diameter_via_beta(const Shape& shape, int n_max, const PairPlan& plan) {
  if (n_max < 16) throw ValidationError("diameter via beta needs n_max >= 16");
  DiameterEstimate out;
  out.n = {n_max / 4, n_max / 2, n_max};
  std::vector<double> lb, lb_err;
  PairPlan p = plan;
  if (p.near_radius < 0.0) p.near_radius = 0.0;
  for (std::size_t i = 0; i < out.n.size(); ++i) {
    p.seed = plan.seed + 7919 * i;
    const auto e = riesz_energy(shape, Complex(out.n[i], 0.0), p);
    const double v = e.value.real();
    if (!(v > 0.0)) throw DomainError("nonpositive energy estimate at large exponent");
    lb.push_back(std::log(v));
    lb_err.push_back(e.std_error / v);
    const double dn = std::exp(lb.back() / out.n[i]);
    out.d_n.push_back(dn);
    out.d_error.push_back(dn * lb_err.back() / out.n[i]);
  }
  out.limit = extrapolate_diameter(out.n, lb);
  double var = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    auto bumped = lb;
    bumped[i] += lb_err[i];
    const double dl = extrapolate_diameter(out.n, bumped) - out.limit;
    var += dl * dl;
  }
  out.limit_error = std::sqrt(var);
  return out;
}

}  // namespace riesz
