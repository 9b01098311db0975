#include "riesz/riesz.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "riesz/beta.hpp"
#include "riesz/constants.hpp"
#include "riesz/errors.hpp"

namespace riesz {

const char* to_string(EnergyMethod method) {
  switch (method) {
    case EnergyMethod::kDirect: return "direct";
    case EnergyMethod::kStokes: return "stokes";
    case EnergyMethod::kHistogram: return "histogram";
  }
  return "?";
}

EnergyValue riesz_energy(const Shape& shape, Complex z, const PairPlan& plan) {
  const Stratum st = shape.default_stratum();
  const int m = shape.stratum_dim(st);
  if (z.real() <= -m) {
    std::ostringstream os;
    os << "Re z = " << z.real() << " <= -" << m
       << ": the energy integral diverges; use the beta continuation";
    throw DomainError(os.str());
  }
  EnergyValue out;
  out.z = z;
  out.n_pairs = plan.n_pairs;
  if (z.real() > -0.5 * m) {
    const auto e = pair_integral(shape, st, PairKernel{z, false}, plan);
    out.value = e.value;
    out.std_error = e.std_error;
    out.method = EnergyMethod::kDirect;
    return out;
  }
  if (shape.kind() == ShapeKind::kPlanarComposite) {
    throw DomainError("planar composites support only Re z > -1 (no smooth profile model)");
  }
  // profile of the stratum itself; bodies need all powers in the interior
  ProfileOptions opt;
  opt.odd_powers = shape.kind() == ShapeKind::kBody;
  if (opt.odd_powers) opt.i_max = 1;
  PairPlan fit_plan = plan;
  fit_plan.seed = plan.seed ^ 0xA5A5A5A5ULL;
  const auto prof = fit_profile(shape, st, PairWeight::kUnit, opt, fit_plan);
  const auto v = beta_eval(shape, z, prof, -1.0, plan);
  out.value = v.value;
  out.std_error = v.std_error;
  out.method = EnergyMethod::kHistogram;
  return out;
}

EnergyValue body_energy_stokes(const Shape& body, Complex z, const PairPlan& plan) {
  if (body.kind() != ShapeKind::kBody) throw ValidationError("the boundary form needs a body");
  const int d = body.ambient_dim();
  if (z.real() <= -d - 1) {
    throw DomainError("the boundary form needs Re z > -d - 1");
  }
  if (std::abs(z + 2.0) < 1e-9 || std::abs(z + static_cast<double>(d)) < 1e-9) {
    throw DomainError("z is a pole of the boundary-form prefactor; use residues");
  }
  const auto e = pair_integral(body, Stratum::kBoundary, PairKernel{z + 2.0, true}, plan);
  const Complex pre = -1.0 / ((z + 2.0) * (z + static_cast<double>(d)));
  EnergyValue out;
  out.z = z;
  out.value = pre * e.value;
  out.std_error = std::abs(pre) * e.std_error;
  out.method = EnergyMethod::kStokes;
  out.n_pairs = plan.n_pairs;
  return out;
}

namespace {

struct CurveParam {
  double a, b;  // x = a cos, y = b sin
  Vec2 at(double th) const { return {a * std::cos(th), b * std::sin(th)}; }
  double speed(double th) const {
    const double sx = a * std::sin(th), cy = b * std::cos(th);
    return std::sqrt(sx * sx + cy * cy);
  }
  double curvature(double th) const {
    const double s = speed(th);
    return a * b / (s * s * s);
  }
};

double grid_energy(const CurveParam& c, int n) {
  const double h = 2.0 * kPi / n;
  std::vector<Vec2> x(static_cast<std::size_t>(n));
  std::vector<double> v(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n) + 1);
  s[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = h * i;
    x[static_cast<std::size_t>(i)] = c.at(th);
    v[static_cast<std::size_t>(i)] = c.speed(th);
    s[static_cast<std::size_t>(i) + 1] =
        s[static_cast<std::size_t>(i)] +
        boost::math::quadrature::gauss<double, 20>::integrate([&](double t) { return c.speed(t); },
                                                               th, th + h);
  }
  const double L = s[static_cast<std::size_t>(n)];
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double k = c.curvature(h * i);
    double row = k * k / 12.0 * v[ui];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto uj = static_cast<std::size_t>(j);
      const double ds = std::abs(s[ui] - s[uj]);
      const double dc = std::min(ds, L - ds);
      row += (1.0 / (x[ui] - x[uj]).squaredNorm() - 1.0 / (dc * dc)) * v[uj];
    }
    total += row * v[ui];
  }
  return total * h * h;
}

}  // namespace

double moebius_energy(const Shape& curve, int n_grid) {
  if (curve.kind() != ShapeKind::kCurve) throw ValidationError("Moebius energy needs a curve");
  if (curve.components().size() != 1) {
    throw ValidationError("Moebius energy is defined here for a single closed curve");
  }
  if (n_grid < 16 || n_grid % 2 != 0) throw ValidationError("n_grid must be even and >= 16");
  const auto& prim = curve.components().front().primitive;
  CurveParam c{};
  if (const auto* ci = std::get_if<Circle>(&prim)) {
    c = {ci->radius, ci->radius};
  } else {
    const auto& e = std::get<Ellipse>(prim);
    c = {e.a, e.b};
  }
  const double fine = grid_energy(c, n_grid);
  const double coarse = grid_energy(c, n_grid / 2);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace riesz
