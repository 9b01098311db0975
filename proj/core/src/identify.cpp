#include "riesz/identify.hpp"

#include <cmath>

#include "riesz/constants.hpp"
#include "riesz/distributions.hpp"
#include "riesz/errors.hpp"

namespace riesz {

namespace {

bool is_surface_in_space(const Fingerprint& fp) { return !fp.is_body && fp.m == 2 && fp.d == 3; }

ShapeClass model_class(const Fingerprint& ref) {
  if (ref.is_body) return ShapeClass::kBall;
  if (ref.m == 1) return ShapeClass::kCircle;
  if (is_surface_in_space(ref)) return ShapeClass::kSphere2;
  throw ValidationError("reference fingerprint is not a ball, circle or 2-sphere");
}

Criterion within(std::string name, double v, double ev, double ref, double eref,
                 const ClassifyTolerance& tol) {
  Criterion c;
  c.name = std::move(name);
  c.value = v;
  c.reference = ref;
  c.tolerance = std::max(tol.relative * std::abs(ref), tol.sigmas * std::hypot(ev, eref));
  c.pass = std::abs(v - ref) <= c.tolerance;
  return c;
}

Criterion near_zero(std::string name, double v, double ev, double floor, double sigmas) {
  Criterion c;
  c.name = std::move(name);
  c.value = v;
  c.reference = 0.0;
  c.tolerance = std::max(floor, sigmas * ev);
  c.pass = std::abs(v) <= c.tolerance;
  return c;
}

std::string pole_name(int z) { return "Res(" + std::to_string(z) + ")"; }

Criterion compare_pole(const Fingerprint& fp, const Fingerprint& ref, int z,
                       const ClassifyTolerance& tol) {
  const Pole& a = fp.pole(z);
  const Pole& b = ref.pole(z);
  return within(pole_name(z), a.residue, a.std_error, b.residue, b.std_error, tol);
}

}  // namespace

const Pole& Fingerprint::pole(int z) const {
  const Pole* p = residues.find(z);
  if (p == nullptr) throw ValidationError("fingerprint has no residue at " + std::to_string(z));
  return *p;
}

nlohmann::json Fingerprint::to_json() const {
  nlohmann::json j;
  j["label"] = label;
  j["m"] = m;
  j["m_slope"] = m_slope;
  j["d"] = d;
  j["body"] = is_body;
  j["beta"] = residues.to_json();
  if (b_minus2) {
    j["B(-2)"] = {{"re", b_minus2->value.real()}, {"stderr", b_minus2->std_error}};
  }
  nlohmann::json dn = nlohmann::json::array();
  for (std::size_t i = 0; i < diameter.n.size(); ++i) {
    dn.push_back({{"n", diameter.n[i]}, {"d_n", diameter.d_n[i]}, {"stderr", diameter.d_error[i]}});
  }
  j["diameter"] = {{"sequence", dn}, {"limit", diameter.limit}, {"stderr", diameter.limit_error}};
  if (tail) {
    j["tail"] = {{"threshold", tail_threshold}, {"fraction", tail->value}, {"stderr", tail->std_error}};
  }
  j["n_pairs"] = n_pairs;
  j["seed"] = seed;
  return j;
}

Fingerprint fingerprint(const Shape& shape, const FingerprintBudget& budget) {
  if (shape.kind() == ShapeKind::kPlanarComposite) {
    throw ValidationError("fingerprints need a smooth body, curve or surface");
  }
  Fingerprint fp;
  fp.label = shape.label();
  fp.d = shape.ambient_dim();
  fp.n_pairs = budget.plan.n_pairs;
  fp.seed = budget.plan.seed;
  const double diam = exact_diameter(shape);

  // stratum dimension from the small-t growth of F
  const auto dist = interpoint_cdf(shape, budget.plan.n_pairs, budget.plan.seed ^ 0x5EEDULL);
  const double t0 = diam / 64.0, t1 = diam / 16.0;
  const double f0 = dist(t0), f1 = dist(t1);
  if (!(f0 > 0.0 && f1 > f0)) {
    throw DomainError("too few close pairs to read off the dimension; raise the pair budget");
  }
  fp.m_slope = std::log(f1 / f0) / std::log(t1 / t0);
  fp.m = static_cast<int>(std::lround(fp.m_slope));
  fp.is_body = fp.m == fp.d;

  const auto prof = fit_beta_profile(shape, {}, budget.plan);
  fp.residues = residues(shape, prof, budget.plan);
  if (shape.kind() == ShapeKind::kCurve) {
    fp.b_minus2 = beta_eval(shape, Complex(-2.0, 0.0), prof, -1.0, budget.plan);
    fp.residues.values.push_back(*fp.b_minus2);
  }
  fp.diameter = diameter_via_beta(shape, budget.diameter_n, budget.plan);
  if (shape.kind() == ShapeKind::kSurface) {
    fp.tail_threshold = diam * (1.0 - 0.5 * budget.tail_eps);
    fp.tail = tail_fraction(shape, fp.tail_threshold, budget.plan.n_pairs, budget.plan.seed);
  }
  return fp;
}

const char* to_string(ShapeClass c) {
  switch (c) {
    case ShapeClass::kBall: return "Ball";
    case ShapeClass::kCircle: return "Circle";
    case ShapeClass::kSphere2: return "Sphere2";
    case ShapeClass::kInconclusive: return "Inconclusive";
  }
  return "?";
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j;
  j["class"] = riesz::to_string(shape_class);
  if (shape_class == ShapeClass::kBall) j["dim"] = dim;
  if (shape_class != ShapeClass::kInconclusive) j["radius"] = radius;
  if (!failing.empty()) j["failing"] = failing;
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& c : evidence) {
    ev.push_back({{"criterion", c.name},
                  {"value", c.value},
                  {"reference", c.reference},
                  {"tolerance", c.tolerance},
                  {"margin", c.margin()},
                  {"pass", c.pass}});
  }
  j["evidence"] = ev;
  return j;
}

Verdict classify(const Fingerprint& fp, const Fingerprint& reference, const ClassifyTolerance& tol) {
  const ShapeClass model = model_class(reference);
  if (fp.n_pairs != reference.n_pairs) {
    throw ValidationError("fingerprints were computed with different pair budgets");
  }
  Verdict v;
  auto record = [&](Criterion c) {
    if (!c.pass && v.failing.empty()) v.failing = c.name;
    v.evidence.push_back(std::move(c));
  };

  Criterion lattice;
  lattice.name = "pole lattice";
  lattice.value = fp.m;
  lattice.reference = reference.m;
  lattice.pass = fp.m == reference.m && fp.is_body == reference.is_body && fp.d == reference.d;
  record(lattice);
  if (lattice.pass) {
    switch (model) {
      case ShapeClass::kBall:
        record(compare_pole(fp, reference, -fp.d, tol));
        record(compare_pole(fp, reference, -fp.d - 1, tol));
        break;
      case ShapeClass::kCircle: {
        if (!fp.b_minus2) throw ValidationError("curve fingerprint without B(-2)");
        record(near_zero("B(-2)", fp.b_minus2->value.real(), fp.b_minus2->std_error, tol.b_minus2,
                         tol.sigmas));
        record(compare_pole(fp, reference, -1, tol));
        break;
      }
      case ShapeClass::kSphere2: {
        const Pole& u = fp.pole(-4);
        record(near_zero("Res(-4)", u.residue, u.std_error, tol.umbilic, tol.sigmas));
        record(compare_pole(fp, reference, -2, tol));
        record(within("diameter", fp.diameter.limit, fp.diameter.limit_error,
                      reference.diameter.limit, reference.diameter.limit_error, tol));
        if (!fp.tail || !reference.tail) throw ValidationError("surface fingerprint without tail");
        record(within("tail", fp.tail->value, fp.tail->std_error, reference.tail->value,
                      reference.tail->std_error, tol));
        break;
      }
      case ShapeClass::kInconclusive: break;
    }
  }
  if (v.failing.empty()) {
    v.shape_class = model;
    v.dim = model == ShapeClass::kBall ? fp.d : 0;
    v.radius = radius_from_residue(fp);
  }
  return v;
}

double radius_from_residue(const Fingerprint& fp) {
  if (fp.is_body) {
    const double r = fp.pole(-fp.d).residue;
    if (!(r > 0.0)) throw DomainError("nonpositive volume residue");
    return std::pow(r / (unit_sphere_volume(fp.d - 1) * unit_ball_volume(fp.d)), 1.0 / fp.d);
  }
  if (fp.m == 1) {
    const double r = fp.pole(-1).residue;
    if (!(r > 0.0)) throw DomainError("nonpositive length residue");
    return r / (unit_sphere_volume(0) * 2.0 * kPi);
  }
  if (fp.m == 2) {
    const double r = fp.pole(-2).residue;
    if (!(r > 0.0)) throw DomainError("nonpositive area residue");
    return std::sqrt(r / (unit_sphere_volume(1) * 4.0 * kPi));
  }
  throw ValidationError("no model radius for intrinsic dimension " + std::to_string(fp.m));
}

}  // namespace riesz
