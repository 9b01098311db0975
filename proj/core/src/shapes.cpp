#include "riesz/shapes.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <boost/math/special_functions/ellint_2.hpp>
#include <cmath>
#include <limits>

#include "riesz/constants.hpp"
#include "riesz/errors.hpp"
#include "riesz/planar.hpp"
#include "riesz/random.hpp"
#include "sampler.hpp"

namespace riesz {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be positive and finite");
  }
}

ShapeKind kind_of(const Primitive& p) {
  return std::visit(Overloaded{[](const Circle&) { return ShapeKind::kCurve; },
                               [](const Ellipse&) { return ShapeKind::kCurve; },
                               [](const Sphere&) { return ShapeKind::kSurface; },
                               [](const Torus&) { return ShapeKind::kSurface; },
                               [](const Ball&) { return ShapeKind::kBody; }},
                    p);
}

void validate_primitive(const Primitive& p) {
  std::visit(Overloaded{[](const Circle& c) { require_positive(c.radius, "radius"); },
                        [](const Ellipse& e) {
                          require_positive(e.a, "semi-axis a");
                          require_positive(e.b, "semi-axis b");
                        },
                        [](const Sphere& s) { require_positive(s.radius, "radius"); },
                        [](const Torus& t) {
                          require_positive(t.major, "major radius");
                          require_positive(t.minor, "minor radius");
                          if (t.minor >= t.major) {
                            throw ValidationError("torus needs minor < major radius");
                          }
                        },
                        [](const Ball& b) {
                          require_positive(b.radius, "radius");
                          if (b.dim != 2 && b.dim != 3) {
                            throw ValidationError("balls are supported in dimension 2 and 3");
                          }
                        }},
             p);
}

bool keeps_plane(const Placement& p) {
  const auto& r = p.rotation;
  return std::abs(std::abs(r(2, 2)) - 1.0) < 1e-12 && std::abs(r(0, 2)) < 1e-12 &&
         std::abs(r(1, 2)) < 1e-12 && std::abs(p.offset.z()) < 1e-12;
}

// radius of a round component (circle, sphere, ball), if it is one
std::optional<double> round_radius(const Primitive& p) {
  if (const auto* c = std::get_if<Circle>(&p)) return c->radius;
  if (const auto* s = std::get_if<Sphere>(&p)) return s->radius;
  if (const auto* b = std::get_if<Ball>(&p)) return b->radius;
  return std::nullopt;
}

// Closed-form separation for round components whose distance structure is
// fully captured by centers and radii (spheres, balls, coplanar circles).
bool analytic_pair(const Shape& s) { return s.ambient_dim() == 2 || s.kind() != ShapeKind::kCurve; }

std::vector<Vec3> dense_points(const Shape& s, std::size_t component, std::size_t n) {
  const auto& c = s.components()[component];
  const Shape single = Shape::from_components({c}, s.ambient_dim());
  std::vector<Vec3> out;
  for (const auto& p : sample(single, single.default_stratum(), n, 0, SampleMode::kStratified)) {
    out.push_back(p.position);
  }
  return out;
}

double dense_gap(const Shape& s, std::size_t i, std::size_t j, double* spacing = nullptr) {
  constexpr std::size_t n = 4096;
  const auto a = dense_points(s, i, n);
  const auto b = dense_points(s, j, n);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a) {
    for (const auto& q : b) best = std::min(best, (p - q).squaredNorm());
  }
  if (spacing) {
    const int m = s.intrinsic_dim();
    auto h = [&](std::size_t k) {
      const Shape single = Shape::from_components({s.components()[k]}, s.ambient_dim());
      return std::pow(single.volume() / static_cast<double>(n), 1.0 / m);
    };
    *spacing = 2.0 * std::max(h(i), h(j));
  }
  return std::sqrt(best);
}

// signed clearance between round components i and j (negative = overlap)
double round_clearance(const Shape& s, std::size_t i, std::size_t j) {
  const auto& a = s.components()[i];
  const auto& b = s.components()[j];
  const double ra = *round_radius(a.primitive);
  const double rb = *round_radius(b.primitive);
  const double c = (a.placement.offset - b.placement.offset).norm();
  if (s.kind() == ShapeKind::kBody) return c - ra - rb;
  const double outside = c - ra - rb;
  const double nested = std::abs(ra - rb) - c;
  return std::max(outside, nested);
}

double primitive_diameter(const Primitive& p) {
  return std::visit(Overloaded{[](const Circle& c) { return 2.0 * c.radius; },
                               [](const Ellipse& e) { return 2.0 * std::max(e.a, e.b); },
                               [](const Sphere& s) { return 2.0 * s.radius; },
                               [](const Torus& t) { return 2.0 * (t.major + t.minor); },
                               [](const Ball& b) { return 2.0 * b.radius; }},
                    p);
}

Primitive scale_primitive(const Primitive& p, double f) {
  return std::visit(Overloaded{[f](const Circle& c) -> Primitive { return Circle{c.radius * f}; },
                               [f](const Ellipse& e) -> Primitive { return Ellipse{e.a * f, e.b * f}; },
                               [f](const Sphere& s) -> Primitive { return Sphere{s.radius * f}; },
                               [f](const Torus& t) -> Primitive {
                                 return Torus{t.major * f, t.minor * f};
                               },
                               [f](const Ball& b) -> Primitive { return Ball{b.dim, b.radius * f}; }},
                    p);
}

void validate_region(PlanarRegion& region) {
  if (region.empty()) throw ValidationError("planar region needs at least one piece");
  for (auto& piece : region) {
    std::visit(Overloaded{[](ConvexPolygon& p) {
                            if (p.vertices.size() < 3) {
                              throw ValidationError("polygon needs at least 3 vertices");
                            }
                            if (area(PlanarPiece(p)) < 0.0) {
                              std::reverse(p.vertices.begin(), p.vertices.end());
                            }
                            const auto n = p.vertices.size();
                            for (std::size_t i = 0; i < n; ++i) {
                              const Vec2 e1 = p.vertices[(i + 1) % n] - p.vertices[i];
                              const Vec2 e2 = p.vertices[(i + 2) % n] - p.vertices[(i + 1) % n];
                              if (e1.x() * e2.y() - e1.y() * e2.x() < -1e-12) {
                                throw ValidationError("polygon is not convex");
                              }
                            }
                          },
                          [](AnnularSector& s) {
                            require_positive(s.r_outer, "outer radius");
                            if (s.r_inner < 0.0 || s.r_inner >= s.r_outer) {
                              throw ValidationError("sector needs 0 <= r_inner < r_outer");
                            }
                            if (!(s.theta1 > s.theta0) || s.theta1 - s.theta0 > 2.0 * kPi + 1e-12) {
                              throw ValidationError("sector needs theta0 < theta1 <= theta0 + 2 pi");
                            }
                          }},
               piece);
    if (!(area(piece) > 0.0)) throw ValidationError("degenerate planar piece");
  }
  if (self_overlap_area(region) > 1e-9 * area(region)) {
    throw ValidationError("planar pieces overlap");
  }
}

}  // namespace

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kCurve: return "curve";
    case ShapeKind::kSurface: return "surface";
    case ShapeKind::kBody: return "body";
    case ShapeKind::kPlanarComposite: return "planar_composite";
  }
  return "?";
}

const char* to_string(Stratum stratum) {
  switch (stratum) {
    case Stratum::kManifold: return "manifold";
    case Stratum::kInterior: return "interior";
    case Stratum::kBoundary: return "boundary";
  }
  return "?";
}

Placement Placement::then(const Placement& outer) const {
  return {outer.rotation * rotation, outer.rotation * offset + outer.offset};
}

Placement Placement::translation(const Vec3& v) {
  Placement p;
  p.offset = v;
  return p;
}

Placement Placement::rotation_about(const Vec3& axis, double angle) {
  if (!(axis.norm() > 0.0)) throw ValidationError("rotation axis must be nonzero");
  Placement p;
  p.rotation = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  return p;
}

Shape Shape::from_components(std::vector<Component> components, int ambient_dim,
                             std::string label) {
  if (components.empty()) throw ValidationError("shape needs at least one component");
  Shape s;
  s.kind_ = kind_of(components.front().primitive);
  for (const auto& c : components) {
    validate_primitive(c.primitive);
    if (kind_of(c.primitive) != s.kind_) {
      throw ValidationError("all components of a union must have the same kind");
    }
  }
  switch (s.kind_) {
    case ShapeKind::kCurve:
      s.intrinsic_dim_ = 1;
      if (ambient_dim != 2 && ambient_dim != 3) {
        throw ValidationError("curves live in ambient dimension 2 or 3");
      }
      break;
    case ShapeKind::kSurface:
      s.intrinsic_dim_ = 2;
      if (ambient_dim != 3) throw ValidationError("surfaces live in ambient dimension 3");
      break;
    case ShapeKind::kBody: {
      const int d = std::get<Ball>(components.front().primitive).dim;
      for (const auto& c : components) {
        if (std::get<Ball>(c.primitive).dim != d) {
          throw ValidationError("balls of a union must share a dimension");
        }
      }
      if (ambient_dim != d) throw ValidationError("a body has ambient dimension equal to its own");
      s.intrinsic_dim_ = d;
      break;
    }
    case ShapeKind::kPlanarComposite: break;
  }
  s.ambient_dim_ = ambient_dim;
  for (const auto& c : components) {
    if (ambient_dim == 2 && !keeps_plane(c.placement)) {
      throw ValidationError("placement leaves the plane of a planar shape");
    }
  }
  s.components_ = std::move(components);
  s.label_ = std::move(label);

  const auto n = s.components_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool round = round_radius(s.components_[i].primitive) &&
                         round_radius(s.components_[j].primitive) && analytic_pair(s);
      if (round) {
        if (round_clearance(s, i, j) < -1e-12) {
          throw ValidationError("components " + std::to_string(i) + " and " + std::to_string(j) +
                                " overlap");
        }
      } else {
        double h = 0.0;
        if (dense_gap(s, i, j, &h) < h) {
          throw ValidationError("components " + std::to_string(i) + " and " + std::to_string(j) +
                                " overlap or touch");
        }
      }
    }
  }
  return s;
}

Shape Shape::from_region(PlanarRegion region, std::string label) {
  validate_region(region);
  Shape s;
  s.kind_ = ShapeKind::kPlanarComposite;
  s.ambient_dim_ = 2;
  s.intrinsic_dim_ = 2;
  s.region_ = std::move(region);
  s.label_ = std::move(label);
  return s;
}

bool Shape::convex() const {
  if (kind_ == ShapeKind::kBody) return components_.size() == 1;
  if (kind_ == ShapeKind::kPlanarComposite) {
    return region_.size() == 1 && std::holds_alternative<ConvexPolygon>(region_.front());
  }
  return false;
}

Shape Shape::with_smoothness(int c_class) const {
  if (c_class < 1) throw ValidationError("smoothness class must be at least 1");
  Shape s = *this;
  s.smoothness_ = c_class;
  return s;
}

Shape Shape::with_label(std::string label) const {
  Shape s = *this;
  s.label_ = std::move(label);
  return s;
}

Stratum Shape::default_stratum() const {
  return (kind_ == ShapeKind::kBody || kind_ == ShapeKind::kPlanarComposite) ? Stratum::kInterior
                                                                              : Stratum::kManifold;
}

void Shape::check_stratum(Stratum stratum) const {
  const bool ok = [&] {
    switch (kind_) {
      case ShapeKind::kCurve:
      case ShapeKind::kSurface: return stratum == Stratum::kManifold;
      case ShapeKind::kBody: return stratum != Stratum::kManifold;
      case ShapeKind::kPlanarComposite: return stratum == Stratum::kInterior;
    }
    return false;
  }();
  if (!ok) {
    throw ValidationError(std::string("stratum '") + to_string(stratum) +
                          "' does not exist for a " + to_string(kind_));
  }
}

int Shape::stratum_dim(Stratum stratum) const {
  check_stratum(stratum);
  return stratum == Stratum::kBoundary ? intrinsic_dim_ - 1 : intrinsic_dim_;
}

double Shape::measure(Stratum stratum) const {
  check_stratum(stratum);
  if (kind_ == ShapeKind::kPlanarComposite) return area(region_);
  double total = 0.0;
  for (const auto& c : components_) {
    total += std::visit(
        Overloaded{[](const Circle& p) { return 2.0 * kPi * p.radius; },
                   [](const Ellipse& p) {
                     const double a = std::max(p.a, p.b), b = std::min(p.a, p.b);
                     const double k = std::sqrt(1.0 - (b / a) * (b / a));
                     return 4.0 * a * boost::math::ellint_2(k);
                   },
                   [](const Sphere& p) { return 4.0 * kPi * p.radius * p.radius; },
                   [](const Torus& p) { return 4.0 * kPi * kPi * p.major * p.minor; },
                   [stratum](const Ball& p) {
                     if (stratum == Stratum::kInterior) {
                       return unit_ball_volume(p.dim) * std::pow(p.radius, p.dim);
                     }
                     return unit_sphere_volume(p.dim - 1) * std::pow(p.radius, p.dim - 1);
                   }},
        c.primitive);
  }
  return total;
}

std::optional<double> Shape::min_component_gap() const {
  if (kind_ == ShapeKind::kPlanarComposite) {
    if (region_.size() < 2) return std::nullopt;
    return min_piece_gap(region_);
  }
  if (components_.size() < 2) return std::nullopt;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    for (std::size_t j = i + 1; j < components_.size(); ++j) {
      const bool round = round_radius(components_[i].primitive) &&
                         round_radius(components_[j].primitive) && analytic_pair(*this);
      gap = std::min(gap, round ? std::max(0.0, round_clearance(*this, i, j))
                                : dense_gap(*this, i, j));
    }
  }
  return gap;
}

Shape Shape::transformed(const Placement& motion) const {
  Shape s = *this;
  if (kind_ == ShapeKind::kPlanarComposite || ambient_dim_ == 2) {
    if (!keeps_plane(motion)) throw ValidationError("motion leaves the plane of a planar shape");
  }
  if (kind_ == ShapeKind::kPlanarComposite) {
    PlanarMotion m;
    m.linear = motion.rotation.topLeftCorner<2, 2>();
    m.offset = motion.offset.head<2>();
    s.region_ = transform(region_, m);
    return s;
  }
  for (auto& c : s.components_) c.placement = c.placement.then(motion);
  return s;
}

Shape Shape::scaled(double factor) const {
  require_positive(factor, "scale factor");
  Shape s = *this;
  for (auto& c : s.components_) {
    c.primitive = scale_primitive(c.primitive, factor);
    c.placement.offset *= factor;
  }
  for (auto& piece : s.region_) {
    std::visit(Overloaded{[factor](ConvexPolygon& p) {
                            for (auto& v : p.vertices) v *= factor;
                          },
                          [factor](AnnularSector& a) {
                            a.center *= factor;
                            a.r_inner *= factor;
                            a.r_outer *= factor;
                          }},
               piece);
  }
  return s;
}

Shape circle(double radius, int ambient_dim) {
  return Shape::from_components({{Circle{radius}, {}}}, ambient_dim, "circle");
}
Shape ellipse(double a, double b, int ambient_dim) {
  return Shape::from_components({{Ellipse{a, b}, {}}}, ambient_dim, "ellipse");
}
Shape sphere(double radius) { return Shape::from_components({{Sphere{radius}, {}}}, 3, "sphere"); }
Shape torus(double major, double minor) {
  return Shape::from_components({{Torus{major, minor}, {}}}, 3, "torus");
}
Shape ball(int dim, double radius) {
  return Shape::from_components({{Ball{dim, radius}, {}}}, dim, dim == 2 ? "disk" : "ball");
}

Shape shape_union(const std::vector<Shape>& parts) {
  if (parts.empty()) throw ValidationError("union of no shapes");
  std::vector<Component> comps;
  int smooth = kAnalyticSmoothness;
  for (const auto& p : parts) {
    if (p.kind() == ShapeKind::kPlanarComposite) {
      throw ValidationError("use planar_composite for planar regions");
    }
    if (p.ambient_dim() != parts.front().ambient_dim()) {
      throw ValidationError("union parts must share the ambient dimension");
    }
    comps.insert(comps.end(), p.components().begin(), p.components().end());
    smooth = std::min(smooth, p.smoothness());
  }
  return Shape::from_components(std::move(comps), parts.front().ambient_dim(), "union")
      .with_smoothness(smooth);
}

Shape planar_composite(PlanarRegion region) {
  return Shape::from_region(std::move(region), "planar_composite");
}

std::vector<ShapePoint> sample(const Shape& shape, Stratum stratum, std::size_t n,
                               std::uint64_t seed, SampleMode mode) {
  if (n == 0) throw ValidationError("sample count must be at least 1");
  const detail::StratumSampler sampler(shape, stratum);
  std::vector<ShapePoint> out;
  out.reserve(n);
  Rng rng(seed, 0);
  std::optional<KroneckerLattice> lattice;
  if (mode == SampleMode::kStratified && sampler.dim() > 1) lattice.emplace(sampler.dim(), rng);
  const double jitter = rng.uniform();
  double u[kMaxLatticeDim];
  detail::PointSample p;
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mode == SampleMode::kRandom) {
      for (int j = 0; j < sampler.dim(); ++j) u[j] = rng.uniform();
    } else if (lattice) {
      lattice->point(i, u);
    } else {
      u[0] = (static_cast<double>(i) + jitter) * inv;
    }
    sampler.map(u, p);
    ShapePoint sp;
    sp.position = p.pos;
    sp.weight = p.weight * inv;
    if (sampler.has_normals()) sp.normal = p.normal;
    out.push_back(sp);
  }
  return out;
}

Curvatures principal_curvatures(const Shape& shape, double u, double v, std::size_t component) {
  (void)u;
  if (shape.kind() != ShapeKind::kSurface) {
    throw ValidationError("principal curvatures need a surface");
  }
  if (component >= shape.components().size()) throw ValidationError("no such component");
  const auto& prim = shape.components()[component].primitive;
  Curvatures k;
  if (const auto* s = std::get_if<Sphere>(&prim)) {
    k.k1 = k.k2 = 1.0 / s->radius;
    return k;
  }
  const auto& t = std::get<Torus>(prim);
  const double k_tube = 1.0 / t.minor;
  const double k_round = std::cos(v) / (t.major + t.minor * std::cos(v));
  k.k1 = std::max(k_tube, k_round);
  k.k2 = std::min(k_tube, k_round);
  return k;
}

double umbilicity_defect(const Shape& shape, int n) {
  if (shape.kind() != ShapeKind::kSurface) {
    throw ValidationError("umbilicity defect needs a surface");
  }
  if (n < 4) throw ValidationError("quadrature needs at least 4 nodes");
  double total = 0.0;
  for (std::size_t c = 0; c < shape.components().size(); ++c) {
    const auto* t = std::get_if<Torus>(&shape.components()[c].primitive);
    if (!t) continue;  // spheres are umbilic
    // periodic trapezoid in both angles; the integrand is independent of u
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = 2.0 * kPi * (j + 0.5) / n;
      const auto k = principal_curvatures(shape, 0.0, v, c);
      const double jac = t->minor * (t->major + t->minor * std::cos(v));
      acc += (k.k1 - k.k2) * (k.k1 - k.k2) * jac;
    }
    total += 2.0 * kPi * acc * (2.0 * kPi / n);
  }
  return total;
}

double exact_diameter(const Shape& shape) {
  if (shape.kind() == ShapeKind::kPlanarComposite) {
    const auto pts = boundary_points(shape.region());
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        best = std::max(best, (pts[i] - pts[j]).squaredNorm());
      }
    }
    return std::sqrt(best);
  }
  const auto& comps = shape.components();
  if (comps.size() == 1) return primitive_diameter(comps.front().primitive);
  bool all_round = analytic_pair(shape);
  for (const auto& c : comps) all_round = all_round && round_radius(c.primitive).has_value();
  if (all_round) {
    double best = 0.0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const double ri = *round_radius(comps[i].primitive);
      best = std::max(best, 2.0 * ri);
      for (std::size_t j = i + 1; j < comps.size(); ++j) {
        const double rj = *round_radius(comps[j].primitive);
        best = std::max(best, (comps[i].placement.offset - comps[j].placement.offset).norm() + ri +
                                  rj);
      }
    }
    return best;
  }
  std::vector<Vec3> pts;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto part = dense_points(shape, i, 1500);
    pts.insert(pts.end(), part.begin(), part.end());
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, (pts[i] - pts[j]).squaredNorm());
    }
  }
  return std::sqrt(best);
}

}  // namespace riesz
