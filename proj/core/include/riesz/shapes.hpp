#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace riesz {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rigid motion x -> rotation * x + offset.
struct Placement {
  Mat3 rotation = Mat3::Identity();
  Vec3 offset = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + offset; }
  Vec3 rotate(const Vec3& v) const { return rotation * v; }

  /// outer o this: first apply *this, then outer.
  Placement then(const Placement& outer) const;

  static Placement translation(const Vec3& v);
  static Placement rotation_about(const Vec3& axis, double angle);
};

// Primitives live in local coordinates: curves in the z = 0 plane centred at
// the origin, surfaces and balls centred at the origin. Torus axis is z.
struct Circle {
  double radius = 1.0;
};
struct Ellipse {
  double a = 1.0;  // semi-axis along x
  double b = 1.0;  // semi-axis along y
};
struct Sphere {
  double radius = 1.0;
};
struct Torus {
  double major = 2.0;
  double minor = 1.0;
};
struct Ball {
  int dim = 3;
  double radius = 1.0;
};
using Primitive = std::variant<Circle, Ellipse, Sphere, Torus, Ball>;

struct Component {
  Primitive primitive;
  Placement placement;
};

struct ConvexPolygon {
  std::vector<Vec2> vertices;  // counter-clockwise
};
struct AnnularSector {
  Vec2 center = Vec2::Zero();
  double r_inner = 0.0;
  double r_outer = 1.0;
  double theta0 = 0.0;
  double theta1 = 1.0;  // theta0 < theta1 <= theta0 + 2 pi
};
using PlanarPiece = std::variant<ConvexPolygon, AnnularSector>;
using PlanarRegion = std::vector<PlanarPiece>;

enum class ShapeKind { kCurve, kSurface, kBody, kPlanarComposite };
enum class Stratum { kManifold, kInterior, kBoundary };

const char* to_string(ShapeKind kind);
const char* to_string(Stratum stratum);

/// Smoothness class reported by the analytic primitives.
inline constexpr int kAnalyticSmoothness = 64;

/// A compact body, a closed curve/surface (possibly a disjoint union of
/// components), or a planar region made of convex polygons and annular
/// sectors. Immutable value type.
class Shape {
 public:
  /// Components must share a kind; pairwise disjointness is checked.
  static Shape from_components(std::vector<Component> components, int ambient_dim,
                               std::string label = {});
  static Shape from_region(PlanarRegion region, std::string label = {});

  ShapeKind kind() const { return kind_; }
  int ambient_dim() const { return ambient_dim_; }
  /// m = d for bodies and planar regions, m < d for closed submanifolds.
  int intrinsic_dim() const { return intrinsic_dim_; }
  int smoothness() const { return smoothness_; }
  bool convex() const;
  bool is_union() const { return components_.size() > 1; }

  const std::vector<Component>& components() const { return components_; }
  const PlanarRegion& region() const { return region_; }
  const std::string& label() const { return label_; }

  Shape with_smoothness(int c_class) const;
  Shape with_label(std::string label) const;

  /// The natural stratum: manifold for curves/surfaces, interior otherwise.
  Stratum default_stratum() const;
  /// Throws ValidationError when the stratum does not exist for this kind.
  void check_stratum(Stratum stratum) const;
  int stratum_dim(Stratum stratum) const;
  /// Exact measure (length, area, volume) of a stratum.
  double measure(Stratum stratum) const;
  /// Exact volume of X itself (length/area for closed manifolds).
  double volume() const { return measure(default_stratum()); }

  /// Smallest distance between two distinct components; nullopt when the
  /// shape has a single component.
  std::optional<double> min_component_gap() const;

  Shape transformed(const Placement& motion) const;
  Shape scaled(double factor) const;

 private:
  Shape() = default;

  ShapeKind kind_ = ShapeKind::kCurve;
  int ambient_dim_ = 2;
  int intrinsic_dim_ = 1;
  int smoothness_ = kAnalyticSmoothness;
  std::vector<Component> components_;
  PlanarRegion region_;
  std::string label_;
};

// Builders for the standard shapes. Nonpositive radii throw ValidationError.
Shape circle(double radius, int ambient_dim = 2);
Shape ellipse(double a, double b, int ambient_dim = 2);
Shape sphere(double radius);
Shape torus(double major, double minor);
Shape ball(int dim, double radius);
inline Shape disk(double radius) { return ball(2, radius); }
/// Disjoint union; throws ValidationError on overlapping components.
Shape shape_union(const std::vector<Shape>& parts);
Shape planar_composite(PlanarRegion region);

struct ShapePoint {
  Vec3 position = Vec3::Zero();
  double weight = 0.0;
  std::optional<Vec3> normal;
};

enum class SampleMode { kRandom, kStratified };

/// n weighted points on a stratum. Weights sum to the stratum measure in
/// expectation (exactly, for samplers with constant density). kStratified
/// uses an equispaced jittered grid in one dimension and a shifted Kronecker
/// lattice otherwise.
std::vector<ShapePoint> sample(const Shape& shape, Stratum stratum, std::size_t n,
                               std::uint64_t seed, SampleMode mode = SampleMode::kRandom);

struct Curvatures {
  double k1 = 0.0;  // k1 >= k2
  double k2 = 0.0;
};

/// Principal curvatures of a surface component at parameter (u, v), signed so
/// that round spheres are positive. Sphere: u azimuth, v polar angle.
/// Torus: u around the axis, v around the tube (v = 0 is the outer equator).
Curvatures principal_curvatures(const Shape& shape, double u, double v,
                                std::size_t component = 0);

/// Integral of (k1 - k2)^2 dA over all surface components, by a tensor
/// product rule with n nodes per direction (periodic trapezoid / Gauss).
double umbilicity_defect(const Shape& shape, int n = 256);

/// Closed form for the standard shapes and for round-component unions; for
/// other unions and planar regions, the supremum over a dense boundary sample
/// (a lower bound with O(h^2) error).
double exact_diameter(const Shape& shape);

}  // namespace riesz
