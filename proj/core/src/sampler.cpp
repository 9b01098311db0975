#include "sampler.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

#include "riesz/constants.hpp"
#include "riesz/errors.hpp"
#include "riesz/planar.hpp"
#include "riesz/random.hpp"

namespace riesz::detail {

void PieceSampler::near(const PointSample&, const double*, double, PointSample&) const {
  throw ValidationError("near-field sampling not available for this piece");
}

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// half-width of a parameter window covering all chords shorter than `radius`
// on circles of radius >= rmin
double chord_window(double radius, double rmin) {
  if (radius >= 2.0 * rmin) return kPi;
  return 2.0 * std::asin(radius / (2.0 * rmin));
}

class PlacedPiece : public PieceSampler {
 public:
  explicit PlacedPiece(const Placement& p) : place_(p) {}

 protected:
  void finish(PointSample& s) const {
    s.pos = place_.apply(s.local);
    if (s.has_normal) s.normal = place_.rotate(s.normal);
  }

  Placement place_;
};

class CircleSampler final : public PlacedPiece {
 public:
  CircleSampler(double r, const Placement& p, bool normals)
      : PlacedPiece(p), r_(r), normals_(normals) {}
  int dim() const override { return 1; }
  double measure() const override { return kTwoPi * r_; }
  void map(const double* u, PointSample& s) const override {
    at(kTwoPi * u[0], s);
    s.weight = measure();
  }
  bool has_near() const override { return true; }
  int near_dim() const override { return 1; }
  void near(const PointSample& x, const double* u, double radius,
            PointSample& y) const override {
    const double rho = chord_window(radius, r_);
    at(x.param[0] + rho * (2.0 * u[0] - 1.0), y);
    y.weight = 2.0 * rho * r_;
  }

 private:
  void at(double th, PointSample& s) const {
    const double c = std::cos(th), sn = std::sin(th);
    s.param[0] = th;
    s.local = Vec3(r_ * c, r_ * sn, 0.0);
    s.has_normal = normals_;
    s.normal = Vec3(c, sn, 0.0);
    finish(s);
  }
  double r_;
  bool normals_;
};

class EllipseSampler final : public PlacedPiece {
 public:
  EllipseSampler(double a, double b, double length, const Placement& p, bool normals)
      : PlacedPiece(p), a_(a), b_(b), length_(length), normals_(normals) {}
  int dim() const override { return 1; }
  double measure() const override { return length_; }
  void map(const double* u, PointSample& s) const override {
    at(kTwoPi * u[0], s);
    s.weight = kTwoPi * speed(s.param[0]);
  }
  bool has_near() const override { return true; }
  int near_dim() const override { return 1; }
  void near(const PointSample& x, const double* u, double radius,
            PointSample& y) const override {
    const double rho = chord_window(radius, std::min(a_, b_));
    at(x.param[0] + rho * (2.0 * u[0] - 1.0), y);
    y.weight = 2.0 * rho * speed(y.param[0]);
  }

 private:
  double speed(double th) const {
    const double sx = a_ * std::sin(th), cy = b_ * std::cos(th);
    return std::sqrt(sx * sx + cy * cy);
  }
  void at(double th, PointSample& s) const {
    const double c = std::cos(th), sn = std::sin(th);
    s.param[0] = th;
    s.local = Vec3(a_ * c, b_ * sn, 0.0);
    s.has_normal = normals_;
    s.normal = Vec3(b_ * c, a_ * sn, 0.0).normalized();
    finish(s);
  }
  double a_, b_, length_;
  bool normals_;
};

class SphereSampler final : public PlacedPiece {
 public:
  SphereSampler(double r, const Placement& p) : PlacedPiece(p), r_(r) {}
  int dim() const override { return 2; }
  double measure() const override { return 4.0 * kPi * r_ * r_; }
  void map(const double* u, PointSample& s) const override {
    const double z = 1.0 - 2.0 * u[0];
    const double ph = kTwoPi * u[1];
    const double q = std::sqrt(std::max(0.0, 1.0 - z * z));
    s.normal = Vec3(q * std::cos(ph), q * std::sin(ph), z);
    s.param[0] = ph;
    s.param[1] = std::acos(z);
    s.local = r_ * s.normal;
    s.has_normal = true;
    s.weight = measure();
    finish(s);
  }
  bool has_near() const override { return true; }
  int near_dim() const override { return 2; }
  void near(const PointSample& x, const double* u, double radius,
            PointSample& y) const override {
    const double ca =
        radius >= 2.0 * r_ ? -1.0 : 1.0 - radius * radius / (2.0 * r_ * r_);
    const double cg = 1.0 - u[0] * (1.0 - ca);
    const double sg = std::sqrt(std::max(0.0, 1.0 - cg * cg));
    const double ph = kTwoPi * u[1];
    const Vec3 e3 = x.local / r_;
    const Vec3 helper = std::abs(e3.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = e3.cross(helper).normalized();
    const Vec3 e2 = e3.cross(e1);
    y.normal = cg * e3 + sg * (std::cos(ph) * e1 + std::sin(ph) * e2);
    y.local = r_ * y.normal;
    y.has_normal = true;
    y.weight = kTwoPi * r_ * r_ * (1.0 - ca);
    finish(y);
  }

 private:
  double r_;
};

class TorusSampler final : public PlacedPiece {
 public:
  TorusSampler(double big, double a, const Placement& p) : PlacedPiece(p), R_(big), a_(a) {}
  int dim() const override { return 2; }
  double measure() const override { return 4.0 * kPi * kPi * R_ * a_; }
  void map(const double* u, PointSample& s) const override {
    at(kTwoPi * u[0], kTwoPi * u[1], s);
    s.weight = kTwoPi * kTwoPi * jac(s.param[1]);
  }
  bool has_near() const override { return true; }
  int near_dim() const override { return 2; }
  void near(const PointSample& x, const double* u, double radius,
            PointSample& y) const override {
    // azimuthal chords are at least 2 (R - a) sin(du/2); meridian chords 2 a sin(dv/2)
    const double ru = chord_window(radius, R_ - a_);
    const double rv = chord_window(radius, a_);
    at(x.param[0] + ru * (2.0 * u[0] - 1.0), x.param[1] + rv * (2.0 * u[1] - 1.0), y);
    y.weight = 4.0 * ru * rv * jac(y.param[1]);
  }

 private:
  double jac(double v) const { return a_ * (R_ + a_ * std::cos(v)); }
  void at(double uu, double vv, PointSample& s) const {
    const double cu = std::cos(uu), su = std::sin(uu), cv = std::cos(vv), sv = std::sin(vv);
    s.param[0] = uu;
    s.param[1] = vv;
    const double rho = R_ + a_ * cv;
    s.local = Vec3(rho * cu, rho * su, a_ * sv);
    s.normal = Vec3(cv * cu, cv * su, sv);
    s.has_normal = true;
    finish(s);
  }
  double R_, a_;
};

void unit_ball_point(int d, const double* u, Vec3& out) {
  if (d == 2) {
    const double rad = std::sqrt(u[0]);
    const double ph = kTwoPi * u[1];
    out = Vec3(rad * std::cos(ph), rad * std::sin(ph), 0.0);
  } else {
    const double rad = std::cbrt(u[0]);
    const double z = 1.0 - 2.0 * u[1];
    const double q = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double ph = kTwoPi * u[2];
    out = rad * Vec3(q * std::cos(ph), q * std::sin(ph), z);
  }
}

class BallSampler final : public PlacedPiece {
 public:
  BallSampler(int d, double r, const Placement& p) : PlacedPiece(p), d_(d), r_(r) {}
  int dim() const override { return d_; }
  double measure() const override { return unit_ball_volume(d_) * std::pow(r_, d_); }
  void map(const double* u, PointSample& s) const override {
    unit_ball_point(d_, u, s.local);
    s.local *= r_;
    s.has_normal = false;
    s.weight = measure();
    finish(s);
  }
  bool has_near() const override { return true; }
  int near_dim() const override { return d_; }
  void near(const PointSample& x, const double* u, double radius,
            PointSample& y) const override {
    Vec3 off;
    unit_ball_point(d_, u, off);
    y.local = x.local + radius * off;
    y.has_normal = false;
    y.weight = y.local.squaredNorm() <= r_ * r_
                   ? unit_ball_volume(d_) * std::pow(radius, d_)
                   : 0.0;
    finish(y);
  }

 private:
  int d_;
  double r_;
};

class PolygonSampler final : public PieceSampler {
 public:
  explicit PolygonSampler(const ConvexPolygon& p) : v_(p.vertices) {
    for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
      const Vec2 e1 = v_[i] - v_[0], e2 = v_[i + 1] - v_[0];
      area_ += 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
      cum_.push_back(area_);
    }
  }
  int dim() const override { return 3; }
  double measure() const override { return area_; }
  void map(const double* u, PointSample& s) const override {
    const double target = u[0] * area_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    const std::size_t i =
        std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1) + 1;
    const double r1 = std::sqrt(u[1]);
    const Vec2 p = (1.0 - r1) * v_[0] + r1 * (1.0 - u[2]) * v_[i] + r1 * u[2] * v_[i + 1];
    s.local = Vec3(p.x(), p.y(), 0.0);
    s.pos = s.local;
    s.has_normal = false;
    s.weight = area_;
  }

 private:
  std::vector<Vec2> v_;
  std::vector<double> cum_;
  double area_ = 0.0;
};

class SectorSampler final : public PieceSampler {
 public:
  explicit SectorSampler(const AnnularSector& s) : s_(s) {}
  int dim() const override { return 2; }
  double measure() const override { return area(PlanarPiece(s_)); }
  void map(const double* u, PointSample& out) const override {
    const double r2 = s_.r_inner * s_.r_inner +
                      u[0] * (s_.r_outer * s_.r_outer - s_.r_inner * s_.r_inner);
    const double rad = std::sqrt(r2);
    const double th = s_.theta0 + u[1] * (s_.theta1 - s_.theta0);
    out.local = Vec3(s_.center.x() + rad * std::cos(th), s_.center.y() + rad * std::sin(th), 0.0);
    out.pos = out.local;
    out.has_normal = false;
    out.weight = measure();
  }

 private:
  AnnularSector s_;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

StratumSampler::StratumSampler(const Shape& shape, Stratum stratum) {
  shape.check_stratum(stratum);
  const bool planar_normals = shape.ambient_dim() == 2;
  if (shape.kind() == ShapeKind::kPlanarComposite) {
    for (const auto& piece : shape.region()) {
      std::visit(Overloaded{[&](const ConvexPolygon& p) {
                              pieces_.push_back(std::make_unique<PolygonSampler>(p));
                            },
                            [&](const AnnularSector& s) {
                              pieces_.push_back(std::make_unique<SectorSampler>(s));
                            }},
                 piece);
    }
  } else {
    for (const auto& c : shape.components()) {
      const auto& pl = c.placement;
      std::visit(
          Overloaded{
              [&](const Circle& p) {
                pieces_.push_back(std::make_unique<CircleSampler>(p.radius, pl, planar_normals));
              },
              [&](const Ellipse& p) {
                const Shape single = ellipse(p.a, p.b, shape.ambient_dim());
                pieces_.push_back(std::make_unique<EllipseSampler>(
                    p.a, p.b, single.measure(Stratum::kManifold), pl, planar_normals));
              },
              [&](const Sphere& p) { pieces_.push_back(std::make_unique<SphereSampler>(p.radius, pl)); },
              [&](const Torus& p) {
                pieces_.push_back(std::make_unique<TorusSampler>(p.major, p.minor, pl));
              },
              [&](const Ball& p) {
                if (stratum == Stratum::kInterior) {
                  pieces_.push_back(std::make_unique<BallSampler>(p.dim, p.radius, pl));
                } else if (p.dim == 2) {
                  pieces_.push_back(std::make_unique<CircleSampler>(p.radius, pl, true));
                } else {
                  pieces_.push_back(std::make_unique<SphereSampler>(p.radius, pl));
                }
              }},
          c.primitive);
    }
  }
  dim_ = 1;
  for (const auto& p : pieces_) {
    total_ += p->measure();
    cum_.push_back(total_);
    dim_ = std::max(dim_, p->dim());
    has_near_ = has_near_ && p->has_near();
    near_dim_ = std::max(near_dim_, p->near_dim());
  }
  has_normals_ = stratum != Stratum::kInterior &&
                 (shape.ambient_dim() - shape.stratum_dim(stratum) == 1);
}

void StratumSampler::map(const double* u, PointSample& out) const {
  if (pieces_.size() == 1) {
    pieces_[0]->map(u, out);
    out.piece = 0;
    return;
  }
  const double target = u[0] * total_;
  auto i = static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), target) -
                                    cum_.begin());
  i = std::min(i, pieces_.size() - 1);
  const double lo = i == 0 ? 0.0 : cum_[i - 1];
  const double m = cum_[i] - lo;
  double v[kMaxLatticeDim];
  std::copy(u, u + dim_, v);
  v[0] = std::clamp((target - lo) / m, 0.0, std::nextafter(1.0, 0.0));
  pieces_[i]->map(v, out);
  out.weight *= total_ / m;
  out.piece = static_cast<int>(i);
}

void StratumSampler::near(const PointSample& x, const double* u, double radius,
                          PointSample& y) const {
  pieces_[static_cast<std::size_t>(x.piece)]->near(x, u, radius, y);
  y.piece = x.piece;
}

}  // namespace riesz::detail
