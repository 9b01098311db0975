#include "riesz/planar.hpp"

#include <Eigen/LU>
#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <cmath>
#include <limits>

#include "riesz/constants.hpp"
#include "riesz/errors.hpp"

namespace riesz {
namespace bg = boost::geometry;

namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, /*ClockWise=*/false>;
using BgMulti = bg::model::multi_polygon<BgPolygon>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Arc vertices from theta0 to theta1 including grid angles strictly inside.
std::vector<double> arc_angles(double theta0, double theta1) {
  std::vector<double> out{theta0};
  const auto k0 = static_cast<long>(std::floor(theta0 / kArcStep)) + 1;
  for (long k = k0;; ++k) {
    const double a = static_cast<double>(k) * kArcStep;
    if (a >= theta1 - 1e-12) break;
    if (a > theta0 + 1e-12) out.push_back(a);
  }
  out.push_back(theta1);
  return out;
}

BgPolygon to_polygon(const PlanarPiece& piece) {
  BgPolygon poly;
  auto& ring = poly.outer();
  std::visit(Overloaded{
                 [&](const ConvexPolygon& p) {
                   for (const auto& v : p.vertices) ring.emplace_back(v.x(), v.y());
                 },
                 [&](const AnnularSector& s) {
                   const auto angles = arc_angles(s.theta0, s.theta1);
                   for (double a : angles) {
                     ring.emplace_back(s.center.x() + s.r_outer * std::cos(a),
                                       s.center.y() + s.r_outer * std::sin(a));
                   }
                   if (s.r_inner > 0.0) {
                     for (auto it = angles.rbegin(); it != angles.rend(); ++it) {
                       ring.emplace_back(s.center.x() + s.r_inner * std::cos(*it),
                                         s.center.y() + s.r_inner * std::sin(*it));
                     }
                   } else {
                     ring.emplace_back(s.center.x(), s.center.y());
                   }
                 }},
             piece);
  bg::correct(poly);
  return poly;
}

BgMulti to_multi(const PlanarRegion& region) {
  BgMulti acc;
  for (const auto& piece : region) {
    BgMulti next;
    bg::union_(acc, to_polygon(piece), next);
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

PlanarMotion PlanarMotion::then(const PlanarMotion& outer) const {
  return {outer.linear * linear, outer.linear * offset + outer.offset};
}

PlanarMotion PlanarMotion::reflection(double angle) {
  PlanarMotion m;
  const double c = std::cos(2.0 * angle);
  const double s = std::sin(2.0 * angle);
  m.linear << c, s, s, -c;
  return m;
}

PlanarMotion PlanarMotion::rotation(double angle) {
  PlanarMotion m;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  m.linear << c, -s, s, c;
  return m;
}

double area(const PlanarPiece& piece) {
  return std::visit(Overloaded{
                        [](const ConvexPolygon& p) {
                          double a = 0.0;
                          const auto n = p.vertices.size();
                          for (std::size_t i = 0; i < n; ++i) {
                            const auto& v = p.vertices[i];
                            const auto& w = p.vertices[(i + 1) % n];
                            a += v.x() * w.y() - v.y() * w.x();
                          }
                          return 0.5 * a;
                        },
                        [](const AnnularSector& s) {
                          return 0.5 * (s.theta1 - s.theta0) *
                                 (s.r_outer * s.r_outer - s.r_inner * s.r_inner);
                        }},
                    piece);
}

double area(const PlanarRegion& region) {
  double a = 0.0;
  for (const auto& p : region) a += area(p);
  return a;
}

PlanarPiece transform(const PlanarPiece& piece, const PlanarMotion& motion) {
  return std::visit(
      Overloaded{[&](const ConvexPolygon& p) -> PlanarPiece {
                   ConvexPolygon out;
                   for (const auto& v : p.vertices) out.vertices.push_back(motion.apply(v));
                   if (motion.linear.determinant() < 0.0) {
                     std::reverse(out.vertices.begin(), out.vertices.end());
                   }
                   return out;
                 },
                 [&](const AnnularSector& s) -> PlanarPiece {
                   AnnularSector out = s;
                   out.center = motion.apply(s.center);
                   const auto& m = motion.linear;
                   const double beta = std::atan2(m(1, 0), m(0, 0));
                   if (m.determinant() > 0.0) {
                     out.theta0 = s.theta0 + beta;
                     out.theta1 = s.theta1 + beta;
                   } else {
                     out.theta0 = beta - s.theta1;
                     out.theta1 = beta - s.theta0;
                   }
                   return out;
                 }},
      piece);
}

PlanarRegion transform(const PlanarRegion& region, const PlanarMotion& motion) {
  PlanarRegion out;
  out.reserve(region.size());
  for (const auto& p : region) out.push_back(transform(p, motion));
  return out;
}

PlanarRegion join(const PlanarRegion& a, const PlanarRegion& b) {
  PlanarRegion out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double intersection_area(const PlanarRegion& a, const PlanarRegion& b) {
  BgMulti out;
  bg::intersection(to_multi(a), to_multi(b), out);
  return bg::area(out);
}

double symmetric_difference_area(const PlanarRegion& a, const PlanarRegion& b) {
  BgMulti out;
  bg::sym_difference(to_multi(a), to_multi(b), out);
  return bg::area(out);
}

double self_overlap_area(const PlanarRegion& region) {
  double total = 0.0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    for (std::size_t j = i + 1; j < region.size(); ++j) {
      BgMulti out;
      bg::intersection(to_polygon(region[i]), to_polygon(region[j]), out);
      total += bg::area(out);
    }
  }
  return total;
}

double min_piece_gap(const PlanarRegion& region) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < region.size(); ++i) {
    for (std::size_t j = i + 1; j < region.size(); ++j) {
      gap = std::min(gap, bg::distance(to_polygon(region[i]), to_polygon(region[j])));
    }
  }
  return gap;
}

bool same_set(const PlanarRegion& a, const PlanarRegion& b, double rel_tol) {
  const double scale = std::max(area(a), area(b));
  return symmetric_difference_area(a, b) <= rel_tol * scale;
}

std::vector<Vec2> boundary_points(const PlanarRegion& region, int arc_points) {
  std::vector<Vec2> out;
  for (const auto& piece : region) {
    std::visit(Overloaded{[&](const ConvexPolygon& p) {
                            out.insert(out.end(), p.vertices.begin(), p.vertices.end());
                          },
                          [&](const AnnularSector& s) {
                            for (int i = 0; i < arc_points; ++i) {
                              const double a =
                                  s.theta0 + (s.theta1 - s.theta0) * i / (arc_points - 1);
                              const Vec2 dir(std::cos(a), std::sin(a));
                              out.push_back(s.center + s.r_outer * dir);
                              out.push_back(s.center + s.r_inner * dir);
                            }
                          }},
               piece);
  }
  return out;
}

}  // namespace riesz
