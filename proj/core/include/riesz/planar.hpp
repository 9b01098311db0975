#pragma once

#include <Eigen/Core>

#include "riesz/shapes.hpp"

namespace riesz {

/// Planar isometry x -> linear * x + offset with linear orthogonal
/// (a rotation when det = +1, a reflection in a line when det = -1).
struct PlanarMotion {
  Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
  Vec2 offset = Vec2::Zero();

  Vec2 apply(const Vec2& p) const { return linear * p + offset; }
  PlanarMotion then(const PlanarMotion& outer) const;

  /// Reflection in the line through the origin at angle `angle` to the x-axis.
  static PlanarMotion reflection(double angle);
  static PlanarMotion rotation(double angle);
};

double area(const PlanarPiece& piece);
/// Sum of piece areas; equals the region area when the pieces are disjoint.
double area(const PlanarRegion& region);

PlanarPiece transform(const PlanarPiece& piece, const PlanarMotion& motion);
PlanarRegion transform(const PlanarRegion& region, const PlanarMotion& motion);

/// Union of two regions as a piece list (no merging).
PlanarRegion join(const PlanarRegion& a, const PlanarRegion& b);

// Boolean measurements. Arcs are polygonized on the global angular grid
// k * kArcStep so that reflections and rotations by multiples of the step map
// the discretization onto itself.
inline constexpr double kArcStep = 3.14159265358979323846 / 720.0;

double intersection_area(const PlanarRegion& a, const PlanarRegion& b);
double symmetric_difference_area(const PlanarRegion& a, const PlanarRegion& b);
/// Sum over piece pairs of their intersection area (zero for disjoint pieces).
double self_overlap_area(const PlanarRegion& region);

/// Smallest distance between two distinct pieces (polygonized arcs).
double min_piece_gap(const PlanarRegion& region);

/// True when the two regions agree as sets up to `rel_tol` * area.
bool same_set(const PlanarRegion& a, const PlanarRegion& b, double rel_tol = 1e-9);

/// Boundary points (polygon vertices plus a dense arc sample), used for
/// diameter and gap computations.
std::vector<Vec2> boundary_points(const PlanarRegion& region, int arc_points = 721);

}  // namespace riesz
