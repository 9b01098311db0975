#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "riesz/planar.hpp"
#include "riesz/shapes.hpp"

namespace riesz {

// Caelli's construction. L1 is the x-axis, L2 the line through the origin at
// angle q pi; I1, I2 are the reflections in them and R = I1 I2 is the
// rotation by -2 q pi. With I1 O1 = O1, I2 O2 = O2 and R O3 = O3,
//   X = O1 u O3 u O2   and   X' = O1 u O3 u R O2 = O3 u I1(O1 u O2)
// have the same interpoint distance distribution.
struct CaelliConfig {
  int q_num = 1;
  int q_den = 4;
  PlanarRegion omega1, omega2, omega3;

  double q() const { return static_cast<double>(q_num) / q_den; }
  PlanarMotion i1() const;
  PlanarMotion i2() const;
  PlanarMotion r() const;
};

/// q = 1/4. O1 = [3,4] x [-1/2,1/2]; O2 the rectangle 5 <= s <= 6, |n| <= 0.4
/// in coordinates along / across L2; O3 four annular sectors 1 <= r <= 2,
/// 10 to 40 degrees plus multiples of 90 degrees.
CaelliConfig caelli_default();

// {"q": [1, 4], "omega1": [pieces], "omega2": [...], "omega3": [...]}, the
// pieces in the planar_composite schema.
CaelliConfig caelli_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const CaelliConfig& config);
CaelliConfig load_caelli(const std::filesystem::path& path);

struct SymmetryCheck {
  std::string name;
  double defect = 0.0;     // symmetric difference (or overlap) area
  double tolerance = 0.0;  // 1e-9 times the area involved
  bool expect_equal = true;
  bool pass = false;
};

/// I1 O1 = O1, I2 O2 = O2, R O3 = O3, I1 O3 != O3, then pairwise disjointness.
std::vector<SymmetryCheck> caelli_preconditions(const CaelliConfig& config);

struct CaelliPair {
  Shape x;
  Shape x_prime;
  double area = 0.0;
  double symmetric_difference = 0.0;  // area of X delta X'
  double caption_defect = 0.0;        // area of X' delta (O3 u I1(O1 u O2))
  bool degenerate = false;            // R O2 = O2, so X' = X
  std::vector<SymmetryCheck> checks;
};

/// ValidationError naming the first failed precondition.
CaelliPair caelli_pair(const CaelliConfig& config);

struct TailEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_pairs = 0;
};

/// Fraction of the product measure of X x X on pairs farther apart than
/// `threshold`.
TailEstimate tail_fraction(const Shape& shape, double threshold, std::size_t n_pairs,
                           std::uint64_t seed);

/// Vol((S^2 x S^2) n {|x-y| > 2 - eps}) / Vol(S^2 x S^2); exactly eps - eps^2/4.
TailEstimate single_sphere_tail(double eps, std::size_t n_pairs, std::uint64_t seed);

// Two round spheres S1(r1), S2(r2) with centres `separation` apart on the
// x-axis, r1 >= r2, diameter r1 + r2 + separation <= 2.
struct TwoSphereConfig {
  double r1 = 0.5;
  double r2 = 0.5;
  double separation = 1.0;

  double c() const { return 1.0 / (4.0 * r1 * r2 * (1.0 - r1) * (1.0 - r2)); }
  double eps1() const;
  double diameter() const { return r1 + r2 + separation; }
  /// eps^2 (1 - eps/2)^2 C, the product of the two cap fractions.
  double cap_bound(double eps) const;
};

void validate(const TwoSphereConfig& config);

/// Vol((S1 x S2) n {|x-y| > 2 - eps}) / Vol(S1 x S2); requires 0 < eps < eps1.
TailEstimate tail_volume_ratio(const TwoSphereConfig& config, double eps, std::size_t n_pairs,
                               std::uint64_t seed);

/// Disjoint sphere union with the area and diameter of S^2(1): two clusters
/// of concentric spheres (radii 0.48, 0.40, sqrt(0.1096)) centred at
/// (+-0.52, 0, 0).
Shape equal_area_sphere_union();

struct SphereUnionParameters {
  std::vector<double> radii;  // decreasing
  double eps0 = 0.0;          // min(2 - 2 r_1, r_n, 1)
  double c0 = 0.0;            // max over i != j of 1 / (4 r_i r_j (1 - r_i)(1 - r_j))
  /// 0.9 min(eps0, 1 / (2 (c0 + 1/4)))
  double epsilon = 0.0;
};

/// For a union of spheres; ValidationError for anything else.
SphereUnionParameters sphere_union_parameters(const Shape& shape);

}  // namespace riesz
