#pragma once

#include <memory>
#include <vector>

#include "riesz/shapes.hpp"

namespace riesz::detail {

struct PointSample {
  Vec3 pos = Vec3::Zero();
  Vec3 local = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  double weight = 0.0;
  bool has_normal = false;
  int piece = 0;
  double param[2] = {0.0, 0.0};
};

// Maps points of the unit cube to weighted points of one connected piece.
// E[weight] over uniform u equals measure().
class PieceSampler {
 public:
  virtual ~PieceSampler() = default;
  virtual int dim() const = 0;
  virtual double measure() const = 0;
  virtual void map(const double* u, PointSample& out) const = 0;

  // Near-field window: y is drawn from a region of the same piece that
  // contains every point within `radius` of x; the weight makes
  // E[y.weight * f(y)] the integral of f over that region.
  virtual bool has_near() const { return false; }
  virtual int near_dim() const { return 0; }
  virtual void near(const PointSample& x, const double* u, double radius,
                    PointSample& y) const;
};

class StratumSampler {
 public:
  StratumSampler(const Shape& shape, Stratum stratum);

  int dim() const { return dim_; }
  int near_dim() const { return near_dim_; }
  bool has_near() const { return has_near_; }
  bool has_normals() const { return has_normals_; }
  double measure() const { return total_; }
  int pieces() const { return static_cast<int>(pieces_.size()); }

  void map(const double* u, PointSample& out) const;
  void near(const PointSample& x, const double* u, double radius, PointSample& y) const;

 private:
  std::vector<std::unique_ptr<PieceSampler>> pieces_;
  std::vector<double> cum_;
  double total_ = 0.0;
  int dim_ = 1;
  int near_dim_ = 0;
  bool has_near_ = true;
  bool has_normals_ = true;
};

}  // namespace riesz::detail
