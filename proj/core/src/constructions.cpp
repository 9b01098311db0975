#include "riesz/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "engine.hpp"
#include "riesz/constants.hpp"
#include "riesz/errors.hpp"
#include "riesz/shape_json.hpp"

namespace riesz {

PlanarMotion CaelliConfig::i1() const { return PlanarMotion::reflection(0.0); }
PlanarMotion CaelliConfig::i2() const { return PlanarMotion::reflection(q() * kPi); }
PlanarMotion CaelliConfig::r() const { return i2().then(i1()); }

namespace {

constexpr double kDeg = kPi / 180.0;

ConvexPolygon frame_rect(double angle, double s0, double s1, double half_width) {
  const Vec2 e(std::cos(angle), std::sin(angle));
  const Vec2 f(-e.y(), e.x());
  return ConvexPolygon{{s0 * e - half_width * f, s1 * e - half_width * f, s1 * e + half_width * f,
                        s0 * e + half_width * f}};
}

SymmetryCheck compare(std::string name, const PlanarRegion& a, const PlanarRegion& b,
                      bool expect_equal) {
  SymmetryCheck c;
  c.name = std::move(name);
  c.defect = symmetric_difference_area(a, b);
  c.tolerance = 1e-9 * std::max(area(a), area(b));
  c.expect_equal = expect_equal;
  c.pass = expect_equal ? c.defect <= c.tolerance : c.defect > c.tolerance;
  return c;
}

}  // namespace

CaelliConfig caelli_default() {
  CaelliConfig c;
  c.q_num = 1;
  c.q_den = 4;
  c.omega1 = {frame_rect(0.0, 3.0, 4.0, 0.5)};
  c.omega2 = {frame_rect(c.q() * kPi, 5.0, 6.0, 0.4)};
  for (int k = 0; k < 4; ++k) {
    c.omega3.push_back(AnnularSector{Vec2::Zero(), 1.0, 2.0, (10.0 + 90.0 * k) * kDeg,
                                     (40.0 + 90.0 * k) * kDeg});
  }
  return c;
}

CaelliConfig caelli_from_json(const nlohmann::json& doc) {
  try {
    CaelliConfig c;
    const auto& q = doc.at("q");
    if (!q.is_array() || q.size() != 2) throw ValidationError("q must be [numerator, denominator]");
    c.q_num = q[0].get<int>();
    c.q_den = q[1].get<int>();
    if (c.q_den <= 0 || c.q_num <= 0 || c.q_num >= c.q_den) {
      throw ValidationError("q must be a fraction strictly between 0 and 1");
    }
    c.omega1 = region_from_json(doc.at("omega1"));
    c.omega2 = region_from_json(doc.at("omega2"));
    c.omega3 = region_from_json(doc.at("omega3"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed Caelli config: ") + e.what());
  }
}

nlohmann::json to_json(const CaelliConfig& config) {
  return {{"q", {config.q_num, config.q_den}},
          {"omega1", region_to_json(config.omega1)},
          {"omega2", region_to_json(config.omega2)},
          {"omega3", region_to_json(config.omega3)}};
}

CaelliConfig load_caelli(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
  return caelli_from_json(doc);
}

std::vector<SymmetryCheck> caelli_preconditions(const CaelliConfig& config) {
  if (config.omega1.empty() || config.omega2.empty() || config.omega3.empty()) {
    throw ValidationError("all three Caelli regions must be nonempty");
  }
  std::vector<SymmetryCheck> out;
  out.push_back(compare("I1(Omega1) = Omega1", transform(config.omega1, config.i1()),
                        config.omega1, true));
  out.push_back(compare("I2(Omega2) = Omega2", transform(config.omega2, config.i2()),
                        config.omega2, true));
  out.push_back(compare("R(Omega3) = Omega3", transform(config.omega3, config.r()),
                        config.omega3, true));
  out.push_back(compare("I1(Omega3) != Omega3", transform(config.omega3, config.i1()),
                        config.omega3, false));
  const PlanarRegion all = join(join(config.omega1, config.omega2), config.omega3);
  SymmetryCheck d;
  d.name = "Omega1, Omega2, Omega3 disjoint";
  d.defect = self_overlap_area(all);
  d.tolerance = 1e-9 * area(all);
  d.pass = d.defect <= d.tolerance;
  out.push_back(d);
  return out;
}

CaelliPair caelli_pair(const CaelliConfig& config) {
  auto checks = caelli_preconditions(config);
  for (const auto& c : checks) {
    if (!c.pass) {
      throw ValidationError("Caelli precondition failed: " + c.name + " (area " +
                            std::to_string(c.defect) + ")");
    }
  }
  const PlanarRegion ro2 = transform(config.omega2, config.r());
  const PlanarRegion x = join(join(config.omega1, config.omega3), config.omega2);
  const PlanarRegion xp = join(join(config.omega1, config.omega3), ro2);
  const PlanarRegion caption =
      join(config.omega3, transform(join(config.omega1, config.omega2), config.i1()));
  return CaelliPair{Shape::from_region(x, "caelli X"),
                    Shape::from_region(xp, "caelli X'"),
                    area(x),
                    symmetric_difference_area(x, xp),
                    symmetric_difference_area(xp, caption),
                    same_set(ro2, config.omega2),
                    std::move(checks)};
}

namespace {

struct TailSum {
  double threshold;
  double above = 0.0;
  double total = 0.0;
  void add(double t, double w, double) {
    total += w;
    if (t > threshold) above += w;
  }
};

TailEstimate ratio_stats(const std::vector<double>& ratios, std::size_t n) {
  const auto st = detail::batch_stats(ratios);
  return {st.mean, st.error, n};
}

Vec3 sphere_point(Rng& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double ph = 2.0 * kPi * rng.uniform();
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(ph), s * std::sin(ph), z};
}

}  // namespace

TailEstimate tail_fraction(const Shape& shape, double threshold, std::size_t n_pairs,
                           std::uint64_t seed) {
  if (n_pairs < 1000) throw ValidationError("tail estimates need at least 1000 pairs");
  const detail::StratumSampler sampler(shape, shape.default_stratum());
  const detail::EngineRun run{n_pairs, seed, PairSampling::kRandom, 16, 0.0, 0.0, 8};
  const auto parts = detail::run_pairs<TailSum>(sampler, run, [&] { return TailSum{threshold}; });
  std::vector<double> r;
  for (const auto& p : parts) r.push_back(p.total > 0.0 ? p.above / p.total : 0.0);
  return ratio_stats(r, n_pairs);
}

TailEstimate single_sphere_tail(double eps, std::size_t n_pairs, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0, 1)");
  return tail_fraction(sphere(1.0), 2.0 - eps, n_pairs, seed);
}

double TwoSphereConfig::eps1() const { return std::min({1.0, r1, r2}); }

double TwoSphereConfig::cap_bound(double eps) const {
  const double a = eps * (1.0 - 0.5 * eps);
  return a * a * c();
}

void validate(const TwoSphereConfig& config) {
  if (!(config.r2 > 0.0) || config.r1 < config.r2) throw ValidationError("need r1 >= r2 > 0");
  if (!(config.r1 < 1.0)) throw ValidationError("need r1 < 1");
  if (config.separation < config.r1 + config.r2) {
    throw ValidationError("the two spheres must be disjoint and not nested");
  }
  if (config.diameter() > 2.0 * (1.0 + 1e-12)) throw ValidationError("diameter must be at most 2");
}

TailEstimate tail_volume_ratio(const TwoSphereConfig& config, double eps, std::size_t n_pairs,
                               std::uint64_t seed) {
  validate(config);
  if (!(eps > 0.0 && eps < config.eps1())) {
    throw ValidationError("eps must lie in (0, min(1, r1, r2))");
  }
  if (n_pairs < 1000) throw ValidationError("tail estimates need at least 1000 pairs");
  const int nb = 16;
  const double thr = 2.0 - eps;
  const Vec3 c1(-0.5 * config.separation, 0.0, 0.0), c2(0.5 * config.separation, 0.0, 0.0);
  std::vector<double> r(static_cast<std::size_t>(nb), 0.0);
  parallel_for(static_cast<std::size_t>(nb), [&](std::size_t b) {
    Rng rng(seed, (std::uint64_t{9} << 32) ^ (static_cast<std::uint64_t>(b) << 1));
    const std::size_t per = n_pairs / nb + (b < n_pairs % nb ? 1 : 0);
    std::size_t hit = 0;
    for (std::size_t k = 0; k < per; ++k) {
      const Vec3 x = c1 + config.r1 * sphere_point(rng);
      const Vec3 y = c2 + config.r2 * sphere_point(rng);
      if ((x - y).norm() > thr) ++hit;
    }
    r[b] = static_cast<double>(hit) / static_cast<double>(per);
  });
  return ratio_stats(r, n_pairs);
}

Shape equal_area_sphere_union() {
  std::vector<Shape> parts;
  for (double sign : {-1.0, 1.0}) {
    for (double rad : {0.48, 0.40, std::sqrt(0.1096)}) {
      parts.push_back(sphere(rad).transformed(Placement::translation(Vec3(sign * 0.52, 0.0, 0.0))));
    }
  }
  return shape_union(parts).with_label("equal-area sphere union");
}

SphereUnionParameters sphere_union_parameters(const Shape& shape) {
  SphereUnionParameters p;
  for (const auto& c : shape.components()) {
    const auto* s = std::get_if<Sphere>(&c.primitive);
    if (s == nullptr) throw ValidationError("sphere_union_parameters needs a union of spheres");
    p.radii.push_back(s->radius);
  }
  if (p.radii.size() < 2) throw ValidationError("need at least two spheres");
  std::sort(p.radii.rbegin(), p.radii.rend());
  p.eps0 = std::min({2.0 - 2.0 * p.radii.front(), p.radii.back(), 1.0});
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    for (std::size_t j = 0; j < p.radii.size(); ++j) {
      if (i == j) continue;
      const double ri = p.radii[i], rj = p.radii[j];
      p.c0 = std::max(p.c0, 1.0 / (4.0 * ri * rj * (1.0 - ri) * (1.0 - rj)));
    }
  }
  p.epsilon = 0.9 * std::min(p.eps0, 1.0 / (2.0 * (p.c0 + 0.25)));
  return p;
}

}  // namespace riesz
