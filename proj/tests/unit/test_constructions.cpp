#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "riesz/constructions.hpp"
#include "riesz/distributions.hpp"
#include "riesz/errors.hpp"

using namespace riesz;
using oracle::pi;

namespace {

bool in_piece(const PlanarPiece& piece, const Vec2& p) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&piece)) {
    const auto& v = poly->vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 e = v[(i + 1) % v.size()] - v[i];
      const Vec2 w = p - v[i];
      if (e.x() * w.y() - e.y() * w.x() < 0) return false;
    }
    return true;
  }
  const auto& s = std::get<AnnularSector>(piece);
  const Vec2 d = p - s.center;
  const double r = d.norm();
  if (r < s.r_inner || r > s.r_outer) return false;
  double th = std::atan2(d.y(), d.x());
  while (th < s.theta0) th += 2 * pi;
  return th <= s.theta1;
}

bool in_region(const PlanarRegion& reg, const Vec2& p) {
  for (const auto& piece : reg) {
    if (in_piece(piece, p)) return true;
  }
  return false;
}

// reflection of p in the line through 0 at angle a
Vec2 reflect(const Vec2& p, double a) {
  const double c = std::cos(2 * a), s = std::sin(2 * a);
  return {c * p.x() + s * p.y(), s * p.x() - c * p.y()};
}

}  // namespace

TEST_CASE("default Caelli configuration") {
  const auto cfg = caelli_default();
  const auto checks = caelli_preconditions(cfg);
  REQUIRE(checks.size() == 5);
  for (const auto& c : checks) {
    INFO(c.name, " defect ", c.defect);
    CHECK(c.pass);
  }
  const auto pair = caelli_pair(cfg);
  CHECK_FALSE(pair.degenerate);
  CHECK(pair.symmetric_difference > 0.01 * pair.area);
  CHECK(pair.caption_defect <= 1e-9 * pair.area);
  CHECK(pair.x.kind() == ShapeKind::kPlanarComposite);
}

TEST_CASE("symmetric difference against pixel counting") {
  const auto cfg = caelli_default();
  const auto pair = caelli_pair(cfg);
  const double q = cfg.q() * pi;
  // R = I1 I2, so R^{-1} p = I2 I1 p
  auto in_x = [&](double x, double y) { return in_region(pair.x.region(), {x, y}); };
  auto in_xp = [&](double x, double y) {
    const Vec2 p(x, y);
    return in_region(cfg.omega1, p) || in_region(cfg.omega3, p) ||
           in_region(cfg.omega2, reflect(reflect(p, 0.0), q));
  };
  const double sd = oracle::pixel_area([&](double x, double y) { return in_x(x, y) != in_xp(x, y); },
                                        -7, 7, 1400);
  CHECK(sd == doctest::Approx(pair.symmetric_difference).epsilon(0.02));
  const double ax = oracle::pixel_area(in_x, -7, 7, 1400);
  CHECK(ax == doctest::Approx(pair.area).epsilon(0.01));
}

TEST_CASE("an R-symmetric Omega2 gives a degenerate pair") {
  auto cfg = caelli_default();
  cfg.omega2 = {AnnularSector{Vec2::Zero(), 2.4, 2.8, 0.0, 2 * pi}};
  const auto pair = caelli_pair(cfg);
  CHECK(pair.degenerate);
  CHECK(pair.symmetric_difference <= 1e-9 * pair.area);
}

TEST_CASE("broken symmetries are named") {
  auto cfg = caelli_default();
  cfg.omega1 = {ConvexPolygon{{{3, -0.2}, {4, -0.2}, {4, 0.5}, {3, 0.5}}}};
  try {
    caelli_pair(cfg);
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("I1(Omega1) = Omega1") != std::string::npos);
  }
  cfg = caelli_default();
  cfg.omega3 = {AnnularSector{Vec2::Zero(), 1.0, 2.0, 0.0, 2 * pi}};
  try {
    caelli_pair(cfg);
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("I1(Omega3) != Omega3") != std::string::npos);
  }
  cfg = caelli_default();
  cfg.omega1 = {ConvexPolygon{{{1.5, -0.5}, {4, -0.5}, {4, 0.5}, {1.5, 0.5}}}};
  CHECK_THROWS_AS(caelli_pair(cfg), ValidationError);
}

TEST_CASE("Caelli configs round-trip through JSON") {
  const auto cfg = caelli_default();
  const auto back = caelli_from_json(to_json(cfg));
  CHECK(back.q_num == 1);
  CHECK(back.q_den == 4);
  CHECK(symmetric_difference_area(back.omega3, cfg.omega3) == doctest::Approx(0.0));
  const auto file = load_caelli(std::string(RIESZ_DATA_DIR) + "/caelli_default.json");
  CHECK(symmetric_difference_area(join(file.omega1, file.omega2), join(cfg.omega1, cfg.omega2)) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(caelli_from_json(nlohmann::json{{"q", {3, 2}}}), ValidationError);
  CHECK_THROWS_AS(caelli_from_json(nlohmann::json::object()), ValidationError);
}

TEST_CASE("Caelli pair shares its distance distribution") {
  const auto pair = caelli_pair(caelli_default());
  for (std::uint64_t s : {0u, 1u, 2u}) {
    const auto a = interpoint_cdf(pair.x, 1'000'000, s);
    const auto b = interpoint_cdf(pair.x_prime, 1'000'000, s ^ 0xCAE111);
    INFO("seed ", s, " ks ", ks_distance(a, b), " threshold ", ks_threshold(a, b));
    CHECK(ks_distance(a, b) < ks_threshold(a, b));
  }
}

TEST_CASE("single-sphere tail") {
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto t = single_sphere_tail(eps, 1'000'000, 4);
    CHECK(oracle::sphere_tail(eps) == doctest::Approx(eps - eps * eps / 4));
    CHECK(t.value == doctest::Approx(oracle::sphere_tail(eps)).epsilon(0.02));
  }
  CHECK(oracle::sphere_tail(0.2) == doctest::Approx(0.19));
  CHECK_THROWS_AS(single_sphere_tail(0.0, 10'000, 1), ValidationError);
  CHECK_THROWS_AS(single_sphere_tail(1.0, 10'000, 1), ValidationError);
}

TEST_CASE("two-sphere tail bound") {
  const TwoSphereConfig cfg;
  CHECK(cfg.c() == doctest::Approx(1.0 / (4 * 0.5 * 0.5 * 0.5 * 0.5)));
  CHECK(cfg.diameter() == doctest::Approx(2.0));
  CHECK(cfg.cap_bound(0.1) == doctest::Approx(0.01 * 0.95 * 0.95 * cfg.c()));
  const auto r = tail_volume_ratio(cfg, 0.1, 1'000'000, 2);
  CHECK(r.value > 0.0);
  CHECK(r.value <= cfg.c() * 0.01 + 3 * r.std_error);
  CHECK(r.value <= cfg.cap_bound(0.1) + 3 * r.std_error);
}

TEST_CASE("two-sphere tail grows with eps") {
  const TwoSphereConfig cfg;
  double prev = -1.0;
  for (double eps : {0.02, 0.1, 0.2, 0.3, 0.45}) {
    const auto r = tail_volume_ratio(cfg, eps, 200'000, 9);
    CHECK(r.value >= prev);
    prev = r.value;
  }
}

TEST_CASE("two-sphere ratio vanishes when the spheres are close to each other") {
  TwoSphereConfig cfg;
  cfg.r1 = cfg.r2 = 0.2;
  cfg.separation = 0.6;
  CHECK(tail_volume_ratio(cfg, 0.1, 100'000, 1).value == 0.0);
}

TEST_CASE("two-sphere configuration checks") {
  TwoSphereConfig cfg;
  CHECK_THROWS_AS(tail_volume_ratio(cfg, 0.6, 10'000, 1), ValidationError);
  cfg.separation = 1.5;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = {};
  cfg.separation = 0.5;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = {};
  cfg.r1 = 0.4;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
}

TEST_CASE("sphere union separates from the round sphere") {
  const Shape u = equal_area_sphere_union();
  const auto p = sphere_union_parameters(u);
  REQUIRE(p.radii.size() == 6);
  CHECK(p.radii.front() == doctest::Approx(0.48));
  double sq = 0.0;
  for (double r : p.radii) sq += r * r;
  CHECK(sq == doctest::Approx(1.0));
  CHECK(p.eps0 == doctest::Approx(std::sqrt(0.1096)));
  CHECK((p.c0 + 0.25) * p.epsilon < 1.0);
  const auto tu = tail_fraction(u, 2.0 - p.epsilon, 1'000'000, 1);
  const auto ts = single_sphere_tail(p.epsilon, 1'000'000, 1);
  CHECK(ts.value - tu.value > 3 * std::hypot(ts.std_error, tu.std_error));
  CHECK_THROWS_AS(sphere_union_parameters(torus(2, 1)), ValidationError);
}
