#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "riesz/errors.hpp"
#include "riesz/identify.hpp"

using namespace riesz;
using oracle::pi;

namespace {

Fingerprint with_pole(int m, int d, bool body, int z, double res) {
  Fingerprint fp;
  fp.m = m;
  fp.d = d;
  fp.is_body = body;
  Pole p;
  p.z = z;
  p.residue = res;
  fp.residues.poles.push_back(p);
  return fp;
}

FingerprintBudget budget(std::uint64_t seed) {
  FingerprintBudget b;
  b.plan.seed = seed;
  return b;
}

}  // namespace

TEST_CASE("radius from residues") {
  CHECK(radius_from_residue(with_pole(1, 2, false, -1, 4 * pi)) == doctest::Approx(1.0));
  CHECK(radius_from_residue(with_pole(2, 3, false, -2, 32 * pi * pi)) == doctest::Approx(2.0));
  CHECK(radius_from_residue(with_pole(3, 3, true, -3, 16 * pi * pi / 3)) == doctest::Approx(1.0));
  CHECK(radius_from_residue(with_pole(2, 2, true, -2, 2 * pi * pi * 0.25)) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(radius_from_residue(with_pole(3, 3, true, -3, 0.0)), DomainError);
  CHECK_THROWS_AS(radius_from_residue(with_pole(2, 3, false, -2, -1.0)), DomainError);
  CHECK_THROWS_AS(radius_from_residue(with_pole(2, 3, false, -4, 1.0)), ValidationError);
}

TEST_CASE("sphere fingerprint") {
  const auto fp = fingerprint(sphere(1.0), budget(0));
  CHECK(fp.m == 2);
  CHECK_FALSE(fp.is_body);
  const Pole& r2 = fp.pole(-2);
  CHECK(std::abs(r2.residue - 8 * pi * pi) <= std::max(0.01 * 8 * pi * pi, 3 * r2.std_error));
  const Pole& r4 = fp.pole(-4);
  CHECK(std::abs(r4.residue) <= 3 * r4.std_error);
  CHECK(fp.diameter.limit == doctest::Approx(2.0).epsilon(0.015));
  REQUIRE(fp.tail.has_value());
  CHECK(fp.tail->value == doctest::Approx(0.1 - 0.01 / 4).epsilon(0.02));
  const auto j = fp.to_json();
  CHECK(j.contains("tail"));
  CHECK(j.at("m") == 2);
}

TEST_CASE("circle fingerprint") {
  const auto fp = fingerprint(circle(1.0), budget(0));
  CHECK(fp.m == 1);
  CHECK(fp.pole(-1).residue == doctest::Approx(4 * pi).epsilon(0.01));
  REQUIRE(fp.b_minus2.has_value());
  CHECK(std::abs(fp.b_minus2->value.real()) <= std::max(0.02, 3 * fp.b_minus2->std_error));
  CHECK_FALSE(fp.tail.has_value());
}

TEST_CASE("ball fingerprint") {
  const auto fp = fingerprint(ball(3, 1.0), budget(0));
  CHECK(fp.is_body);
  CHECK(fp.m == 3);
  CHECK(fp.pole(-3).residue == doctest::Approx(16 * pi * pi / 3).epsilon(0.02));
  CHECK(fp.pole(-4).residue == doctest::Approx(-4 * pi * pi).epsilon(0.02));
}

TEST_CASE("round shapes are recognized") {
  const auto ref = fingerprint(sphere(1.0), budget(1));
  const auto v = classify(fingerprint(sphere(1.0), budget(0)), ref);
  CHECK(v.shape_class == ShapeClass::kSphere2);
  CHECK(v.radius == doctest::Approx(1.0).epsilon(0.01));
  CHECK(v.failing.empty());
  CHECK(v.evidence.size() == 5);
  for (const auto& c : v.evidence) CHECK(c.margin() >= 0.0);

  const auto vd = classify(fingerprint(disk(0.5), budget(0)), fingerprint(disk(0.5), budget(1)));
  CHECK(vd.shape_class == ShapeClass::kBall);
  CHECK(vd.dim == 2);
  CHECK(vd.radius == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("scale equivariance") {
  const auto v1 = classify(fingerprint(circle(1.0), budget(0)), fingerprint(circle(1.0), budget(1)));
  const auto v3 = classify(fingerprint(circle(3.0), budget(0)), fingerprint(circle(3.0), budget(1)));
  CHECK(v1.shape_class == ShapeClass::kCircle);
  CHECK(v3.shape_class == v1.shape_class);
  CHECK(v3.radius == doctest::Approx(3 * v1.radius).epsilon(1e-6));
}

TEST_CASE("torus is not a sphere") {
  const auto v = classify(fingerprint(torus(2.0, 1.0), budget(0)), fingerprint(sphere(1.0), budget(1)));
  CHECK(v.shape_class == ShapeClass::kInconclusive);
  CHECK(v.failing == "Res(-4)");
  CHECK(v.radius == 0.0);
  const auto j = v.to_json();
  CHECK(j.at("class") == "Inconclusive");
  CHECK(j.at("failing") == "Res(-4)");
  CHECK_FALSE(j.contains("radius"));
  CHECK(j.at("evidence").at(1).at("criterion") == "Res(-4)");
  CHECK(j.at("evidence").at(1).at("margin").get<double>() < 0.0);
}

TEST_CASE("ellipse is not a circle") {
  const auto v = classify(fingerprint(ellipse(2.0, 1.0), budget(0)), fingerprint(circle(1.0), budget(1)));
  CHECK(v.shape_class == ShapeClass::kInconclusive);
  CHECK(v.failing == "B(-2)");
  CHECK(v.evidence.at(1).value > 0.05);
}

TEST_CASE("wrong kinds fail the pole lattice") {
  const auto v = classify(fingerprint(circle(1.0), budget(0)), fingerprint(sphere(1.0), budget(1)));
  CHECK(v.shape_class == ShapeClass::kInconclusive);
  CHECK(v.failing == "pole lattice");
}

TEST_CASE("incompatible fingerprints") {
  const auto a = fingerprint(circle(1.0), budget(0));
  auto small = budget(1);
  small.plan.n_pairs = 200'000;
  CHECK_THROWS_AS(classify(a, fingerprint(circle(1.0), small)), ValidationError);
  CHECK_THROWS_AS(classify(a, with_pole(3, 4, false, -3, 1.0)), ValidationError);
  CHECK_THROWS_AS(fingerprint(planar_composite(caelli_default().omega1), budget(0)), ValidationError);
}
