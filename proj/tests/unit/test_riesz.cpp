#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "riesz/errors.hpp"
#include "riesz/riesz.hpp"

using namespace riesz;
using oracle::pi;

namespace {

bool agrees(const EnergyValue& e, double truth, double rel = 0.01) {
  return std::abs(e.value.real() - truth) <= std::max(rel * std::abs(truth), 3 * e.std_error);
}

}  // namespace

TEST_CASE("circle energies") {
  PairPlan plan;
  const auto e0 = riesz_energy(circle(1.0), Complex(0, 0), plan);
  CHECK(e0.value.real() == doctest::Approx(4 * pi * pi));
  const auto e1 = riesz_energy(circle(1.0), Complex(1, 0), plan);
  CHECK(oracle::circle_energy(1.0) == doctest::Approx(16 * pi));
  CHECK(agrees(e1, oracle::circle_energy(1.0)));
  CHECK(e1.method == EnergyMethod::kDirect);
  const auto eh = riesz_energy(circle(1.0), Complex(-0.7, 0), plan);
  CHECK(eh.method == EnergyMethod::kHistogram);
  CHECK(agrees(eh, oracle::circle_energy(-0.7)));
}

TEST_CASE("sphere and ball energies") {
  PairPlan plan;
  CHECK(agrees(riesz_energy(sphere(1.0), Complex(0, 0), plan), 16 * pi * pi, 1e-9));
  CHECK(agrees(riesz_energy(sphere(1.0), Complex(1, 0), plan), 64 * pi * pi / 3));
  const double v = 4 * pi / 3;
  CHECK(agrees(riesz_energy(ball(3, 1.0), Complex(0, 0), plan), v * v, 1e-9));
  CHECK(agrees(riesz_energy(ball(3, 1.0), Complex(1, 0), plan), oracle::ball3_energy(1.0)));
  CHECK(agrees(riesz_energy(ball(2, 1.0), Complex(-1, 0), plan), oracle::disk_energy(-1.0)));
  CHECK(agrees(riesz_energy(sphere(1.0), Complex(-1.5, 0), plan), oracle::sphere_energy(-1.5)));
}

TEST_CASE("distance densities used as references are normalized") {
  CHECK(oracle::integrate(oracle::disk_distance_pdf, 0, 2) == doctest::Approx(1.0));
  CHECK(oracle::integrate(oracle::ball3_distance_pdf, 0, 2) == doctest::Approx(1.0));
}

TEST_CASE("energy domain") {
  PairPlan plan;
  CHECK_THROWS_AS(riesz_energy(circle(1.0), Complex(-1, 0), plan), DomainError);
  CHECK_THROWS_AS(riesz_energy(ball(3, 1.0), Complex(-3.2, 0), plan), DomainError);
}

TEST_CASE("Stokes form matches the direct integral") {
  PairPlan plan;
  const double v = 4 * pi / 3;
  const auto s0 = body_energy_stokes(ball(3, 1.0), Complex(0, 0), plan);
  CHECK(s0.method == EnergyMethod::kStokes);
  CHECK(agrees(s0, v * v));

  const auto sd = body_energy_stokes(ball(2, 1.0), Complex(1, 0), plan);
  const auto dd = riesz_energy(ball(2, 1.0), Complex(1, 0), plan);
  CHECK(std::abs(sd.value.real() - dd.value.real()) <= 3 * std::hypot(sd.std_error, dd.std_error) +
                                                           1e-3 * std::abs(dd.value.real()));
  CHECK(agrees(sd, oracle::disk_energy(1.0)));

  const auto sb = body_energy_stokes(ball(3, 1.0), Complex(-2.5, 0), plan);
  const auto hb = riesz_energy(ball(3, 1.0), Complex(-2.5, 0), plan);
  INFO("stokes ", sb.value.real(), " +- ", sb.std_error, " direct ", hb.value.real(), " +- ",
       hb.std_error);
  CHECK(std::isfinite(sb.value.real()));
  CHECK(std::abs(sb.value.real() - hb.value.real()) <= 3 * std::hypot(sb.std_error, hb.std_error));
  CHECK(agrees(sb, oracle::ball3_energy(-2.5), 0.02));
}

TEST_CASE("Stokes form rejects its prefactor poles") {
  PairPlan plan;
  CHECK_THROWS_AS(body_energy_stokes(ball(3, 1.0), Complex(-2, 0), plan), DomainError);
  CHECK_THROWS_AS(body_energy_stokes(ball(3, 1.0), Complex(-3, 0), plan), DomainError);
  CHECK_THROWS_AS(body_energy_stokes(ball(3, 1.0), Complex(-4.5, 0), plan), DomainError);
  CHECK_THROWS_AS(body_energy_stokes(sphere(1.0), Complex(0, 0), plan), ValidationError);
}

TEST_CASE("Moebius energy of circles") {
  const double e1 = moebius_energy(circle(1.0));
  CHECK(e1 == doctest::Approx(4.0).epsilon(0.0025));
  for (double r : {0.5, 3.0}) CHECK(moebius_energy(circle(r)) == doctest::Approx(e1).epsilon(1e-9));
  CHECK_THROWS_AS(moebius_energy(sphere(1.0)), ValidationError);
}

TEST_CASE("Moebius energy of an ellipse") {
  const double fine = moebius_energy(ellipse(2.0, 1.0), 4096);
  const double coarse = moebius_energy(ellipse(2.0, 1.0), 1024);
  CHECK(fine > 4.05);
  CHECK(std::abs(fine - coarse) < 1e-3);
  CHECK(moebius_energy(ellipse(4.0, 2.0)) == doctest::Approx(moebius_energy(ellipse(2.0, 1.0))));
}

TEST_CASE("energy is holomorphic in z") {
  // central differences along the real and imaginary axes must agree (Cauchy-Riemann)
  PairPlan plan;
  const Shape s = sphere(1.0);
  const Complex z0(0.3, 0.2);
  const double h = 0.05;
  auto f = [&](Complex z) { return riesz_energy(s, z, plan); };
  const auto a = f(z0 + h), b = f(z0 - h), c = f(z0 + Complex(0, h)), d = f(z0 - Complex(0, h));
  const Complex dx = (a.value - b.value) / (2 * h);
  const Complex dy = (c.value - d.value) / (Complex(0, 2 * h));
  const double err = std::hypot(std::hypot(a.std_error, b.std_error), std::hypot(c.std_error, d.std_error)) / (2 * h);
  CHECK(std::abs(dx - dy) <= 5 * err + 1e-3 * std::abs(dx));
}
