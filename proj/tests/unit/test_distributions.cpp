#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "riesz/distributions.hpp"
#include "riesz/errors.hpp"

using namespace riesz;
using oracle::pi;

TEST_CASE("interpoint distribution of the sphere") {
  const auto d = interpoint_cdf(sphere(1.0), 1'000'000, 3);
  CHECK(d.m == 2);
  CHECK(d.total() == doctest::Approx(16 * pi * pi));
  for (double t : {0.25, 0.5, 1.0, 1.5, 1.9}) {
    const double exact = 4 * pi * pi * t * t;
    // binomial error of the empirical CDF
    const double p = exact / (16 * pi * pi);
    const double err = 16 * pi * pi * std::sqrt(p * (1 - p) / 1e6);
    CHECK(std::abs(d(t) - exact) <= 3.5 * err);
  }
  CHECK(d(2.0) == doctest::Approx(16 * pi * pi));
  CHECK(d(-1.0) == 0.0);
}

TEST_CASE("total mass of curves and bodies") {
  const auto c = interpoint_cdf(circle(1.0), 10'000, 1);
  CHECK(c(2.0) == doctest::Approx(4 * pi * pi));
  const auto b = interpoint_cdf(ball(3, 1.0), 10'000, 1);
  CHECK(b(2.0) / b.total() == doctest::Approx(1.0));
  CHECK(b.effective_size() == doctest::Approx(10'000).epsilon(1e-9));
  CHECK_THROWS_AS(interpoint_cdf(circle(1.0), 10, 1), ValidationError);
}

TEST_CASE("Mellin identity") {
  PairPlan plan;
  for (const Shape& s : {circle(1.0), sphere(1.0), ball(2, 1.0), ball(3, 1.0)}) {
    const auto dist = interpoint_cdf(s, 1'000'000, 5);
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      const auto e = riesz_energy(s, Complex(q - 1, 0), plan);
      const double r = mellin_check(dist, q, e);
      INFO(s.label(), " q=", q, " residual ", r);
      CHECK(r < 3.0);
    }
  }
}

TEST_CASE("Mellin identity against closed forms") {
  const auto dist = interpoint_cdf(sphere(1.0), 1'000'000, 0);
  EnergyValue e;
  e.z = 2.0;
  e.value = oracle::sphere_energy(2.0);
  CHECK(mellin_check(dist, 3.0, e) < 3.0);
  const auto dc = interpoint_cdf(circle(1.0), 1'000'000, 0);
  e.z = 1.0;
  e.value = oracle::circle_energy(1.0);
  CHECK(mellin_check(dc, 2.0, e) < 3.0);
  e.z = 0.5;
  CHECK_THROWS_AS(mellin_check(dc, 2.0, e), ValidationError);
  e.z = -1.0;
  CHECK_THROWS_AS(mellin_check(dc, 0.0, e), DomainError);
}

TEST_CASE("rigid motions leave the distribution unchanged") {
  const Shape t = torus(2.0, 1.0);
  const Shape moved =
      t.transformed(Placement::rotation_about({0.3, -1, 2}, 1.1).then(Placement::translation({4, -2, 7})));
  const auto a = interpoint_cdf(t, 400'000, 1);
  const auto b = interpoint_cdf(moved, 400'000, 2);
  CHECK(ks_distance(a, b) < ks_threshold(a, b));
  const auto c = interpoint_cdf(t.scaled(1.1), 400'000, 3);
  CHECK(ks_distance(a, c) > ks_threshold(a, c));
}

TEST_CASE("distribution csv") {
  const auto d = interpoint_cdf(circle(1.0), 10'000, 1);
  std::ostringstream os;
  write_csv(os, d, 5);
  const std::string s = os.str();
  CHECK(s.rfind("r,F\n0,0\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 6);
}

TEST_CASE("chords of the unit disk") {
  const auto ch = chord_length_distribution(ball(2, 1.0), 400'000, 7);
  const double mean_oracle =
      oracle::integrate([](double p) { return 2 * std::sqrt(1 - p * p); }, -1, 1) / 2.0;
  CHECK(mean_oracle == doctest::Approx(pi / 2));
  CHECK(ch.mean_length() == doctest::Approx(mean_oracle).epsilon(0.01));
  CHECK(std::abs(ch.hitting_measure - 2 * pi) <= 3 * ch.hitting_error);
  for (double l : ch.length) CHECK_FALSE(l > 2.0);
}

TEST_CASE("chords of the unit ball") {
  const auto ch = chord_length_distribution(ball(3, 1.0), 200'000, 7);
  double mx = 0.0;
  for (double l : ch.length) mx = std::max(mx, l);
  CHECK(mx <= 2.0);
  CHECK(mx > 1.99);
  // mean chord of a convex body in space is 4 V / S
  CHECK(ch.mean_length() == doctest::Approx(4.0 / 3.0).epsilon(0.01));
  CHECK_THROWS_AS(chord_length_distribution(sphere(1.0), 1000, 1), ValidationError);
  CHECK_THROWS_AS(chord_length_distribution(torus(2, 1), 1000, 1), ValidationError);
}

TEST_CASE("Crofton moments") {
  const auto d1 = crofton_moments(chord_length_distribution(ball(2, 1.0), 400'000, 1));
  CHECK(d1.volume == doctest::Approx(pi).epsilon(0.02));
  CHECK(d1.boundary == doctest::Approx(2 * pi).epsilon(0.02));
  const auto d2 = crofton_moments(chord_length_distribution(ball(2, 2.0), 400'000, 2));
  CHECK(d2.volume == doctest::Approx(4 * pi).epsilon(0.02));
  CHECK(d2.boundary == doctest::Approx(4 * pi).epsilon(0.02));
  CHECK(d2.volume / d1.volume == doctest::Approx(4.0).epsilon(0.02));
  const auto b1 = crofton_moments(chord_length_distribution(ball(3, 1.0), 400'000, 3));
  CHECK(b1.volume == doctest::Approx(4 * pi / 3).epsilon(0.02));
  CHECK(b1.boundary == doctest::Approx(4 * pi).epsilon(0.02));
  const auto b2 = crofton_moments(chord_length_distribution(ball(3, 2.0), 400'000, 4));
  CHECK(b2.volume == doctest::Approx(32 * pi / 3).epsilon(0.02));
  CHECK(b2.boundary == doctest::Approx(16 * pi).epsilon(0.02));
  CHECK(b2.volume / b1.volume == doctest::Approx(8.0).epsilon(0.02));
}

TEST_CASE("recalibration reproduces the frozen constants") {
  for (int d : {2, 3}) {
    const auto frozen = crofton_constants(d);
    const auto fresh = calibrate_crofton(d, 400'000, 11);
    CHECK(fresh.volume == doctest::Approx(frozen.volume).epsilon(0.02));
    CHECK(fresh.boundary == doctest::Approx(frozen.boundary).epsilon(0.02));
  }
  CHECK_THROWS_AS(crofton_constants(4), ValidationError);
}

TEST_CASE("chord csv") {
  const auto ch = chord_length_distribution(ball(2, 1.0), 1000, 1);
  std::ostringstream os;
  write_csv(os, ch);
  CHECK(os.str().rfind("length,weight\n", 0) == 0);
}
