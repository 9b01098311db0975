#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "riesz/errors.hpp"
#include "riesz/pairkernel.hpp"

using namespace riesz;
using oracle::pi;

namespace {

bool within(double v, double err, double truth, double rel) {
  return std::abs(v - truth) <= std::max(rel * std::abs(truth), 3 * err);
}

// Bins near t = 0 hold a handful of pairs, where the batch spread says little.
// The smallest nonzero bin mass is the weight of one pair, and sqrt(expected
// mass * that weight) the counting error.
double counting_error(const WeightedHistogram& h, double expected) {
  double w1 = h.total;
  for (double m : h.mass) {
    if (m > 0.0) w1 = std::min(w1, m);
  }
  return std::sqrt(expected * w1);
}

}  // namespace

TEST_CASE("plan validation") {
  PairPlan p;
  p.n_pairs = 0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.batches = 1;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = {};
  p.near_fraction = 1.5;
  CHECK_THROWS_AS(validate(p), ValidationError);
  CHECK_NOTHROW(validate(PairPlan{}));
}

TEST_CASE("zero exponent gives the squared measure") {
  for (auto mode : {PairSampling::kLattice, PairSampling::kRandom}) {
    PairPlan plan;
    plan.mode = mode;
    plan.n_pairs = 100'000;
    const auto c = pair_integral(circle(1.0), Stratum::kManifold, {}, plan);
    CHECK(c.value.real() == doctest::Approx(4 * pi * pi));
    const auto s = pair_integral(sphere(1.0), Stratum::kManifold, {}, plan);
    CHECK(within(s.value.real(), s.std_error, 16 * pi * pi, 1e-9));
    const auto b = pair_integral(ball(3, 1.0), Stratum::kInterior, {}, plan);
    const double v = 4 * pi / 3;
    CHECK(within(b.value.real(), b.std_error, v * v, 1e-9));
  }
}

TEST_CASE("sphere and circle energies against quadrature") {
  PairPlan plan;
  for (double q : {1.0, 2.0, -0.5}) {
    const auto s = pair_integral(sphere(1.0), Stratum::kManifold, {Complex(q, 0)}, plan);
    INFO("sphere q=", q, " value ", s.value.real(), " +- ", s.std_error);
    CHECK(within(s.value.real(), s.std_error, oracle::sphere_energy(q), 0.01));
  }
  CHECK(oracle::sphere_energy(1.0) == doctest::Approx(64 * pi * pi / 3));
  for (double q : {1.0, 3.0, -0.2}) {
    const auto c = pair_integral(circle(1.0), Stratum::kManifold, {Complex(q, 0)}, plan);
    INFO("circle q=", q);
    CHECK(within(c.value.real(), c.std_error, oracle::circle_energy(q), 0.01));
  }
}

TEST_CASE("complex exponent") {
  PairPlan plan;
  const Complex z(1.0, 0.5);
  const auto s = pair_integral(sphere(1.0), Stratum::kManifold, {z}, plan);
  // 8 pi^2 * int_0^2 s^{z+1} ds = 8 pi^2 2^{z+2} / (z+2)
  const Complex exact = 8.0 * pi * pi * std::pow(Complex(2.0), z + 2.0) / (z + 2.0);
  CHECK(std::abs(s.value - exact) <= std::max(0.01 * std::abs(exact), 3 * s.std_error));
}

TEST_CASE("normal-weighted boundary integral of a ball vanishes") {
  PairPlan plan;
  PairKernel k;
  k.normal_weight = true;
  const auto b = pair_integral(ball(3, 1.0), Stratum::kBoundary, k, plan);
  CHECK(std::abs(b.value.real()) <= std::max(1e-9, 3 * b.std_error));
  const auto d = pair_integral(ball(2, 1.0), Stratum::kBoundary, k, plan);
  CHECK(std::abs(d.value.real()) <= std::max(1e-9, 3 * d.std_error));
}

TEST_CASE("divergent exponents are refused") {
  PairPlan plan;
  CHECK_THROWS_AS(pair_integral(circle(1.0), Stratum::kManifold, {Complex(-1.0, 0)}, plan),
                  DomainError);
  CHECK_THROWS_AS(pair_integral(sphere(1.0), Stratum::kManifold, {Complex(-2.5, 0)}, plan),
                  DomainError);
  CHECK_THROWS_AS(pair_integral(sphere(1.0), Stratum::kInterior, {}, plan), ValidationError);
}

TEST_CASE("seeded determinism") {
  PairPlan plan;
  plan.n_pairs = 50'000;
  plan.seed = 99;
  const auto a = pair_integral(torus(2.0, 1.0), Stratum::kManifold, {Complex(1.0, 0)}, plan);
  const auto b = pair_integral(torus(2.0, 1.0), Stratum::kManifold, {Complex(1.0, 0)}, plan);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  plan.seed = 100;
  const auto c = pair_integral(torus(2.0, 1.0), Stratum::kManifold, {Complex(1.0, 0)}, plan);
  CHECK(a.value != c.value);
}

TEST_CASE("histogram edges") {
  const auto e = histogram_edges(2.0, 64);
  REQUIRE(e.size() == 65);
  CHECK(e.front() == 0.0);
  CHECK(e.back() == doctest::Approx(2.0));
  CHECK(e[16] == doctest::Approx(0.2));
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] > e[i - 1]);
}

TEST_CASE("histogram of a circle holds the full mass") {
  PairPlan plan;
  plan.n_pairs = 100'000;
  const auto h = distance_histogram(circle(1.0), Stratum::kManifold, 32, plan);
  double total = 0.0, var = 0.0;
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    total += h.mass[i];
    var += h.mass_error[i] * h.mass_error[i];
  }
  CHECK(total == doctest::Approx(h.total));
  CHECK(std::abs(total - 4 * pi * pi) <= 3 * std::sqrt(var));
  CHECK_THROWS_AS(distance_histogram(circle(1.0), Stratum::kManifold, 8, plan), ValidationError);
  plan.n_pairs = 100;
  CHECK_THROWS_AS(distance_histogram(circle(1.0), Stratum::kManifold, 32, plan), ValidationError);
}

TEST_CASE("sphere histogram follows 8 pi^2 t") {
  PairPlan plan;
  const auto h = distance_histogram(sphere(1.0), Stratum::kManifold, 64, plan);
  auto exact = [](double a, double b) {
    return oracle::integrate([](double t) { return 8 * pi * pi * t; }, a, b);
  };
  int outliers = 0;
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    const double ex = exact(h.edges[i], h.edges[i + 1]);
    const double err = std::hypot(h.mass_error[i], counting_error(h, ex));
    if (std::abs(h.mass[i] - ex) > 3 * err) ++outliers;
    CHECK(std::abs(h.mass[i] - ex) <= std::max(0.05 * ex, 5 * err));
  }
  CHECK(outliers <= 6);
}

TEST_CASE("normal-weighted sphere histogram near zero") {
  // <n_x, n_y> = 1 - t^2/2 on the unit sphere, so the density is 8 pi^2 t (1 - t^2/2)
  PairPlan plan;
  const auto h = distance_histogram(sphere(1.0), Stratum::kManifold, 64, plan, PairWeight::kNormal);
  for (std::size_t i = 0; i < 16; ++i) {
    const double ex = oracle::integrate(
        [](double t) { return 8 * pi * pi * t * (1 - 0.5 * t * t); }, h.edges[i], h.edges[i + 1]);
    const double err = std::hypot(h.mass_error[i], counting_error(h, ex));
    CHECK(std::abs(h.mass[i] - ex) <= std::max(0.05 * ex, 5 * err));
  }
}

TEST_CASE("binned moments agree with pair integrals") {
  PairPlan plan;
  for (const Shape& s : {sphere(1.0), circle(1.0), ball(3, 1.0)}) {
    const auto h = distance_histogram(s, s.default_stratum(), 256, plan);
    for (double q : {1.0, 2.0}) {
      double mom = 0.0, var = 0.0;
      for (std::size_t i = 0; i < h.mass.size(); ++i) {
        const double mid = 0.5 * (h.edges[i] + h.edges[i + 1]);
        mom += std::pow(mid, q) * h.mass[i];
        var += std::pow(std::pow(mid, q) * h.mass_error[i], 2);
      }
      const auto e = pair_integral(s, s.default_stratum(), {Complex(q, 0)}, plan);
      INFO(s.label(), " q=", q, " binned ", mom, " direct ", e.value.real());
      CHECK(std::abs(mom - e.value.real()) <=
            3 * std::hypot(std::sqrt(var), e.std_error) + 2e-4 * std::abs(mom));
    }
  }
}

TEST_CASE("histogram csv") {
  PairPlan plan;
  plan.n_pairs = 20'000;
  const auto h = distance_histogram(circle(1.0), Stratum::kManifold, 16, plan);
  std::ostringstream os;
  write_csv(os, h);
  const std::string s = os.str();
  CHECK(s.rfind("t_lo,t_hi,mass,stderr\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 17);
}
