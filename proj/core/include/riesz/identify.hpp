#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "riesz/beta.hpp"
#include "riesz/constructions.hpp"
#include "riesz/pairkernel.hpp"
#include "riesz/shapes.hpp"

namespace riesz {

struct FingerprintBudget {
  PairPlan plan;        // profile, residues, B(-2), diameter terms
  int diameter_n = 64;  // n_max of diameter_via_beta
  double tail_eps = 0.1;
};

struct Fingerprint {
  std::string label;
  int m = 0;               // rounded slope of log F(t) near t = 0
  double m_slope = 0.0;
  int d = 0;
  bool is_body = false;
  MeromorphicSummary residues;
  std::optional<BetaValue> b_minus2;  // curves
  DiameterEstimate diameter;
  // surfaces: fraction of pairs beyond (1 - tail_eps / 2) times the diameter
  std::optional<TailEstimate> tail;
  double tail_threshold = 0.0;
  std::size_t n_pairs = 0;
  std::uint64_t seed = 0;

  /// Residue at an integer pole; ValidationError when it was not computed.
  const Pole& pole(int z) const;
  nlohmann::json to_json() const;
};

Fingerprint fingerprint(const Shape& shape, const FingerprintBudget& budget = {});

enum class ShapeClass { kBall, kCircle, kSphere2, kInconclusive };
const char* to_string(ShapeClass c);

struct Criterion {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double margin() const { return tolerance - std::abs(value - reference); }
};

struct Verdict {
  ShapeClass shape_class = ShapeClass::kInconclusive;
  int dim = 0;          // ball dimension
  double radius = 0.0;  // > 0 unless inconclusive
  std::string failing;  // first failed criterion of the chain
  std::vector<Criterion> evidence;
  nlohmann::json to_json() const;
};

struct ClassifyTolerance {
  double relative = 0.02;
  double sigmas = 3.0;
  double umbilic = 0.5;   // |Res(-4)|
  double b_minus2 = 0.02;  // |B(-2)|
};

/// Matches a fingerprint against the fingerprint of a ball, circle or round
/// 2-sphere. Chain: pole lattice; then for bodies Res(-d), Res(-d-1); for
/// curves B(-2), Res(-1); for surfaces Res(-4), Res(-2), diameter, tail.
/// ValidationError when the reference is not one of the three models or the
/// budgets differ.
Verdict classify(const Fingerprint& fp, const Fingerprint& reference,
                 const ClassifyTolerance& tol = {});

/// Radius of the model the fingerprint would match: circle Res(-1)/(2 sigma_0 pi),
/// sphere sqrt(Res(-2)/(4 pi sigma_1)), ball (Res(-d)/(sigma_{d-1} omega_d))^{1/d}.
double radius_from_residue(const Fingerprint& fp);

}  // namespace riesz
