#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <json.hpp>
#include <string>
#include <vector>

#include "riesz/pairkernel.hpp"
#include "riesz/shapes.hpp"
#include "riesz/special.hpp"

namespace riesz {

enum class ProfileMethod {
  kMoments,  // smooth windowed moments of the pair distances (default)
  kBinned,   // weighted least squares on a uniform histogram of [0, t_fit]
};

/// Small-t model of the aggregated distance density
///   f'(t) = t^exponent * sum_k c_k t^k    on [0, t_fit],
/// where exponent = (stratum dimension) - 1. With unit weight on a closed
/// manifold the c_{2i} are the beta residues at -m-2i; with normal weight on
/// a body boundary they feed the body residues at -d-(2i+1).
struct ProfilePolynomial {
  int m = 1;  // intrinsic dimension of the shape
  int exponent = 0;
  Stratum stratum = Stratum::kManifold;
  PairWeight weight = PairWeight::kUnit;
  double t_fit = 0.0;
  std::vector<int> powers;
  std::vector<double> coeffs;
  Eigen::MatrixXd covariance;
  std::size_t n_pairs = 0;

  /// c_k, zero when k is not a fitted power.
  double coefficient(int k) const;
  double coefficient_error(int k) const;
  double eval(double t) const;
  /// highest even power index i_max (largest 2i among the powers, halved)
  int i_max() const;
  bool body_form() const { return stratum == Stratum::kBoundary; }
};

struct ProfileOptions {
  int i_max = -1;        // < 0: from the declared smoothness, capped at 2
  double t_fit = -1.0;   // < 0: diam / 8, reduced to half the component gap
  bool odd_powers = false;
  ProfileMethod method = ProfileMethod::kMoments;
  int window_power = 4;  // p in the window (1 - (t/t_fit)^2)^p
  int bins = 64;         // kBinned only
};

/// Default fitting radius: diam / 8, and at most half the smallest gap
/// between components, so that no cross-component pair enters the fit.
double default_t_fit(const Shape& shape);
int default_i_max(const Shape& shape);

ProfilePolynomial fit_profile(const Shape& shape, Stratum stratum, PairWeight weight,
                              const ProfileOptions& options, const PairPlan& plan);

/// The profile whose coefficients govern the poles of B: unit weight on the
/// manifold for closed curves/surfaces, normal weight on the boundary for
/// bodies.
ProfilePolynomial fit_beta_profile(const Shape& shape, const ProfileOptions& options,
                                   const PairPlan& plan);

struct BetaValue {
  Complex z{0.0, 0.0};
  Complex value{0.0, 0.0};
  double std_error = 0.0;
};

/// Meromorphic continuation of z -> I_z(X) in the strip allowed by the
/// profile. Splits |x-y|^z with a smooth floor near t_fit/2: the part away
/// from t = 0 is summed over sampled pairs, the part near t = 0 is integrated
/// against the profile in closed form. t_split <= 0 means diam. Rejects z
/// within 0.1 of a pole (DomainError) and z outside the strip.
BetaValue beta_eval(const Shape& shape, Complex z, const ProfilePolynomial& profile,
                    double t_split, const PairPlan& plan);

/// Same as beta_eval for many z sharing one pair pass.
std::vector<BetaValue> beta_eval_many(const Shape& shape, const std::vector<Complex>& zs,
                                      const ProfilePolynomial& profile, double t_split,
                                      const PairPlan& plan);

/// Candidate poles of B in the profile's strip, in decreasing order.
std::vector<int> pole_set(const Shape& shape, const ProfilePolynomial& profile);

struct Pole {
  int z = 0;
  double residue = 0.0;
  double std_error = 0.0;
  std::string method;
  // independent estimate of the same residue, when one is computed
  std::optional<double> check;
  double check_error = 0.0;
};

struct MeromorphicSummary {
  std::vector<Pole> poles;
  std::vector<BetaValue> values;

  const Pole* find(int z) const;
  nlohmann::json to_json() const;
};

/// Residues at every pole of the strip. Closed M: Res(-m-2i) = c_{2i}. Body:
/// Res(-d-(2i+1)) = -c_{2i} / ((d+2i-1)(2i+1)) and Res(-d) from the boundary
/// form (regularized value of the boundary kernel at -d for d >= 3, the
/// logarithmic boundary integral for d = 2), cross-checked by a contour
/// average of the continued function, stored in Pole::check.
MeromorphicSummary residues(const Shape& shape, const ProfilePolynomial& profile,
                            const PairPlan& plan = {});

/// Average of (z - p) f(z) over n points on the circle |z - p| = radius.
Complex contour_residue(const std::function<std::vector<Complex>(const std::vector<Complex>&)>& f,
                        double p, double radius = 0.2, int n = 16);

/// Exact B for a single circle, 2-sphere or d-ball (any placement).
/// ValidationError for other shapes, DomainError at a pole.
Complex closed_form_beta(const Shape& shape, Complex z);
/// Residue of the closed form at an integer pole (0 when regular there).
double closed_form_residue(const Shape& shape, int pole);

struct DiameterEstimate {
  std::vector<int> n;
  std::vector<double> d_n;      // B(n)^(1/n)
  std::vector<double> d_error;
  double limit = 0.0;           // extrapolated
  double limit_error = 0.0;
};

/// B(n)^(1/n) for n in {n_max/4, n_max/2, n_max} (log domain) and the limit
/// from n log D_n = n L + A - kappa log n solved exactly for L.
DiameterEstimate diameter_via_beta(const Shape& shape, int n_max, const PairPlan& plan);

/// The same extrapolation applied to exact log B values.
double extrapolate_diameter(const std::vector<int>& n, const std::vector<double>& log_b);

}  // namespace riesz
