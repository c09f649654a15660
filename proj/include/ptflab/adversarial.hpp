#pragma once

// Non-inferability witnesses: a point set, a base polynomial, and for each
// flippable point an alternative polynomial that agrees with the base on
// every other point (at every declared query order) but has the opposite
// label at the flipped point. Univariate witnesses are built and checked in
// exact arithmetic.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptflab/polynomial.hpp"

namespace ptflab {

struct Alternative {
  std::size_t point = 0;  // index of the flipped point
  ExactPolynomial poly;
};

struct Witness {
  std::string construction;
  int d = 0;  // ambient degree bound
  std::vector<Rational> points;
  ExactPolynomial base;
  std::vector<Alternative> alternatives;
  std::set<int> query_orders;
  std::optional<Rational> epsilon;

  nlohmann::json to_json() const;
  static Witness from_json(const nlohmann::json& j);
};

struct WitnessCheck {
  bool agreement = true;  // base and alternative agree off the flipped point
  bool flip = true;       // labels differ at the flipped point
  std::vector<std::string> failures;
  bool ok() const { return agreement && flip; }
};

WitnessCheck verify(const Witness& w);

/// Points 1..n, base x^2, alternative i = (x - i - 1/4)(x - i + 1/4).
Witness interval_witness(int n, std::set<int> query_orders = {0});

/// s_1 = d!, s_j = s_{j-1}^3 - 1.
std::vector<mpz_class> missing_derivative_sequence(int d, int n);

/// Points s_1..s_n, base x^d, alternatives h_j for j = 2..n with
/// h_j = x^d - d s_{j-1}^3 x^{d-1} + d(d-1) s_{j-1}^4 x^{d-2}; every order but
/// d-1 is declared. s_1 anchors the construction and has no alternative.
/// Requires d >= 3 and 2 <= n <= 6. SizeLimit when the estimated integer size
/// exceeds `bit_budget` bits.
Witness missing_derivative_witness(int d, int n, std::size_t bit_budget = std::size_t{1} << 20);

/// base prod (x - r_i) over negative sorted distinct roots, points r_i + eps,
/// alternative g_i = base / (x - r_i) * (x - r_i - 2 eps). eps must stay
/// strictly below a third of the smallest root gap: it starts at a sixth and
/// is halved until the witness verifies (EpsilonSearchFailed after 256
/// halvings).
Witness linear_lower_witness(const std::vector<Rational>& roots);

/// Number of points recovered by restricted_infer from full patterns of the
/// base on all other points, using only the witness's declared orders.
std::size_t withheld_inferences(const Witness& w);

struct MultivariateReport {
  int n = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  double epsilon = 0.0;
  double tolerance = 0.0;
  std::vector<double> xs, ys;
  /// Sign of the constant off-diagonal Hessian entry of each h_i.
  std::vector<int> offdiag_sign;
  /// Base used for the witness: h (offdiag -eps) or h' (offdiag +eps).
  bool use_h_prime = false;
  /// 0-based indices i whose h_i matches the chosen base's off-diagonal sign.
  std::vector<std::size_t> selected;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

/// Rotated quadratics on n points of the unit quarter-circle
/// (cos(pi i/(2(n+1))), sin(pi i/(2(n+1)))). Checks, with margin
/// tol * c2: h_i > 0 at point i and < 0 elsewhere, negative partials and
/// Hessian diagonal at the other points, and the same for the base
/// quadratics. A checked value inside the margin raises ToleranceBreach.
MultivariateReport multivariate_witness(int n, double tol = 1e-9);

}  // namespace ptflab
