#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "ptflab/polynomial.hpp"
#include "ptflab/rng.hpp"

namespace ptflab {

enum class RootModelKind { UniformRoots, DirichletGaps };

/// Distribution of the hidden polynomial's d roots inside (0, 1).
/// DirichletGaps: the d+1 gaps 0 < r_1 < ... < r_d < 1 are Dir(alpha).
struct RootModel {
  RootModelKind kind = RootModelKind::UniformRoots;
  int d = 1;
  double alpha = 1.0;

  void validate() const;
  nlohmann::json to_json() const;
  static RootModel from_json(const nlohmann::json& j);
};

/// n distinct i.i.d. Uniform[0,1) draws, sorted; collisions are redrawn.
std::vector<double> uniform_points(std::size_t n, Rng& rng);

/// Symmetric Dirichlet over `parts` coordinates via normalized Gamma(alpha, 1)
/// draws. Every coordinate is strictly positive.
std::vector<double> dirichlet_gaps(int parts, double alpha, Rng& rng);

/// Normalizes positive weights in exact arithmetic; the result sums to 1.
std::vector<Rational> normalize_exact(std::span<const double> weights);

/// Sorted, distinct roots strictly inside (0, 1).
std::vector<double> sample_roots(const RootModel& model, Rng& rng);

template <Scalar T>
Polynomial<T> polynomial_from_roots(std::span<const double> roots, Sign leading = Sign::Plus) {
  std::vector<T> r;
  r.reserve(roots.size());
  for (double v : roots) r.push_back(from_double<T>(v));
  return Polynomial<T>::from_roots(r, leading);
}

template <Scalar T>
Polynomial<T> sample_hidden(const RootModel& model, Rng& rng, Sign leading = Sign::Plus) {
  const auto roots = sample_roots(model, rng);
  return polynomial_from_roots<T>(roots, leading);
}

/// log2 C(n+d, d) in bits, via log-gamma.
double entropy_lower_bound_uniform(std::uint64_t n, std::uint64_t d);
/// Same quantity from the exact big-integer binomial.
double entropy_lower_bound_uniform_exact(std::uint64_t n, std::uint64_t d);

/// Entropy in bits of Dirichlet-Multinomial(n; alpha x (d+1)) by summing over
/// all C(n+d, d) count vectors. ComputationTooLarge past 10^7 of them.
double dirichlet_multinomial_entropy(std::uint64_t n, int d, double alpha);

struct EntropyBound {
  double bits = 0.0;
  bool surrogate = false;  // (d-1) log2 n stand-in, not an exact value
};

/// Exact Dirichlet-Multinomial entropy when enumerable, else the surrogate
/// (d-1) log2 n. `force_surrogate` skips the enumeration.
EntropyBound entropy_lower_bound_dirichlet(std::uint64_t n, int d, double alpha, bool force_surrogate = false);

inline constexpr std::uint64_t kMaxCompositions = 10'000'000;

}  // namespace ptflab
