#pragma once

// Batched inference-dimension learner with the restricted monotone inference
// rule: a point is inferred only when it lies strictly between two adjacent
// queried points whose full sign patterns (orders 0..d-1) coincide. Equal
// patterns make f monotone between them, and equal endpoint labels then fix
// every label in between.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ptflab/oracle.hpp"
#include "ptflab/rng.hpp"

namespace ptflab {

template <typename Key>
struct QueriedPoint {
  Key x;
  SignPattern pattern;  // orders 0..d-1
};

struct InferredLabel {
  std::size_t index;  // into the target list
  Sign sign;
  bool operator==(const InferredLabel&) const = default;
};

/// Targets sandwiched strictly between adjacent queried points with identical
/// patterns. Both inputs sorted ascending; only inferred targets are returned.
template <typename Key>
std::vector<InferredLabel> restricted_infer(std::span<const QueriedPoint<Key>> queried, std::span<const Key> targets) {
  std::vector<InferredLabel> out;
  std::size_t q = 0;  // first queried point with x >= target
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Key& x = targets[t];
    while (q < queried.size() && queried[q].x < x) ++q;
    if (q == 0 || q == queried.size()) continue;
    const auto& left = queried[q - 1];
    const auto& right = queried[q];
    if (!(x < right.x)) continue;  // coincides with a queried point
    if (left.pattern == right.pattern) out.push_back({t, left.pattern[0]});
  }
  return out;
}

/// As above, but yields nothing unless the query set covers every order
/// 0..d-1: with an order missing, equal patterns no longer certify
/// monotonicity.
template <typename Key>
std::vector<InferredLabel> restricted_infer(std::span<const QueriedPoint<Key>> queried, std::span<const Key> targets,
                                            const QuerySet& qset) {
  if (!qset.is_full()) return {};
  return restricted_infer<Key>(queried, targets);
}

/// Fraction of `remaining` whose label is known from `queried`: either the
/// point was queried itself or restricted_infer recovers it. 1 when empty.
template <typename Key>
double coverage(std::span<const QueriedPoint<Key>> queried, std::span<const Key> remaining) {
  if (remaining.empty()) return 1.0;
  std::size_t known = restricted_infer<Key>(queried, remaining).size();
  std::size_t q = 0;
  for (const Key& x : remaining) {
    while (q < queried.size() && queried[q].x < x) ++q;
    if (q < queried.size() && !(x < queried[q].x)) ++known;
  }
  return static_cast<double>(known) / static_cast<double>(remaining.size());
}

struct BatchParams {
  int d = 1;
  std::uint64_t n = 1;
  double alpha = 1.0;
  std::uint64_t k = 0;  // d^2 + d + 3
  std::uint64_t m = 0;  // ceil(2k n^alpha)
  std::uint64_t t = 0;  // ceil(ln n / ln(m / 2k))

  /// alpha in (0, 1]; m > 2k is required.
  static BatchParams make(int d, std::uint64_t n, double alpha);
  /// The query-efficient setting alpha = 2 / log2 n (alpha = 1 when n < 4).
  static double klmz_alpha(std::uint64_t n);
  /// (m - 2k) / m.
  double coverage_target() const { return static_cast<double>(m - 2 * k) / static_cast<double>(m); }
};

struct BatchResult {
  std::vector<Sign> labels;
  QueryLedger ledger;
  /// Loop bodies executed per outer iteration.
  std::vector<std::uint64_t> loops;
  /// Loop bodies that sent a non-empty batch.
  std::uint64_t loop_batches = 0;
  bool final_batch = false;
  /// True when m >= n, so the first round was the exhaustive batch.
  bool exhaustive_at_entry = false;
};

/// Abort threshold for one coverage loop: 64 times its expected length of 2.
inline constexpr std::uint64_t kMaxCoverageLoops = 128;

template <Scalar T>
BatchResult batch_klmz(std::span<const T> points, Oracle<T>& oracle, const BatchParams& params, Rng& rng) {
  const int d = oracle.d();
  if (!oracle.query_set().is_full()) throw Error(ErrorCode::DisallowedOrder, "batch learner needs orders 0..d-1");
  if (params.d != d || params.n != points.size()) throw Error(ErrorCode::InvalidArgument, "params do not match instance");
  const std::size_t n = points.size();

  BatchResult res;
  std::vector<std::optional<Sign>> labels(n);
  std::vector<std::optional<SignPattern>> patterns(n);
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;

  auto final_batch = [&] {
    std::vector<QueryRequest<T>> req;
    req.reserve(remaining.size());
    for (std::size_t i : remaining) req.push_back({points[i], 0});
    const auto signs = oracle.query_batch(req);
    for (std::size_t j = 0; j < remaining.size(); ++j) labels[remaining[j]] = signs[j];
    res.final_batch = !remaining.empty();
    remaining.clear();
  };

  const double target = params.coverage_target();
  for (std::uint64_t iter = 0; iter < params.t && !remaining.empty(); ++iter) {
    if (remaining.size() <= params.m) break;

    std::uniform_int_distribution<std::size_t> pick(0, remaining.size() - 1);
    std::vector<QueriedPoint<std::size_t>> sampled;
    std::uint64_t loops = 0;
    double cov = 0.0;
    while (cov < target) {
      if (++loops > kMaxCoverageLoops) {
        throw Error(ErrorCode::NonTermination, "coverage loop exceeded " + std::to_string(kMaxCoverageLoops));
      }
      std::vector<std::size_t> draw(params.m);
      for (auto& v : draw) v = remaining[pick(rng)];
      std::sort(draw.begin(), draw.end());
      draw.erase(std::unique(draw.begin(), draw.end()), draw.end());

      std::vector<QueryRequest<T>> req;
      std::vector<std::size_t> asked;
      for (std::size_t i : draw) {
        if (patterns[i]) continue;
        asked.push_back(i);
        for (int o = 0; o < d; ++o) req.push_back({points[i], o});
      }
      if (!req.empty()) {
        const auto signs = oracle.query_batch(req);
        ++res.loop_batches;
        for (std::size_t j = 0; j < asked.size(); ++j) {
          auto first = signs.begin() + static_cast<std::ptrdiff_t>(j) * d;
          patterns[asked[j]] = SignPattern{std::vector<Sign>(first, first + d)};
          labels[asked[j]] = (*patterns[asked[j]])[0];
        }
      }

      sampled.clear();
      for (std::size_t i : draw) sampled.push_back({i, *patterns[i]});
      cov = coverage<std::size_t>(sampled, remaining);
    }
    res.loops.push_back(loops);

    for (const auto& inf : restricted_infer<std::size_t>(sampled, remaining)) labels[remaining[inf.index]] = inf.sign;
    std::erase_if(remaining, [&](std::size_t i) { return labels[i].has_value(); });
    if (remaining.size() <= params.m) break;
  }
  if (!remaining.empty()) {
    res.exhaustive_at_entry = remaining.size() == n;
    final_batch();
  }

  res.labels.reserve(n);
  for (const auto& l : labels) res.labels.push_back(*l);
  res.ledger = oracle.ledger();
  return res;
}

}  // namespace ptflab
