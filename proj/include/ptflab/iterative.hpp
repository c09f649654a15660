#pragma once

// Deterministic level-by-level learner. Signs of f^(d-1) are found by one
// binary search over the sorted sample; each lower level f^(i) is then split
// into runs on which the already-learned signs of f^(i+1..d-1) are constant.
// Equal signs of all higher derivatives across a run make f^(i) monotone
// there, so a run needs its two endpoints plus a binary search at most.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ptflab/oracle.hpp"

namespace ptflab {

/// Inclusive index range into the sorted sample.
struct Segment {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t size() const { return hi - lo + 1; }
  bool operator==(const Segment&) const = default;
};

struct LevelLabels {
  int level = 0;
  std::vector<Sign> signs;
};

struct IterativeResult {
  std::vector<Sign> labels;
  /// levels[i] holds the learned signs of f^(i).
  std::vector<LevelLabels> levels;
  /// segment_counts[i] = number of runs used at level i.
  std::vector<std::size_t> segment_counts;
  QueryLedger ledger;
};

/// Maximal runs of indices 0..n-1 on which every given level is constant.
std::vector<Segment> partition_fixed_pattern(std::size_t n, std::span<const LevelLabels> higher);

/// sum_{k=1..d} (k(k-1)/2 + 1)(ceil(log2 n) + 2).
std::uint64_t iterative_query_bound(int d, std::uint64_t n);
/// (d-i)(d-i-1)/2 + 1.
std::uint64_t level_segment_bound(int d, int level);
int ceil_log2(std::uint64_t n);

/// Labels points[seg] at `order`, writing into `out` (indexed like points).
/// `slope` is the known constant sign of f^(order+1) on the segment, if any;
/// endpoints that contradict it raise MonotonicityViolation.
template <Scalar T>
void binary_search_segment(std::span<const T> points, Segment seg, int order, Oracle<T>& oracle,
                           std::span<Sign> out, std::optional<Sign> slope = std::nullopt) {
  const Sign left = oracle.query(points[seg.lo], order);
  out[seg.lo] = left;
  if (seg.lo == seg.hi) return;
  const Sign right = oracle.query(points[seg.hi], order);
  out[seg.hi] = right;
  if (left == right) {
    for (std::size_t i = seg.lo + 1; i < seg.hi; ++i) out[i] = left;
    return;
  }
  // Non-decreasing f^(order) can only go - to +, non-increasing only + to -.
  if (slope && ((*slope == Sign::Plus) != (left == Sign::Minus))) {
    throw Error(ErrorCode::MonotonicityViolation,
                "endpoint signs at order " + std::to_string(order) + " contradict the known slope");
  }
  // Invariant: sign(lo) == left, sign(hi) == right.
  std::size_t lo = seg.lo;
  std::size_t hi = seg.hi;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Sign s = oracle.query(points[mid], order);
    if (s == left) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  for (std::size_t i = seg.lo + 1; i <= lo; ++i) out[i] = left;
  for (std::size_t i = hi; i < seg.hi; ++i) out[i] = right;
}

/// Labels every point of a strictly increasing sample. The oracle must allow
/// orders 0..d-1; order d is never queried.
template <Scalar T>
IterativeResult learn_all(std::span<const T> points, Oracle<T>& oracle) {
  const int d = oracle.d();
  if (!oracle.query_set().is_full()) throw Error(ErrorCode::DisallowedOrder, "iterative learner needs orders 0..d-1");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1] < points[i])) throw Error(ErrorCode::InvalidArgument, "sample must be strictly increasing");
  }
  const std::size_t n = points.size();
  IterativeResult res;
  res.levels.resize(static_cast<std::size_t>(d));
  res.segment_counts.assign(static_cast<std::size_t>(d), 0);
  if (n == 0) {
    res.ledger = oracle.ledger();
    return res;
  }

  for (int level = d - 1; level >= 0; --level) {
    const auto li = static_cast<std::size_t>(level);
    std::span<const LevelLabels> higher(res.levels.data() + li + 1, res.levels.size() - li - 1);
    const auto segments = partition_fixed_pattern(n, higher);
    res.segment_counts[li] = segments.size();

    LevelLabels labels{level, std::vector<Sign>(n, Sign::Plus)};
    for (const Segment& seg : segments) {
      std::optional<Sign> slope;
      if (level + 1 < d) slope = res.levels[li + 1].signs[seg.lo];
      binary_search_segment<T>(points, seg, level, oracle, labels.signs, slope);
    }
    res.levels[li] = std::move(labels);
  }
  res.labels = res.levels[0].signs;
  res.ledger = oracle.ledger();
  return res;
}

}  // namespace ptflab
