#pragma once

// Sample-and-Search with label queries only. Phase 1 probes random unqueried
// points until either the whole sample is queried or the queried labels, read
// in sorted order, change sign d_roots times. Each of those sign changes then
// brackets exactly one boundary, found by binary search on the points inside
// the bracket; every other point shares its neighbours' label.

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "ptflab/oracle.hpp"
#include "ptflab/rng.hpp"

namespace ptflab {

enum class SearchCase { Exhausted, Flips };  // case (a) / case (b)

struct AvgCaseResult {
  std::uint64_t z = 0;  // phase-1 probes
  std::uint64_t search_queries = 0;
  std::uint64_t total = 0;
  SearchCase termination = SearchCase::Exhausted;
  std::vector<Sign> labels;
};

/// Queried labels keyed by sample index, with the running count of sign
/// changes between consecutive queried points.
class ProbeState {
 public:
  explicit ProbeState(std::uint64_t max_flips) : max_flips_(max_flips) {}

  void add(std::size_t index, Sign s);
  std::uint64_t flips() const { return flips_; }
  const std::map<std::size_t, Sign>& queried() const { return queried_; }

 private:
  std::map<std::size_t, Sign> queried_;
  std::uint64_t flips_ = 0;
  std::uint64_t max_flips_;
};

template <Scalar T>
AvgCaseResult sample_and_search(std::span<const T> points, Oracle<T>& oracle, int d_roots, Rng& rng) {
  if (d_roots < 0) throw Error(ErrorCode::InvalidArgument, "d_roots must be >= 0");
  const std::size_t n = points.size();
  const std::uint64_t start_total = oracle.ledger().total;
  AvgCaseResult res;
  if (n == 0) return res;
  ProbeState state(static_cast<std::uint64_t>(d_roots));

  // Lazy Fisher-Yates: uniform over not-yet-queried points.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto saw_all_flips = [&] { return d_roots > 0 && state.flips() == static_cast<std::uint64_t>(d_roots); };
  for (std::size_t drawn = 0; drawn < n && !saw_all_flips(); ++drawn) {
    std::uniform_int_distribution<std::size_t> pick(drawn, n - 1);
    std::swap(order[drawn], order[pick(rng)]);
    const std::size_t i = order[drawn];
    state.add(i, oracle.query(points[i], 0));
    ++res.z;
  }

  res.labels.assign(n, Sign::Plus);
  const auto& q = state.queried();
  if (!saw_all_flips()) {
    res.termination = SearchCase::Exhausted;
    for (const auto& [i, s] : q) res.labels[i] = s;
  } else {
    res.termination = SearchCase::Flips;
    // Points before the first / after the last queried point share its label.
    auto it = q.begin();
    for (std::size_t i = 0; i <= it->first; ++i) res.labels[i] = it->second;
    for (auto next = std::next(it); next != q.end(); it = next, ++next) {
      const auto [a, sa] = *it;
      const auto [b, sb] = *next;
      if (sa == sb) {
        for (std::size_t i = a; i <= b; ++i) res.labels[i] = sa;
        continue;
      }
      std::size_t lo = a;
      std::size_t hi = b;
      while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const Sign s = oracle.query(points[mid], 0);
        ++res.search_queries;
        (s == sa ? lo : hi) = mid;
      }
      for (std::size_t i = a; i <= lo; ++i) res.labels[i] = sa;
      for (std::size_t i = hi; i <= b; ++i) res.labels[i] = sb;
    }
    for (std::size_t i = it->first; i < n; ++i) res.labels[i] = it->second;
  }
  res.total = res.z + res.search_queries;
  if (oracle.ledger().total - start_total != res.total) throw Error(ErrorCode::Internal, "query accounting mismatch");
  return res;
}

/// Draws from the categorical `gaps` until every category has appeared and
/// returns min(draws, n); drawing stops at n.
std::uint64_t capped_coupon_statistic(std::span<const double> gaps, std::uint64_t n, Rng& rng);

}  // namespace ptflab
