#include "ptflab/avgcase.hpp"

#include <cmath>
#include <string>

namespace ptflab {

void ProbeState::add(std::size_t index, Sign s) {
  auto [it, inserted] = queried_.emplace(index, s);
  if (!inserted) throw Error(ErrorCode::Internal, "point probed twice");
  const bool has_prev = it != queried_.begin();
  const auto next = std::next(it);
  const bool has_next = next != queried_.end();
  if (has_prev && has_next && std::prev(it)->second != next->second) --flips_;
  if (has_prev && std::prev(it)->second != s) ++flips_;
  if (has_next && next->second != s) ++flips_;
  if (flips_ > max_flips_) {
    throw Error(ErrorCode::DegreeViolation,
                std::to_string(flips_) + " sign changes exceed the " + std::to_string(max_flips_) + " roots");
  }
}

std::uint64_t capped_coupon_statistic(std::span<const double> gaps, std::uint64_t n, Rng& rng) {
  if (gaps.empty()) throw Error(ErrorCode::InvalidDistribution, "no categories");
  double sum = 0.0;
  for (double g : gaps) {
    if (!(g >= 0.0)) throw Error(ErrorCode::InvalidDistribution, "negative probability");
    sum += g;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorCode::InvalidDistribution, "probabilities do not sum to 1");

  std::discrete_distribution<std::size_t> draw(gaps.begin(), gaps.end());
  std::vector<bool> seen(gaps.size(), false);
  // A zero-mass category is never collected, so such a run always hits the cap.
  std::size_t missing = gaps.size();
  std::uint64_t draws = 0;
  while (missing > 0 && draws < n) {
    const std::size_t c = draw(rng);
    ++draws;
    if (!seen[c]) {
      seen[c] = true;
      --missing;
    }
  }
  return draws;
}

}  // namespace ptflab
