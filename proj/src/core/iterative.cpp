#include "ptflab/iterative.hpp"

#include <bit>

namespace ptflab {

std::vector<Segment> partition_fixed_pattern(std::size_t n, std::span<const LevelLabels> higher) {
  std::vector<Segment> out;
  if (n == 0) return out;
  for (const auto& lv : higher) {
    if (lv.signs.size() != n) throw Error(ErrorCode::InvalidArgument, "level labels length mismatch");
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    bool same = true;
    for (const auto& lv : higher) {
      if (lv.signs[i] != lv.signs[i - 1]) {
        same = false;
        break;
      }
    }
    if (!same) {
      out.push_back({start, i - 1});
      start = i;
    }
  }
  out.push_back({start, n - 1});
  return out;
}

int ceil_log2(std::uint64_t n) {
  if (n <= 1) return 0;
  return static_cast<int>(std::bit_width(n - 1));
}

std::uint64_t level_segment_bound(int d, int level) {
  const auto k = static_cast<std::uint64_t>(d - level);
  return k * (k - 1) / 2 + 1;
}

std::uint64_t iterative_query_bound(int d, std::uint64_t n) {
  const auto per_search = static_cast<std::uint64_t>(ceil_log2(n)) + 2;
  std::uint64_t total = 0;
  for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(d); ++k) total += (k * (k - 1) / 2 + 1) * per_search;
  return total;
}

}  // namespace ptflab
