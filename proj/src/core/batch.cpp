#include "ptflab/batch.hpp"

#include <string>

namespace ptflab {

BatchParams BatchParams::make(int d, std::uint64_t n, double alpha) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be >= 1");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1]");
  BatchParams p;
  p.d = d;
  p.n = n;
  p.alpha = alpha;
  const auto dd = static_cast<std::uint64_t>(d);
  p.k = dd * dd + dd + 3;
  const double two_k = 2.0 * static_cast<double>(p.k);
  p.m = static_cast<std::uint64_t>(std::ceil(two_k * std::pow(static_cast<double>(n), alpha)));
  if (n == 1) p.m = 2 * p.k + 1;  // a single point is always one exhaustive batch
  if (p.m <= 2 * p.k) {
    throw Error(ErrorCode::InvalidArgument, "batch size m=" + std::to_string(p.m) + " must exceed 2k");
  }
  // The 1e-9 keeps exact integer ratios (n = (m/2k)^j) from rounding up.
  p.t = n <= 1 ? 0
               : static_cast<std::uint64_t>(std::ceil(
                     std::log(static_cast<double>(n)) / std::log(static_cast<double>(p.m) / two_k) - 1e-9));
  return p;
}

double BatchParams::klmz_alpha(std::uint64_t n) {
  if (n < 4) return 1.0;
  return 2.0 / std::log2(static_cast<double>(n));
}

}  // namespace ptflab
