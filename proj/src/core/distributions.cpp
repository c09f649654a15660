#include "ptflab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

namespace ptflab {

void RootModel::validate() const {
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "root model degree must be >= 0");
  if (kind == RootModelKind::DirichletGaps && !(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Dirichlet alpha must be > 0");
  }
}

nlohmann::json RootModel::to_json() const {
  nlohmann::json j = {{"kind", kind == RootModelKind::UniformRoots ? "uniform" : "dirichlet"}, {"d", d}};
  if (kind == RootModelKind::DirichletGaps) j["alpha"] = alpha;
  return j;
}

RootModel RootModel::from_json(const nlohmann::json& j) {
  RootModel m;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    m.kind = RootModelKind::UniformRoots;
  } else if (kind == "dirichlet") {
    m.kind = RootModelKind::DirichletGaps;
    m.alpha = j.at("alpha").get<double>();
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown root model '" + kind + "'");
  }
  m.d = j.at("d").get<int>();
  m.validate();
  return m;
}

std::vector<double> uniform_points(std::size_t n, Rng& rng) {
  std::vector<double> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    while (pts.size() < n) pts.push_back(uniform01(rng));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  return pts;
}

std::vector<double> dirichlet_gaps(int parts, double alpha, Rng& rng) {
  if (parts < 1) throw Error(ErrorCode::InvalidArgument, "need at least one part");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> g(static_cast<std::size_t>(parts));
  for (;;) {
    double sum = 0.0;
    for (auto& v : g) {
      v = gamma(rng);
      sum += v;
    }
    bool ok = sum > 0.0 && std::isfinite(sum);
    if (ok) {
      for (auto& v : g) {
        v /= sum;
        ok = ok && v > 0.0;
      }
    }
    if (ok) return g;
  }
}

std::vector<Rational> normalize_exact(std::span<const double> weights) {
  Rational sum(0);
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidArgument, "weights must be positive");
    sum += Rational(w);
  }
  std::vector<Rational> out;
  out.reserve(weights.size());
  for (double w : weights) out.push_back(Rational(Rational(w) / sum));
  return out;
}

std::vector<double> sample_roots(const RootModel& model, Rng& rng) {
  model.validate();
  const auto d = static_cast<std::size_t>(model.d);
  std::vector<double> roots(d);
  for (;;) {
    if (model.kind == RootModelKind::UniformRoots) {
      for (auto& r : roots) r = uniform01(rng);
      std::sort(roots.begin(), roots.end());
    } else {
      const auto gaps = dirichlet_gaps(model.d + 1, model.alpha, rng);
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        acc += gaps[j];
        roots[j] = acc;
      }
    }
    bool ok = true;
    for (std::size_t j = 0; j < d && ok; ++j) {
      ok = roots[j] > 0.0 && roots[j] < 1.0 && (j == 0 || roots[j - 1] < roots[j]);
    }
    if (ok) return roots;
  }
}

double entropy_lower_bound_uniform(std::uint64_t n, std::uint64_t d) {
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  return (std::lgamma(nn + dd + 1.0) - std::lgamma(dd + 1.0) - std::lgamma(nn + 1.0)) / std::log(2.0);
}

double entropy_lower_bound_uniform_exact(std::uint64_t n, std::uint64_t d) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n + d, d);
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, c.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double dirichlet_multinomial_entropy(std::uint64_t n, int d, double alpha) {
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "d must be >= 0");
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be > 0");
  mpz_class count;
  mpz_bin_uiui(count.get_mpz_t(), n + static_cast<std::uint64_t>(d), static_cast<unsigned long>(d));
  if (count > kMaxCompositions) {
    throw Error(ErrorCode::ComputationTooLarge, "C(n+d, d) = " + count.get_str() + " count vectors");
  }
  const int parts = d + 1;
  const double nn = static_cast<double>(n);
  const double base = std::lgamma(nn + 1.0) + std::lgamma(parts * alpha) - std::lgamma(nn + parts * alpha) -
                      parts * std::lgamma(alpha);
  // log pmf contribution of a single count x: lgamma(x + alpha) - lgamma(x + 1)
  std::vector<double> term(n + 1);
  for (std::uint64_t x = 0; x <= n; ++x) {
    term[x] = std::lgamma(static_cast<double>(x) + alpha) - std::lgamma(static_cast<double>(x) + 1.0);
  }
  double h = 0.0;
  std::function<void(int, std::uint64_t, double)> walk = [&](int part, std::uint64_t left, double acc) {
    if (part == parts - 1) {
      const double lp = base + acc + term[left];
      h -= std::exp(lp) * lp;
      return;
    }
    for (std::uint64_t x = 0; x <= left; ++x) walk(part + 1, left - x, acc + term[x]);
  };
  walk(0, n, 0.0);
  return h / std::log(2.0);
}

EntropyBound entropy_lower_bound_dirichlet(std::uint64_t n, int d, double alpha, bool force_surrogate) {
  if (!force_surrogate) {
    try {
      return {dirichlet_multinomial_entropy(n, d, alpha), false};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ComputationTooLarge) throw;
    }
  }
  return {(d - 1) * std::log2(static_cast<double>(n)), true};
}

}  // namespace ptflab
