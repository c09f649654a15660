#include "ptflab/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ptflab/batch.hpp"
#include "ptflab/oracle.hpp"

namespace ptflab {

namespace {

std::vector<ExactPolynomial> derivatives_up_to(const ExactPolynomial& p, int d) {
  std::vector<ExactPolynomial> out{p};
  for (int i = 1; i <= d; ++i) out.push_back(out.back().derivative(1));
  return out;
}

ExactPolynomial linear(const Rational& root) { return ExactPolynomial({Rational(-root), Rational(1)}); }

}  // namespace

nlohmann::json Witness::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) pts.push_back(rational_to_string(p));
  nlohmann::json alts = nlohmann::json::array();
  for (const auto& a : alternatives) alts.push_back({{"point", a.point}, {"poly", ptflab::to_json(a.poly)}});
  nlohmann::json j = {{"construction", construction},
                      {"d", d},
                      {"points", pts},
                      {"base", ptflab::to_json(base)},
                      {"alternatives", alts},
                      {"query_orders", query_orders}};
  if (epsilon) j["epsilon"] = rational_to_string(*epsilon);
  return j;
}

Witness Witness::from_json(const nlohmann::json& j) {
  Witness w;
  w.construction = j.at("construction").get<std::string>();
  w.d = j.at("d").get<int>();
  for (const auto& p : j.at("points")) w.points.push_back(rational_from_string(p.get<std::string>()));
  w.base = polynomial_from_json<Rational>(j.at("base"));
  for (const auto& a : j.at("alternatives")) {
    w.alternatives.push_back({a.at("point").get<std::size_t>(), polynomial_from_json<Rational>(a.at("poly"))});
  }
  w.query_orders = j.at("query_orders").get<std::set<int>>();
  if (j.contains("epsilon")) w.epsilon = rational_from_string(j.at("epsilon").get<std::string>());
  return w;
}

WitnessCheck verify(const Witness& w) {
  WitnessCheck c;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    c.failures.push_back(std::move(msg));
  };
  const auto base_d = derivatives_up_to(w.base, w.d);
  for (const auto& alt : w.alternatives) {
    if (alt.point >= w.points.size()) {
      fail(c.flip, "alternative points past the end of the point set");
      continue;
    }
    if (alt.poly.degree() > w.d) fail(c.agreement, "alternative exceeds degree bound");
    const auto alt_d = derivatives_up_to(alt.poly, w.d);
    for (std::size_t j = 0; j < w.points.size(); ++j) {
      if (j == alt.point) continue;
      for (int k : w.query_orders) {
        const auto ku = static_cast<std::size_t>(k);
        if (base_d[ku].sign_at(w.points[j]) != alt_d[ku].sign_at(w.points[j])) {
          fail(c.agreement, "alternative " + std::to_string(alt.point) + " disagrees at point " + std::to_string(j) +
                                ", order " + std::to_string(k));
        }
      }
    }
    if (w.base.sign_at(w.points[alt.point]) == alt.poly.sign_at(w.points[alt.point])) {
      fail(c.flip, "alternative " + std::to_string(alt.point) + " does not flip its point");
    }
  }
  return c;
}

Witness interval_witness(int n, std::set<int> query_orders) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  Witness w;
  w.construction = "interval";
  w.d = 2;
  w.base = ExactPolynomial({Rational(0), Rational(0), Rational(1)});
  w.query_orders = std::move(query_orders);
  const Rational quarter(1, 4);
  for (int i = 1; i <= n; ++i) {
    w.points.emplace_back(i);
    const Rational y(i);
    w.alternatives.push_back({static_cast<std::size_t>(i - 1), linear(y + quarter) * linear(y - quarter)});
  }
  return w;
}

std::vector<mpz_class> missing_derivative_sequence(int d, int n) {
  if (d < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "d and n must be >= 1");
  mpz_class s(1);
  for (int i = 2; i <= d; ++i) s *= i;
  std::vector<mpz_class> out{s};
  for (int j = 2; j <= n; ++j) {
    mpz_class next = out.back() * out.back() * out.back() - 1;
    out.push_back(next);
  }
  return out;
}

Witness missing_derivative_witness(int d, int n, std::size_t bit_budget) {
  if (d < 3) throw Error(ErrorCode::InvalidArgument, "missing-derivative witness needs d >= 3");
  if (n < 2 || n > 6) throw Error(ErrorCode::InvalidArgument, "missing-derivative witness needs 2 <= n <= 6");
  // Largest integers appear evaluating degree-d polynomials with s_{n-1}^4
  // coefficients at s_n: roughly (d + 2) * bits(s_n).
  mpz_class s(1);
  for (int i = 2; i <= d; ++i) s *= i;
  double bits = std::log2(s.get_d());
  for (int j = 2; j <= n; ++j) bits = 3.0 * bits;
  if (bits * (d + 2) > static_cast<double>(bit_budget)) {
    throw Error(ErrorCode::SizeLimit, "construction needs about " + std::to_string(static_cast<long>(bits * (d + 2))) +
                                          " bits, budget is " + std::to_string(bit_budget));
  }

  const auto seq = missing_derivative_sequence(d, n);
  Witness w;
  w.construction = "missing_derivative";
  w.d = d;
  std::vector<Rational> base(static_cast<std::size_t>(d) + 1, Rational(0));
  base.back() = 1;
  w.base = ExactPolynomial(std::move(base));
  for (int k = 0; k <= d; ++k)
    if (k != d - 1) w.query_orders.insert(k);
  for (const auto& v : seq) w.points.emplace_back(v);
  for (int j = 2; j <= n; ++j) {
    const mpz_class& prev = seq[static_cast<std::size_t>(j - 2)];
    const mpz_class cube = prev * prev * prev;
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1, Rational(0));
    c[static_cast<std::size_t>(d)] = 1;
    c[static_cast<std::size_t>(d - 1)] = Rational(mpz_class(-d * cube));
    c[static_cast<std::size_t>(d - 2)] = Rational(mpz_class(d * (d - 1) * cube * prev));
    w.alternatives.push_back({static_cast<std::size_t>(j - 1), ExactPolynomial(std::move(c))});
  }
  return w;
}

Witness linear_lower_witness(const std::vector<Rational>& roots) {
  const int d = static_cast<int>(roots.size());
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "linear witness needs d >= 2");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (sgn(roots[i]) >= 0) throw Error(ErrorCode::InvalidArgument, "roots must be negative");
    if (i > 0 && !(roots[i - 1] < roots[i])) {
      throw Error(roots[i - 1] == roots[i] ? ErrorCode::DuplicateRoots : ErrorCode::InvalidArgument,
                  "roots must be distinct and sorted");
    }
  }
  const ExactPolynomial base = ExactPolynomial::from_roots(roots);
  Rational min_gap = roots[1] - roots[0];
  for (std::size_t i = 2; i < roots.size(); ++i) {
    Rational g = roots[i] - roots[i - 1];
    if (g < min_gap) min_gap = g;
  }
  // The gap/3 bound on eps is strict, so the first candidate is gap/6.
  Rational eps = min_gap / 6;

  for (int halvings = 0; halvings <= 256; ++halvings, eps /= 2) {
    Witness w;
    w.construction = "linear";
    w.d = d;
    w.base = base;
    for (int k = 0; k <= d; ++k) w.query_orders.insert(k);
    w.epsilon = eps;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      w.points.push_back(Rational(roots[i] + eps));
      ExactPolynomial others(std::vector<Rational>{Rational(1)});
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i) others = others * linear(roots[j]);
      w.alternatives.push_back({i, others * linear(Rational(roots[i] + 2 * eps))});
    }
    if (verify(w).ok()) return w;
  }
  throw Error(ErrorCode::EpsilonSearchFailed, "no epsilon verified after 256 halvings");
}

std::size_t withheld_inferences(const Witness& w) {
  std::set<int> orders;
  for (int k : w.query_orders)
    if (k < w.d) orders.insert(k);
  const QuerySet qset(w.d, orders);
  // Pattern entries follow the declared orders; equality of such patterns is
  // what restricted inference would compare.
  std::vector<QueriedPoint<Rational>> all;
  const auto base_d = derivatives_up_to(w.base, w.d);
  for (const auto& x : w.points) {
    SignPattern p;
    for (int k : orders) p.signs.push_back(base_d[static_cast<std::size_t>(k)].sign_at(x));
    all.push_back({x, std::move(p)});
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  std::size_t inferred = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::vector<QueriedPoint<Rational>> rest;
    for (std::size_t j = 0; j < all.size(); ++j)
      if (j != i) rest.push_back(all[j]);
    const std::vector<Rational> target{all[i].x};
    inferred += restricted_infer<Rational>(rest, target, qset).size();
  }
  return inferred;
}

nlohmann::json MultivariateReport::to_json() const {
  return {{"n", n},
          {"c1", c1},
          {"c2", c2},
          {"epsilon", epsilon},
          {"tolerance", tolerance},
          {"offdiag_sign", offdiag_sign},
          {"base", use_h_prime ? "h_prime" : "h"},
          {"selected", selected},
          {"passed", passed()},
          {"failures", failures}};
}

MultivariateReport multivariate_witness(int n, double tol) {
  if (n < 2 || n > 64) throw Error(ErrorCode::InvalidArgument, "multivariate witness needs 2 <= n <= 64");
  using std::numbers::pi;
  MultivariateReport r;
  r.n = n;
  const double step = pi / (2.0 * (n + 1));
  r.c1 = 1.0 / std::tan(step);
  r.c2 = r.c1 * r.c1 + r.c1 + 1.0;
  r.tolerance = tol;
  const double margin = tol * r.c2;

  r.epsilon = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= n; ++i) {
    const double x = std::cos(step * i);
    const double y = std::sin(step * i);
    r.xs.push_back(x);
    r.ys.push_back(y);
    r.epsilon = std::min({r.epsilon, std::abs(x / y), std::abs(y / x)});
  }

  // want < 0 (negative=true) or > 0; inside the margin is inconclusive
  auto expect = [&](double v, bool negative, const std::string& what) {
    if (std::abs(v) <= margin) throw Error(ErrorCode::ToleranceBreach, what + " = " + std::to_string(v));
    if ((v < 0) != negative) r.failures.push_back(what + " has the wrong sign (" + std::to_string(v) + ")");
  };

  for (double e : {-r.epsilon, r.epsilon}) {
    const std::string name = e < 0 ? "h" : "h'";
    for (int j = 0; j < n; ++j) {
      const double x = r.xs[static_cast<std::size_t>(j)], y = r.ys[static_cast<std::size_t>(j)];
      const std::string at = " at s" + std::to_string(j + 1);
      expect(-x * x - y * y + e * x * y, true, name + at);
      expect(-2 * x + e * y, true, name + " d/dx" + at);
      expect(-2 * y + e * x, true, name + " d/dy" + at);
    }
  }

  int negative_offdiag = 0;
  for (int i = 1; i <= n; ++i) {
    const double th = -step / 2.0 - step * (i - 1);
    const double s = std::sin(th), c = std::cos(th);
    const double hxx = 2 * s * c - 2 * r.c1 * s * s - 2 * r.c2;
    const double hyy = -2 * s * c - 2 * r.c1 * c * c - 2 * r.c2;
    const double hxy = c * c - s * s - 2 * r.c1 * s * c;
    const std::string hi = "h" + std::to_string(i);
    expect(hxx, true, hi + " d2/dx2");
    expect(hyy, true, hi + " d2/dy2");
    if (std::abs(hxy) <= margin) throw Error(ErrorCode::ToleranceBreach, hi + " d2/dxdy = " + std::to_string(hxy));
    r.offdiag_sign.push_back(hxy < 0 ? -1 : 1);
    if (hxy < 0) ++negative_offdiag;

    for (int j = 1; j <= n; ++j) {
      const double x = r.xs[static_cast<std::size_t>(j - 1)], y = r.ys[static_cast<std::size_t>(j - 1)];
      const double u = x * c - y * s;  // rotated coordinates
      const double v = x * s + y * c;
      const double val = u * v - r.c1 * v * v - r.c2 * (x * x + y * y - 1.0);
      const std::string at = " at s" + std::to_string(j);
      if (j == i) {
        expect(val, false, hi + at);
        continue;
      }
      expect(val, true, hi + at);
      const double dx = c * v + s * u - 2 * r.c1 * s * v - 2 * r.c2 * x;
      const double dy = -s * v + c * u - 2 * r.c1 * c * v - 2 * r.c2 * y;
      expect(dx, true, hi + " d/dx" + at);
      expect(dy, true, hi + " d/dy" + at);
    }
  }

  r.use_h_prime = 2 * negative_offdiag <= n;
  for (int i = 0; i < n; ++i) {
    if ((r.offdiag_sign[static_cast<std::size_t>(i)] > 0) == r.use_h_prime) r.selected.push_back(static_cast<std::size_t>(i));
  }
  if (2 * r.selected.size() < static_cast<std::size_t>(n)) r.failures.push_back("majority selection below n/2");
  return r;
}

}  // namespace ptflab
