#include "doctest.h"
#include "ptflab/distributions.hpp"
#include "ptflab/iterative.hpp"

using namespace ptflab;

namespace {
LevelLabels level(int i, std::initializer_list<int> s) {
  LevelLabels l{i, {}};
  for (int v : s) l.signs.push_back(v > 0 ? Sign::Plus : Sign::Minus);
  return l;
}
}  // namespace

TEST_CASE("partition_fixed_pattern") {
  const std::vector<LevelLabels> one{level(1, {1, 1, -1, -1})};
  CHECK(partition_fixed_pattern(4, one) == std::vector<Segment>{{0, 1}, {2, 3}});
  const std::vector<LevelLabels> flat{level(1, {1, 1, 1}), level(2, {-1, -1, -1})};
  CHECK(partition_fixed_pattern(3, flat) == std::vector<Segment>{{0, 2}});
  CHECK(partition_fixed_pattern(5, {}) == std::vector<Segment>{{0, 4}});
  const std::vector<LevelLabels> two{level(1, {1, 1, -1, -1, -1}), level(2, {1, -1, -1, -1, 1})};
  CHECK(partition_fixed_pattern(5, two) == std::vector<Segment>{{0, 0}, {1, 1}, {2, 3}, {4, 4}});
}

TEST_CASE("segment counts on eight equispaced points of the cubic") {
  const std::vector<Rational> roots{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  const auto f = ExactPolynomial::from_roots(roots);
  std::vector<Rational> pts;
  for (int i = 1; i <= 8; ++i) pts.push_back(make_rational(i, 9));
  // independent count: pattern changes of (f', f'') across the points
  std::size_t runs = 1;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (sign_pattern(f, pts[i], 3).signs[1] != sign_pattern(f, pts[i - 1], 3).signs[1] ||
        sign_pattern(f, pts[i], 3).signs[2] != sign_pattern(f, pts[i - 1], 3).signs[2]) {
      ++runs;
    }
  }
  Oracle<Rational> o(f, QuerySet::full(3));
  const auto res = learn_all<Rational>(pts, o);
  CHECK(res.segment_counts[0] == runs);
  CHECK(res.segment_counts[0] <= level_segment_bound(3, 0));
  CHECK(level_segment_bound(3, 0) == 4);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(res.labels[i] == f.sign_at(pts[i]));
}

TEST_CASE("binary_search_segment query counts") {
  const std::vector<Rational> pts{1, 2, 3, 4};
  const ExactPolynomial lin(std::vector<Rational>{-3, 2});  // 2x - 3
  Oracle<Rational> o(lin, QuerySet::full(1));
  std::vector<Sign> out(4, Sign::Plus);
  binary_search_segment<Rational>(pts, {0, 3}, 0, o, out);
  CHECK(out == std::vector<Sign>{Sign::Minus, Sign::Plus, Sign::Plus, Sign::Plus});
  CHECK(o.ledger().total <= 2 + ceil_log2(3));
  // search path: endpoints 1 and 4, then mid index 1 (x=2): 3 queries
  CHECK(o.ledger().total == 3);

  Oracle<Rational> pos(ExactPolynomial(std::vector<Rational>{1}), QuerySet::full(1));
  std::vector<Sign> all(4, Sign::Minus);
  binary_search_segment<Rational>(pts, {0, 3}, 0, pos, all);
  CHECK(all == std::vector<Sign>(4, Sign::Plus));
  CHECK(pos.ledger().total == 2);

  Oracle<Rational> one(lin, QuerySet::full(1));
  binary_search_segment<Rational>(pts, {2, 2}, 0, one, out);
  CHECK(one.ledger().total == 1);
}

TEST_CASE("binary_search_segment rejects endpoints against a known slope") {
  const std::vector<Rational> pts{1, 2, 3, 4};
  const ExactPolynomial lin(std::vector<Rational>{-3, 2});
  Oracle<Rational> o(lin, QuerySet::full(1));
  std::vector<Sign> out(4);
  try {
    binary_search_segment<Rational>(pts, {0, 3}, 0, o, out, Sign::Minus);
    FAIL("expected MonotonicityViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MonotonicityViolation);
  }
}

TEST_CASE("per-segment cost never exceeds 2 + ceil(log2(size - 1))") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i);
    const double root = uniform01(rng) * static_cast<double>(n + 2) - 1.0;
    const FloatPolynomial f(std::vector<double>{-root, rng() % 2 ? 1.0 : -1.0});
    Oracle<double> o(f, QuerySet::full(1));
    std::vector<Sign> out(n);
    binary_search_segment<double>(pts, {0, n - 1}, 0, o, out);
    const std::uint64_t cap = n == 1 ? 1 : 2 + static_cast<std::uint64_t>(ceil_log2(n - 1));
    CHECK(o.ledger().total <= cap);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == f.sign_at(pts[i]));
  }
}

TEST_CASE("bounds") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(1024) == 10);
  CHECK(ceil_log2(1025) == 11);
  CHECK(iterative_query_bound(1, 1024) == 12);
  CHECK(iterative_query_bound(2, 1024) == 36);
  CHECK(iterative_query_bound(3, 4096) == 98);
  CHECK(level_segment_bound(4, 3) == 1);
  CHECK(level_segment_bound(4, 0) == 7);
}

TEST_CASE("learn_all on the reference instances") {
  Rng rng(17);
  {
    const auto pts = uniform_points(1024, rng);
    const FloatPolynomial f(std::vector<double>{-0.4, 1.0});
    Oracle<double> o(f, QuerySet::full(1));
    const auto res = learn_all<double>(pts, o);
    CHECK(res.ledger.total <= 12);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(res.labels[i] == f.sign_at(pts[i]));
  }
  {
    const auto ptsd = uniform_points(1024, rng);
    const std::vector<Rational> pts(ptsd.begin(), ptsd.end());
    const auto f = ExactPolynomial::from_roots(std::vector<Rational>{Rational(3, 10), Rational(7, 10)});
    Oracle<Rational> o(f, QuerySet::full(2));
    const auto res = learn_all<Rational>(pts, o);
    CHECK(res.ledger.total <= 36);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(res.labels[i] == f.sign_at(pts[i]));
  }
}

TEST_CASE("learn_all: labels, every level, and the bounds over random instances") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 6;
    const std::size_t n = 1 + rng() % 600;
    const auto pts = uniform_points(n, rng);
    const auto f = sample_hidden<double>({RootModelKind::UniformRoots, d, 1.0}, rng, rng() % 2 ? Sign::Plus : Sign::Minus);
    Oracle<double> o(f, QuerySet::full(d));
    const auto res = learn_all<double>(pts, o);
    CHECK(res.ledger.total <= iterative_query_bound(d, n));
    CHECK(res.ledger.count(d) == 0);
    for (int lv = 0; lv < d; ++lv) {
      const auto fi = f.derivative(lv);
      CHECK(res.segment_counts[static_cast<std::size_t>(lv)] <= level_segment_bound(d, lv));
      for (std::size_t i = 0; i < n; ++i) REQUIRE(res.levels[static_cast<std::size_t>(lv)].signs[i] == fi.sign_at(pts[i]));
    }
  }
}

TEST_CASE("learn_all preconditions") {
  const std::vector<double> unsorted{0.5, 0.25};
  Oracle<double> o(FloatPolynomial(std::vector<double>{1.0}), QuerySet::full(1));
  CHECK_THROWS_AS(learn_all<double>(unsorted, o), Error);
  Oracle<double> lab(FloatPolynomial(std::vector<double>{1.0}), QuerySet::labels_only(2));
  const std::vector<double> ok{0.25, 0.5};
  CHECK_THROWS_AS(learn_all<double>(ok, lab), Error);
  CHECK(learn_all<double>(std::span<const double>(), o).labels.empty());
}
