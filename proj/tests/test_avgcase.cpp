#include "doctest.h"
#include "ptflab/avgcase.hpp"
#include "ptflab/distributions.hpp"

using namespace ptflab;

TEST_CASE("ProbeState counts sign changes incrementally") {
  ProbeState s(3);
  s.add(5, Sign::Plus);
  CHECK(s.flips() == 0);
  s.add(10, Sign::Minus);
  CHECK(s.flips() == 1);
  s.add(7, Sign::Plus);  // + + -
  CHECK(s.flips() == 1);
  s.add(8, Sign::Minus);  // + + - -
  CHECK(s.flips() == 1);
  s.add(6, Sign::Minus);  // + - + - -
  CHECK(s.flips() == 3);
  CHECK_THROWS_AS(s.add(6, Sign::Minus), Error);
  try {
    s.add(0, Sign::Minus);  // - + - + - -
    FAIL("expected DegreeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeViolation);
  }
}

TEST_CASE("no roots means every point is probed") {
  Rng rng(1);
  const auto pts = uniform_points(50, rng);
  Oracle<double> o(FloatPolynomial(std::vector<double>{2.0}), QuerySet::labels_only(1));
  const auto res = sample_and_search<double>(pts, o, 0, rng);
  CHECK(res.z == 50);
  CHECK(res.total == 50);
  CHECK(res.termination == SearchCase::Exhausted);
  CHECK(res.labels == std::vector<Sign>(50, Sign::Plus));
}

TEST_CASE("two points around a single root") {
  Rng rng(2);
  const std::vector<double> pts{0.1, 0.9};
  Oracle<double> o(FloatPolynomial(std::vector<double>{-0.5, 1.0}), QuerySet::labels_only(1));
  const auto res = sample_and_search<double>(pts, o, 1, rng);
  CHECK(res.z == 2);
  CHECK(res.labels == std::vector<Sign>{Sign::Minus, Sign::Plus});
  CHECK(res.termination == SearchCase::Flips);
  CHECK(res.search_queries == 0);
}

TEST_CASE("sample_and_search labels perfectly and accounts exactly") {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 6;
    const std::size_t n = 1 + rng() % 2000;
    const auto pts = uniform_points(n, rng);
    const RootModel model = trial % 2 ? RootModel{RootModelKind::UniformRoots, d, 1.0}
                                      : RootModel{RootModelKind::DirichletGaps, d, 0.5 + trial % 3};
    const auto f = sample_hidden<double>(model, rng, trial % 3 ? Sign::Plus : Sign::Minus);
    Oracle<double> o(f, QuerySet::labels_only(d));
    const auto res = sample_and_search<double>(pts, o, d, rng);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(res.labels[i] == f.sign_at(pts[i]));
    CHECK(res.total == o.ledger().total);
    CHECK(res.total == res.z + res.search_queries);
    CHECK(res.z <= n);
    if (res.termination == SearchCase::Exhausted) CHECK(res.search_queries == 0);
  }
}

TEST_CASE("exact backend") {
  Rng rng(14);
  const auto ptsd = uniform_points(500, rng);
  const std::vector<Rational> pts(ptsd.begin(), ptsd.end());
  const auto f = sample_hidden<Rational>({RootModelKind::UniformRoots, 3, 1.0}, rng);
  Oracle<Rational> o(f, QuerySet::labels_only(3));
  const auto res = sample_and_search<Rational>(pts, o, 3, rng);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(res.labels[i] == f.sign_at(pts[i]));
}

TEST_CASE("a sign change with no roots declared is a degree violation") {
  Rng rng(15);
  const std::vector<double> pts{0.1, 0.3, 0.5, 0.7, 0.9};
  const auto f = polynomial_from_roots<double>(std::vector<double>{0.4});
  Oracle<double> o(f, QuerySet::labels_only(1));
  try {
    sample_and_search<double>(pts, o, 0, rng);
    FAIL("expected DegreeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeViolation);
  }
}

TEST_CASE("capped coupon statistic") {
  Rng rng(16);
  const std::vector<double> one{1.0};
  CHECK(capped_coupon_statistic(one, 100, rng) == 1);
  const std::vector<double> half{0.5, 0.5};
  CHECK(capped_coupon_statistic(half, 1, rng) == 1);
  const std::vector<double> zero{0.5, 0.5, 0.0};
  CHECK(capped_coupon_statistic(zero, 40, rng) == 40);
  const std::vector<double> bad{0.5, 0.4};
  CHECK_THROWS_AS(capped_coupon_statistic(bad, 10, rng), Error);
  const std::vector<double> neg{1.5, -0.5};
  CHECK_THROWS_AS(capped_coupon_statistic(neg, 10, rng), Error);

  // uniform over 4 categories: expectation 4 H_4 = 25/3
  const std::vector<double> four(4, 0.25);
  double sum = 0.0;
  const int runs = 100000;
  for (int i = 0; i < runs; ++i) sum += static_cast<double>(capped_coupon_statistic(four, 1000000, rng));
  CHECK(sum / runs == doctest::Approx(25.0 / 3.0).epsilon(0.02));
}
