#include "doctest.h"
#include "ptflab/polynomial.hpp"
#include "ptflab/rng.hpp"

using namespace ptflab;

namespace {
ExactPolynomial ex(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return ExactPolynomial(v);
}
Rational q(const char* s) { return rational_from_string(s); }
}  // namespace

TEST_CASE("from_roots expands the product") {
  const std::vector<Rational> r12{1, 2};
  CHECK(ExactPolynomial::from_roots(r12) == ex({2, -3, 1}));
  const std::vector<Rational> r0{0};
  CHECK(ExactPolynomial::from_roots(r0) == ex({0, 1}));

  const std::vector<Rational> r3{q("1/4"), q("1/2"), q("3/4")};
  const auto p = ExactPolynomial::from_roots(r3);
  REQUIRE(p.degree() == 3);
  CHECK(p.coeffs()[0] == q("-3/32"));
  CHECK(p.coeffs()[1] == q("11/16"));
  CHECK(p.coeffs()[2] == q("-3/2"));
  CHECK(p.coeffs()[3] == 1);

  const std::vector<double> f3{0.25, 0.5, 0.75};
  const auto pf = FloatPolynomial::from_roots(f3);
  CHECK(pf.coeffs()[0] == -0.09375);
  CHECK(pf.coeffs()[1] == 0.6875);
  CHECK(pf.coeffs()[2] == -1.5);

  const auto neg = ExactPolynomial::from_roots(r12, Sign::Minus);
  CHECK(neg == ex({-2, 3, -1}));
}

TEST_CASE("from_roots rejects duplicate or unsorted roots") {
  const std::vector<Rational> dup{1, 1};
  const std::vector<Rational> unsorted{2, 1};
  CHECK_THROWS_AS(ExactPolynomial::from_roots(dup), Error);
  try {
    ExactPolynomial::from_roots(dup);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateRoots);
  }
  try {
    ExactPolynomial::from_roots(unsorted);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("derivative") {
  CHECK(derivative(ex({0, 0, 0, 1}), 2) == ex({0, 6}));
  CHECK(derivative(ex({2, -3, 1}), 1) == ex({-3, 2}));
  CHECK(derivative(ex({2, -3, 1}), 5).is_zero());
  CHECK(derivative(ex({2, -3, 1}), 5).degree() == -1);
  CHECK(derivative(ex({7}), 0) == ex({7}));
  CHECK_THROWS_AS(derivative(ex({1}), -1), Error);
}

TEST_CASE("eval_sign and the sign(0) = +1 convention") {
  const auto p = ex({-1, 0, 1});
  CHECK(eval_sign(p, Rational(0)) == Sign::Minus);
  CHECK(eval_sign(p, Rational(1)) == Sign::Plus);
  CHECK(p(Rational(1)) == 0);
  const auto h = ex({0, 7776, -648, 1});
  CHECK(h(Rational(215)) == -18343585);
  CHECK(eval_sign(h, Rational(215)) == Sign::Minus);
  CHECK(ExactPolynomial().sign_at(Rational(3)) == Sign::Plus);
  CHECK(sign_of(-0.0) == Sign::Plus);
}

TEST_CASE("sign_pattern") {
  const auto x2 = ex({0, 0, 1});
  CHECK(sign_pattern(x2, Rational(1), 2).to_string() == "+++");
  CHECK(sign_pattern(x2, Rational(-1), 2).to_string() == "+-+");
  CHECK(sign_pattern(x2, Rational(0), 2).to_string() == "+++");
  // padded beyond the degree: constant zero derivatives read as +
  CHECK(sign_pattern(x2, Rational(-1), 4).to_string() == "+-+++");
  CHECK_THROWS_AS(sign_pattern(x2, Rational(0), 1), Error);
}

TEST_CASE("last pattern entry is the sign of the constant d-th derivative") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 6);
    std::vector<Rational> c;
    for (int i = 0; i <= d; ++i) c.emplace_back(static_cast<long>(rng() % 21) - 10);
    if (c.back() == 0) c.back() = 1;
    const ExactPolynomial p(c);
    const Sign lead = sign_of(p.leading());
    for (int k = 0; k < 5; ++k) {
      const Rational x = make_rational(static_cast<long>(rng() % 41) - 20, 7);
      CHECK(sign_pattern(p, x, d)[static_cast<std::size_t>(d)] == lead);
    }
  }
}

TEST_CASE("exact and float backends agree on well-separated values") {
  Rng rng(5);
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int deg = static_cast<int>(rng() % 7);
    std::vector<Rational> ce;
    std::vector<double> cf;
    for (int i = 0; i <= deg; ++i) {
      const double v = static_cast<double>(static_cast<long>(rng() % 2001) - 1000) / 64.0;
      ce.emplace_back(v);
      cf.push_back(v);
    }
    const ExactPolynomial pe(ce);
    const FloatPolynomial pf(cf);
    for (int k = 0; k < 10; ++k) {
      const double x = uniform01(rng) * 4.0 - 2.0;
      const Rational xe(x);
      const Rational exact = pe(xe);
      // float Horner error is far below this margin for these magnitudes
      if (abs(exact) < Rational(1, 1000)) continue;
      ++compared;
      CHECK(pe.sign_at(xe) == pf.sign_at(x));
      CHECK(std::abs(exact.get_d() - pf(x)) < 1e-9 * (1.0 + std::abs(exact.get_d())));
    }
  }
  CHECK(compared > 4000);
}

TEST_CASE("derivative is linear and obeys the product rule") {
  Rng rng(7);
  auto random_poly = [&](int deg) {
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(make_rational(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5)));
    return ExactPolynomial(c);
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_poly(static_cast<int>(rng() % 6));
    const auto b = random_poly(static_cast<int>(rng() % 6));
    CHECK(derivative(a + b, 1) == derivative(a, 1) + derivative(b, 1));
    CHECK(derivative(a * b, 1) == derivative(a, 1) * b + a * derivative(b, 1));
    CHECK(derivative(derivative(a, 1), 2) == derivative(a, 3));
  }
}

TEST_CASE("central differences approximate the float derivative") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> c;
    const int deg = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i <= deg; ++i) c.push_back(uniform01(rng) * 2.0 - 1.0);
    const FloatPolynomial p(c);
    const auto dp = p.derivative(1);
    const double x = uniform01(rng);
    const double h = 1e-5;
    CHECK(dp(x) == doctest::Approx((p(x + h) - p(x - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("sign flips exactly once between adjacent simple roots") {
  const std::vector<Rational> roots{q("1/5"), q("1/3"), q("1/2"), q("4/5")};
  const auto p = ExactPolynomial::from_roots(roots);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const Rational mid = (roots[i] + roots[i + 1]) / 2;
    const Rational next_mid = i + 2 < roots.size() ? Rational((roots[i + 1] + roots[i + 2]) / 2) : Rational(1);
    CHECK(p.sign_at(mid) == -p.sign_at(next_mid));
  }
}

TEST_CASE("json round trip") {
  const std::vector<Rational> sorted{q("2/7"), q("1/3")};
  const auto p = ExactPolynomial::from_roots(sorted, Sign::Minus);
  const auto j = to_json(p);
  CHECK(j.at("backend") == "exact");
  CHECK(polynomial_from_json<Rational>(j) == p);
  CHECK_THROWS_AS(polynomial_from_json<double>(j), Error);
  const FloatPolynomial f(std::vector<double>{0.5, -1.25});
  CHECK(polynomial_from_json<double>(to_json(f)) == f);
}

TEST_CASE("rational strings") {
  CHECK(make_rational(-14, 7) == 2 * Rational(-1));
  CHECK(rational_to_string(make_rational(6, -4)) == "-3/2");
  CHECK_THROWS_AS(make_rational(1, 0), Error);
  CHECK(rational_to_string(q("4/6")) == "2/3");
  CHECK(rational_to_string(Rational(5)) == "5/1");
  CHECK(q("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(q("1/0"), Error);
  CHECK_THROWS_AS(q("abc"), Error);
}
