#pragma once

// Numeric backends. Rational is GMP's canonicalized mpq_class (lowest terms,
// positive denominator); double is the fast float backend. Code is templated
// on one of the two, so the backends never mix implicitly.

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>

#include "ptflab/errors.hpp"

namespace ptflab {

using Rational = mpq_class;

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

enum class Backend { Exact, Float };

template <Scalar T>
constexpr Backend backend_of() {
  return std::same_as<T, Rational> ? Backend::Exact : Backend::Float;
}

std::string_view to_string(Backend b) noexcept;
Backend parse_backend(std::string_view s);

/// Sign of a real value with the sign(0) = +1 convention.
enum class Sign : signed char { Minus = -1, Plus = 1 };

inline Sign sign_of(double v) { return v < 0.0 ? Sign::Minus : Sign::Plus; }
inline Sign sign_of(const Rational& v) { return sgn(v) < 0 ? Sign::Minus : Sign::Plus; }

inline Sign operator-(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline int to_int(Sign s) { return static_cast<int>(s); }
inline char to_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// num/den in lowest terms. mpq_class(num, den) alone does not canonicalize.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact conversion; every finite double is a dyadic rational.
template <Scalar T>
T from_double(double v) {
  if constexpr (std::same_as<T, double>) {
    return v;
  } else {
    return Rational(v);
  }
}

template <Scalar T>
double to_double(const T& v) {
  if constexpr (std::same_as<T, double>) {
    return v;
  } else {
    return v.get_d();
  }
}

/// "num/den" for rationals (always with a denominator).
std::string rational_to_string(const Rational& q);
/// Accepts "num/den" or an integer; result is canonicalized.
Rational rational_from_string(std::string_view s);

}  // namespace ptflab
