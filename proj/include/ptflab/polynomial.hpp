#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ptflab/errors.hpp"
#include "ptflab/scalar.hpp"

namespace ptflab {

/// Signs of f, f', ..., one entry per derivative order starting at 0.
struct SignPattern {
  std::vector<Sign> signs;

  std::size_t size() const { return signs.size(); }
  Sign operator[](std::size_t order) const { return signs[order]; }
  bool operator==(const SignPattern&) const = default;
  std::string to_string() const;
};

/// Dense univariate polynomial; coeffs[i] multiplies x^i. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
template <Scalar T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// leading * prod (x - r_i). Roots must be strictly increasing.
  static Polynomial from_roots(std::span<const T> roots, Sign leading = Sign::Plus) {
    for (std::size_t i = 1; i < roots.size(); ++i) {
      if (!(roots[i - 1] < roots[i])) {
        throw Error(roots[i - 1] == roots[i] ? ErrorCode::DuplicateRoots : ErrorCode::InvalidArgument,
                    "roots must be distinct and sorted ascending");
      }
    }
    std::vector<T> c{T(to_int(leading))};
    for (const T& r : roots) {
      // multiply by (x - r)
      c.push_back(T(0));
      for (std::size_t i = c.size() - 1; i > 0; --i) {
        T next = c[i - 1] - r * c[i];
        c[i] = std::move(next);
      }
      T low = -r * c[0];
      c[0] = std::move(low);
    }
    return Polynomial(std::move(c));
  }

  const std::vector<T>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& leading() const { return coeffs_.back(); }

  Polynomial derivative(int order = 1) const {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative order");
    if (order > degree()) return {};
    std::vector<T> out(coeffs_.size() - static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < out.size(); ++i) {
      // falling factorial (i+order)!/i!
      T f(1);
      for (int k = 1; k <= order; ++k) f *= T(static_cast<long>(i) + k);
      out[i] = coeffs_[i + static_cast<std::size_t>(order)] * f;
    }
    return Polynomial(std::move(out));
  }

  /// Horner evaluation; exact for Rational.
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      T next = acc * x + *it;
      acc = std::move(next);
    }
    return acc;
  }

  Sign sign_at(const T& x) const { return sign_of((*this)(x)); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using ExactPolynomial = Polynomial<Rational>;
using FloatPolynomial = Polynomial<double>;

template <Scalar T>
Polynomial<T> derivative(const Polynomial<T>& p, int order) {
  return p.derivative(order);
}

template <Scalar T>
Sign eval_sign(const Polynomial<T>& p, const T& x) {
  return p.sign_at(x);
}

/// Signs of p^(0..d)(x). Requires degree(p) <= d.
template <Scalar T>
SignPattern sign_pattern(const Polynomial<T>& p, const T& x, int d) {
  if (p.degree() > d) throw Error(ErrorCode::InvalidArgument, "polynomial degree exceeds pattern length");
  SignPattern out;
  out.signs.reserve(static_cast<std::size_t>(d) + 1);
  Polynomial<T> q = p;
  for (int i = 0; i <= d; ++i) {
    out.signs.push_back(q.sign_at(x));
    q = q.derivative(1);
  }
  return out;
}

/// {"coeffs": [...], "backend": "exact"|"float"}; exact coefficients are
/// "num/den" strings.
template <Scalar T>
nlohmann::json to_json(const Polynomial<T>& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const T& c : p.coeffs()) {
    if constexpr (std::same_as<T, Rational>) {
      coeffs.push_back(rational_to_string(c));
    } else {
      coeffs.push_back(c);
    }
  }
  return {{"coeffs", coeffs}, {"backend", std::string(to_string(backend_of<T>()))}};
}

template <Scalar T>
Polynomial<T> polynomial_from_json(const nlohmann::json& j) {
  if (parse_backend(j.at("backend").get<std::string>()) != backend_of<T>()) {
    throw Error(ErrorCode::InvalidArgument, "polynomial backend mismatch");
  }
  std::vector<T> c;
  for (const auto& v : j.at("coeffs")) {
    if constexpr (std::same_as<T, Rational>) {
      c.push_back(rational_from_string(v.get<std::string>()));
    } else {
      c.push_back(v.get<double>());
    }
  }
  return Polynomial<T>(std::move(c));
}

}  // namespace ptflab
