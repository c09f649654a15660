#include "ptflab/scalar.hpp"

#include "ptflab/errors.hpp"
#include "ptflab/polynomial.hpp"

namespace ptflab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateRoots: return "DuplicateRoots";
    case ErrorCode::DisallowedOrder: return "DisallowedOrder";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::DegreeViolation: return "DegreeViolation";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::ComputationTooLarge: return "ComputationTooLarge";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::EpsilonSearchFailed: return "EpsilonSearchFailed";
    case ErrorCode::ToleranceBreach: return "ToleranceBreach";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

std::string_view to_string(Backend b) noexcept { return b == Backend::Exact ? "exact" : "float"; }

Backend parse_backend(std::string_view s) {
  if (s == "exact") return Backend::Exact;
  if (s == "float") return Backend::Float;
  throw Error(ErrorCode::InvalidArgument, "unknown backend '" + std::string(s) + "'");
}

std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(std::string_view s) {
  Rational q;
  if (q.set_str(std::string(s), 10) != 0) {
    throw Error(ErrorCode::InvalidArgument, "malformed rational '" + std::string(s) + "'");
  }
  if (sgn(q.get_den()) == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  q.canonicalize();
  return q;
}

std::string SignPattern::to_string() const {
  std::string s;
  for (Sign v : signs) s.push_back(to_char(v));
  return s;
}

}  // namespace ptflab
