#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "json.hpp"
#include "ptflab/polynomial.hpp"

namespace ptflab {

/// Derivative orders a learner may ask about. Order 0 is the label query;
/// order d (a constant) is never queried, but can be made public.
class QuerySet {
 public:
  QuerySet(int d, std::set<int> allowed_orders, bool leading_public = false);

  /// Orders 0..d-1.
  static QuerySet full(int d);
  static QuerySet labels_only(int d);
  /// Orders 0..d-1 except `missing`.
  static QuerySet without(int d, int missing);

  int d() const { return d_; }
  bool allows(int order) const { return allowed_.contains(order); }
  const std::set<int>& orders() const { return allowed_; }
  bool leading_public() const { return leading_public_; }
  /// True when every order 0..d-1 is allowed.
  bool is_full() const;

 private:
  int d_;
  std::set<int> allowed_;
  bool leading_public_;
};

struct QueryLedger {
  std::uint64_t total = 0;
  std::uint64_t rounds = 0;
  std::map<int, std::uint64_t> per_order;

  std::uint64_t count(int order) const {
    auto it = per_order.find(order);
    return it == per_order.end() ? 0 : it->second;
  }
  nlohmann::json to_json() const;
};

template <Scalar T>
struct QueryRequest {
  T x;
  int order = 0;
};

/// Hidden classifier behind sign queries. The oracle answers for any point;
/// restricting queries to the learner's sample is the learner's business.
/// Nothing is cached: a repeated query is counted again.
template <Scalar T>
class Oracle {
 public:
  Oracle(Polynomial<T> hidden, QuerySet qset) : qset_(std::move(qset)) {
    if (hidden.degree() > qset_.d()) throw Error(ErrorCode::InvalidArgument, "hidden degree exceeds d");
    derivs_.push_back(std::move(hidden));
    for (int i = 1; i <= qset_.d(); ++i) derivs_.push_back(derivs_.back().derivative(1));
  }

  /// One query, one round.
  Sign query(const T& x, int order) {
    check(order);
    Sign s = derivs_[static_cast<std::size_t>(order)].sign_at(x);
    ++ledger_.total;
    ++ledger_.per_order[order];
    ++ledger_.rounds;
    return s;
  }

  /// All requests in a single round. Rejected as a whole if any order is
  /// disallowed; an empty batch costs nothing.
  std::vector<Sign> query_batch(std::span<const QueryRequest<T>> requests) {
    for (const auto& r : requests) check(r.order);
    std::vector<Sign> out;
    out.reserve(requests.size());
    for (const auto& r : requests) {
      out.push_back(derivs_[static_cast<std::size_t>(r.order)].sign_at(r.x));
      ++ledger_.per_order[r.order];
    }
    ledger_.total += requests.size();
    if (!requests.empty()) ++ledger_.rounds;
    return out;
  }

  /// Orders 0..d-1 at x in one round (d queries). When the leading sign is
  /// public the constant order-d sign is appended for free.
  SignPattern full_pattern_query(const T& x) {
    if (!qset_.is_full()) throw Error(ErrorCode::DisallowedOrder, "full pattern needs orders 0..d-1");
    std::vector<QueryRequest<T>> req;
    req.reserve(static_cast<std::size_t>(qset_.d()));
    for (int i = 0; i < qset_.d(); ++i) req.push_back({x, i});
    SignPattern p{query_batch(req)};
    if (qset_.leading_public()) p.signs.push_back(sign_of(derivs_.back()(x)));
    return p;
  }

  const QueryLedger& ledger() const { return ledger_; }
  const QuerySet& query_set() const { return qset_; }
  int d() const { return qset_.d(); }

 private:
  void check(int order) const {
    if (!qset_.allows(order)) {
      throw Error(ErrorCode::DisallowedOrder, "order " + std::to_string(order) + " is not in the query set");
    }
  }

  QuerySet qset_;
  std::vector<Polynomial<T>> derivs_;
  QueryLedger ledger_;
};

}  // namespace ptflab
