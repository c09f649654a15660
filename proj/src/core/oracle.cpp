#include "ptflab/oracle.hpp"

#include <string>

namespace ptflab {

QuerySet::QuerySet(int d, std::set<int> allowed_orders, bool leading_public)
    : d_(d), allowed_(std::move(allowed_orders)), leading_public_(leading_public) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree bound must be >= 1");
  if (!allowed_.contains(0)) throw Error(ErrorCode::InvalidArgument, "label queries (order 0) must be allowed");
  for (int o : allowed_) {
    if (o < 0 || o >= d) throw Error(ErrorCode::InvalidArgument, "query order out of range: " + std::to_string(o));
  }
}

QuerySet QuerySet::full(int d) {
  std::set<int> s;
  for (int i = 0; i < d; ++i) s.insert(i);
  return QuerySet(d, std::move(s));
}

QuerySet QuerySet::labels_only(int d) { return QuerySet(d, {0}); }

QuerySet QuerySet::without(int d, int missing) {
  std::set<int> s;
  for (int i = 0; i < d; ++i)
    if (i != missing) s.insert(i);
  return QuerySet(d, std::move(s));
}

bool QuerySet::is_full() const { return static_cast<int>(allowed_.size()) == d_; }

nlohmann::json QueryLedger::to_json() const {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [order, n] : per_order) per[std::to_string(order)] = n;
  return {{"total", total}, {"rounds", rounds}, {"per_order", per}};
}

}  // namespace ptflab
