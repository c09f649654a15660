#include "ptflab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <variant>

#include "ptflab/harness.hpp"
#include "ptflab/iterative.hpp"
#include "ptflab/oracle.hpp"

using namespace ptflab;

struct ptf_experiment {
  ExperimentConfig config;
  std::optional<ExperimentResult> result;
};

struct ptf_report {
  Report report;
};

struct ptf_polynomial {
  std::variant<ExactPolynomial, FloatPolynomial> poly;
};

struct ptf_oracle {
  std::variant<Oracle<Rational>, Oracle<double>> oracle;
};

namespace {

thread_local std::string g_last_error;

int fail(ErrorCode code, std::string msg) {
  g_last_error = std::move(msg);
  return static_cast<int>(code);
}

template <typename F>
int guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PTF_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(ErrorCode::InvalidArgument, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::Internal, "out of memory");
  } catch (const std::exception& e) {
    return fail(ErrorCode::Internal, e.what());
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// "p/q" or an integer goes through GMP; anything else is read as a double.
Rational parse_rational(const char* s) {
  require(s != nullptr, "null number");
  const std::string_view v(s);
  if (v.find_first_of(".eEnN") == std::string_view::npos) return rational_from_string(v);
  char* end = nullptr;
  const double d = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(d)) {
    throw Error(ErrorCode::InvalidArgument, "malformed number '" + std::string(v) + "'");
  }
  return Rational(d);
}

template <Scalar T>
T parse_scalar(const char* s) {
  if constexpr (std::is_same_v<T, double>) {
    return parse_rational(s).get_d();
  } else {
    return parse_rational(s);
  }
}

}  // namespace

extern "C" {

const char* ptf_version(void) { return "1.0.0"; }

const char* ptf_last_error(void) { return g_last_error.c_str(); }

const char* ptf_status_name(int status) {
  if (status < 0 || status > static_cast<int>(ErrorCode::Internal)) return "Unknown";
  return to_string(static_cast<ErrorCode>(status)).data();
}

void ptf_string_free(char* s) { std::free(s); }

int ptf_experiment_create(const char* config_json, ptf_experiment** out) {
  return guard([&] {
    require(config_json && out, "null argument");
    *out = nullptr;
    auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(config_json));
    *out = new ptf_experiment{std::move(cfg), std::nullopt};
  });
}

void ptf_experiment_destroy(ptf_experiment* e) { delete e; }

int ptf_experiment_run(ptf_experiment* e, unsigned threads) {
  return guard([&] {
    require(e != nullptr, "null experiment");
    e->result = ptflab::run(e->config, threads);
  });
}

namespace {
const ExperimentResult& result_of(const ptf_experiment* e) {
  require(e != nullptr, "null experiment");
  require(e->result.has_value(), "experiment has not been run");
  return *e->result;
}
}  // namespace

int ptf_experiment_write(const ptf_experiment* e) {
  return guard([&] { write_outputs(result_of(e)); });
}

int ptf_experiment_passed(const ptf_experiment* e, int* passed) {
  return guard([&] {
    require(passed != nullptr, "null out");
    *passed = result_of(e).passed() ? 1 : 0;
  });
}

int ptf_experiment_aggregate_json(const ptf_experiment* e, char** out) {
  return guard([&] {
    require(out != nullptr, "null out");
    *out = dup(result_of(e).aggregate_json().dump(2));
  });
}

int ptf_experiment_csv(const ptf_experiment* e, char** out) {
  return guard([&] {
    require(out != nullptr, "null out");
    *out = dup(result_of(e).csv());
  });
}

int ptf_verify_lower_bounds(const char* grid_json, ptf_report** out) {
  return guard([&] {
    require(out != nullptr, "null out");
    *out = nullptr;
    LowerBoundGrid grid;
    if (grid_json && *grid_json) grid = LowerBoundGrid::from_json(nlohmann::json::parse(grid_json));
    *out = new ptf_report{verify_lower_bounds(grid)};
  });
}

int ptf_compare_entropy(const char* const* aggregate_paths, size_t count, ptf_report** out) {
  return guard([&] {
    require(out != nullptr && (aggregate_paths || count == 0), "null argument");
    *out = nullptr;
    std::vector<std::string> paths;
    for (size_t i = 0; i < count; ++i) {
      require(aggregate_paths[i] != nullptr, "null path");
      paths.emplace_back(aggregate_paths[i]);
    }
    *out = new ptf_report{compare_entropy_files(paths)};
  });
}

void ptf_report_destroy(ptf_report* r) { delete r; }

int ptf_report_passed(const ptf_report* r, int* passed) {
  return guard([&] {
    require(r && passed, "null argument");
    *passed = r->report.passed() ? 1 : 0;
  });
}

int ptf_report_text(const ptf_report* r, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    *out = dup(r->report.text());
  });
}

int ptf_report_json(const ptf_report* r, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    *out = dup(r->report.to_json().dump(2));
  });
}

int ptf_iterative_query_bound(int d, uint64_t n, uint64_t* out) {
  return guard([&] {
    require(out != nullptr, "null out");
    require(d >= 1 && n >= 1, "need d >= 1 and n >= 1");
    *out = iterative_query_bound(d, n);
  });
}

int ptf_print_bounds(const int* d, size_t nd, const uint64_t* n, size_t nn, char** out) {
  return guard([&] {
    require(d && n && out, "null argument");
    std::vector<int> dv(d, d + nd);
    std::vector<std::uint64_t> nv(n, n + nn);
    for (int v : dv) require(v >= 1, "d must be >= 1");
    for (auto v : nv) require(v >= 1, "n must be >= 1");
    *out = dup(print_bounds(dv, nv));
  });
}

int ptf_polynomial_create(ptf_backend backend, const char* const* coeffs, size_t count, ptf_polynomial** out) {
  return guard([&] {
    require(out != nullptr && (coeffs || count == 0), "null argument");
    *out = nullptr;
    if (backend == PTF_BACKEND_EXACT) {
      std::vector<Rational> c;
      for (size_t i = 0; i < count; ++i) c.push_back(parse_scalar<Rational>(coeffs[i]));
      *out = new ptf_polynomial{ExactPolynomial(std::move(c))};
    } else if (backend == PTF_BACKEND_FLOAT) {
      std::vector<double> c;
      for (size_t i = 0; i < count; ++i) c.push_back(parse_scalar<double>(coeffs[i]));
      *out = new ptf_polynomial{FloatPolynomial(std::move(c))};
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown backend");
    }
  });
}

void ptf_polynomial_destroy(ptf_polynomial* p) { delete p; }

int ptf_polynomial_degree(const ptf_polynomial* p, int* out) {
  return guard([&] {
    require(p && out, "null argument");
    *out = std::visit([](const auto& q) { return q.degree(); }, p->poly);
  });
}

int ptf_polynomial_sign(const ptf_polynomial* p, const char* x, int order, int* out) {
  return guard([&] {
    require(p && out, "null argument");
    require(order >= 0, "order must be >= 0");
    *out = std::visit(
        [&](const auto& q) {
          using T = std::decay_t<decltype(q.coeffs())>::value_type;
          return to_int(q.derivative(order).sign_at(parse_scalar<T>(x)));
        },
        p->poly);
  });
}

int ptf_polynomial_sign_pattern(const ptf_polynomial* p, const char* x, int d, int* out) {
  return guard([&] {
    require(p && out, "null argument");
    require(d >= 0, "d must be >= 0");
    const SignPattern pat = std::visit(
        [&](const auto& q) {
          using T = std::decay_t<decltype(q.coeffs())>::value_type;
          return sign_pattern(q, parse_scalar<T>(x), d);
        },
        p->poly);
    for (size_t i = 0; i < pat.size(); ++i) out[i] = to_int(pat[i]);
  });
}

int ptf_oracle_create(const ptf_polynomial* hidden, int d, const int* orders, size_t count, ptf_oracle** out) {
  return guard([&] {
    require(hidden && out && (orders || count == 0), "null argument");
    *out = nullptr;
    QuerySet qset(d, std::set<int>(orders, orders + count));
    if (const auto* e = std::get_if<ExactPolynomial>(&hidden->poly)) {
      *out = new ptf_oracle{Oracle<Rational>(*e, qset)};
    } else {
      *out = new ptf_oracle{Oracle<double>(std::get<FloatPolynomial>(hidden->poly), qset)};
    }
  });
}

void ptf_oracle_destroy(ptf_oracle* o) { delete o; }

int ptf_oracle_query(ptf_oracle* o, const char* x, int order, int* sign) {
  return guard([&] {
    require(o && sign, "null argument");
    *sign = std::visit(
        [&](auto& orc) {
          using T = std::decay_t<decltype(orc)>;
          if constexpr (std::is_same_v<T, Oracle<Rational>>) {
            return to_int(orc.query(parse_scalar<Rational>(x), order));
          } else {
            return to_int(orc.query(parse_scalar<double>(x), order));
          }
        },
        o->oracle);
  });
}

int ptf_oracle_query_batch(ptf_oracle* o, const char* const* xs, const int* orders, size_t count, int* signs) {
  return guard([&] {
    require(o && ((xs && orders && signs) || count == 0), "null argument");
    std::visit(
        [&](auto& orc) {
          using T = std::conditional_t<std::is_same_v<std::decay_t<decltype(orc)>, Oracle<Rational>>, Rational, double>;
          std::vector<QueryRequest<T>> req;
          req.reserve(count);
          for (size_t i = 0; i < count; ++i) req.push_back({parse_scalar<T>(xs[i]), orders[i]});
          const auto out = orc.query_batch(req);
          for (size_t i = 0; i < out.size(); ++i) signs[i] = to_int(out[i]);
        },
        o->oracle);
  });
}

int ptf_oracle_ledger_json(const ptf_oracle* o, char** out) {
  return guard([&] {
    require(o && out, "null argument");
    *out = dup(std::visit([](const auto& orc) { return orc.ledger().to_json().dump(); }, o->oracle));
  });
}

}  // extern "C"
