#include <cstdlib>
#include <string>

#include "doctest.h"
#include "ptflab.h"

namespace {
std::string take(char* s) {
  std::string out = s ? s : "";
  ptf_string_free(s);
  return out;
}
}  // namespace

TEST_CASE("polynomial handles") {
  const char* coeffs[] = {"2", "-3", "1"};
  ptf_polynomial* p = nullptr;
  REQUIRE(ptf_polynomial_create(PTF_BACKEND_EXACT, coeffs, 3, &p) == PTF_OK);
  int deg = -5, s = 0;
  CHECK(ptf_polynomial_degree(p, &deg) == PTF_OK);
  CHECK(deg == 2);
  CHECK(ptf_polynomial_sign(p, "3/2", 0, &s) == PTF_OK);
  CHECK(s == -1);
  CHECK(ptf_polynomial_sign(p, "1.5", 1, &s) == PTF_OK);
  CHECK(s == 1);
  int pat[3] = {0, 0, 0};
  CHECK(ptf_polynomial_sign_pattern(p, "0", 2, pat) == PTF_OK);
  CHECK(pat[0] == 1);
  CHECK(pat[1] == -1);
  CHECK(pat[2] == 1);
  CHECK(ptf_polynomial_sign(p, "x", 0, &s) == PTF_E_INVALID_ARGUMENT);
  CHECK(std::string(ptf_last_error()).find("malformed") != std::string::npos);
  CHECK(ptf_polynomial_sign_pattern(p, "0", 1, pat) == PTF_E_INVALID_ARGUMENT);
  ptf_polynomial_destroy(p);

  ptf_polynomial* f = nullptr;
  const char* fc[] = {"-0.25", "0", "1"};
  REQUIRE(ptf_polynomial_create(PTF_BACKEND_FLOAT, fc, 3, &f) == PTF_OK);
  CHECK(ptf_polynomial_sign(f, "0.25", 0, &s) == PTF_OK);
  CHECK(s == -1);
  ptf_polynomial_destroy(f);
  CHECK(ptf_polynomial_create(PTF_BACKEND_EXACT, nullptr, 1, &p) == PTF_E_INVALID_ARGUMENT);
}

TEST_CASE("oracle handles") {
  const char* coeffs[] = {"0", "0", "1"};
  ptf_polynomial* p = nullptr;
  REQUIRE(ptf_polynomial_create(PTF_BACKEND_EXACT, coeffs, 3, &p) == PTF_OK);
  const int labels[] = {0};
  ptf_oracle* o = nullptr;
  REQUIRE(ptf_oracle_create(p, 2, labels, 1, &o) == PTF_OK);
  ptf_polynomial_destroy(p);  // the oracle keeps its own copy

  int s = 0;
  CHECK(ptf_oracle_query(o, "-1", 0, &s) == PTF_OK);
  CHECK(s == 1);
  CHECK(ptf_oracle_query(o, "-1", 1, &s) == PTF_E_DISALLOWED_ORDER);
  CHECK(std::string(ptf_status_name(PTF_E_DISALLOWED_ORDER)) == "DisallowedOrder");

  const char* xs[] = {"1", "2", "-3"};
  const int orders[] = {0, 0, 0};
  int signs[3] = {0, 0, 0};
  CHECK(ptf_oracle_query_batch(o, xs, orders, 3, signs) == PTF_OK);
  CHECK(signs[2] == 1);
  const int bad[] = {0, 1, 0};
  CHECK(ptf_oracle_query_batch(o, xs, bad, 3, signs) == PTF_E_DISALLOWED_ORDER);

  char* ledger = nullptr;
  REQUIRE(ptf_oracle_ledger_json(o, &ledger) == PTF_OK);
  const auto l = take(ledger);
  CHECK(l.find("\"total\":4") != std::string::npos);
  CHECK(l.find("\"rounds\":2") != std::string::npos);
  ptf_oracle_destroy(o);

  const int no_label[] = {1};
  REQUIRE(ptf_polynomial_create(PTF_BACKEND_EXACT, coeffs, 3, &p) == PTF_OK);
  CHECK(ptf_oracle_create(p, 2, no_label, 1, &o) == PTF_E_INVALID_ARGUMENT);
  CHECK(o == nullptr);
  ptf_polynomial_destroy(p);
}

TEST_CASE("experiments") {
  ptf_experiment* e = nullptr;
  CHECK(ptf_experiment_create("{not json", &e) == PTF_E_INVALID_ARGUMENT);
  CHECK(ptf_experiment_create(R"({"learner":"iterative","d":[0],"n":[10]})", &e) == PTF_E_INVALID_ARGUMENT);
  REQUIRE(ptf_experiment_create(R"({"learner":"iterative","d":[2],"n":[300],"trials":5,"seed":9})", &e) == PTF_OK);
  int passed = 0;
  CHECK(ptf_experiment_passed(e, &passed) == PTF_E_INVALID_ARGUMENT);  // not run yet
  REQUIRE(ptf_experiment_run(e, 1) == PTF_OK);
  CHECK(ptf_experiment_passed(e, &passed) == PTF_OK);
  CHECK(passed == 1);
  char* csv = nullptr;
  REQUIRE(ptf_experiment_csv(e, &csv) == PTF_OK);
  const auto c = take(csv);
  CHECK(c.rfind("trial,seed_stream,", 0) == 0);
  char* agg = nullptr;
  REQUIRE(ptf_experiment_aggregate_json(e, &agg) == PTF_OK);
  CHECK(take(agg).find("\"cells\"") != std::string::npos);
  CHECK(ptf_experiment_write(e) == PTF_OK);  // no out path: nothing written
  ptf_experiment_destroy(e);
}

TEST_CASE("reports and bounds") {
  ptf_report* r = nullptr;
  REQUIRE(ptf_verify_lower_bounds(R"({"interval_n":[5],"missing_d":[3],"missing_n":[2],"linear_d":[2],"multivariate_n":[2]})", &r) == PTF_OK);
  int passed = 0;
  CHECK(ptf_report_passed(r, &passed) == PTF_OK);
  CHECK(passed == 1);
  char* text = nullptr;
  REQUIRE(ptf_report_text(r, &text) == PTF_OK);
  CHECK(take(text).find("PASS interval_n5") != std::string::npos);
  char* js = nullptr;
  REQUIRE(ptf_report_json(r, &js) == PTF_OK);
  CHECK(take(js).find("\"passed\": true") != std::string::npos);
  ptf_report_destroy(r);

  const char* missing[] = {"/nonexistent/agg.json"};
  CHECK(ptf_compare_entropy(missing, 1, &r) == PTF_E_IO);

  std::uint64_t b = 0;
  CHECK(ptf_iterative_query_bound(3, 4096, &b) == PTF_OK);
  CHECK(b == 98);
  CHECK(ptf_iterative_query_bound(0, 4096, &b) == PTF_E_INVALID_ARGUMENT);
  const int ds[] = {1, 2};
  const std::uint64_t ns[] = {1024};
  char* table = nullptr;
  REQUIRE(ptf_print_bounds(ds, 2, ns, 1, &table) == PTF_OK);
  CHECK(take(table).find("2\t1024\t10\t36") != std::string::npos);
  CHECK(std::string(ptf_version()).size() > 0);
}
