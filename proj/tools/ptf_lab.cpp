// ptf_lab: command-line front end over the ptflab C API.
// Exit codes: 0 all assertions passed, 1 an assertion failed, 2 usage or
// runtime error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptflab.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int report_error(int status, const char* what) {
  std::cerr << "ptf_lab: " << what << ": " << ptf_status_name(status) << ": " << ptf_last_error() << '\n';
  return kExitError;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ptf_string_free(s);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
std::vector<T> split_numbers(const std::string& s, const char* flag) {
  std::vector<T> out;
  for (const auto& item : split(s)) {
    std::size_t used = 0;
    T v{};
    try {
      if constexpr (std::is_same_v<T, int>) {
        v = std::stoi(item, &used);
      } else {
        v = std::stoull(item, &used);
      }
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item[0] == '-') throw CLI::ValidationError(flag, "bad value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

int print_report(ptf_report* rep, const std::string& out_path) {
  char* text = nullptr;
  int passed = 0;
  int st = ptf_report_text(rep, &text);
  if (st == PTF_OK) st = ptf_report_passed(rep, &passed);
  if (st != PTF_OK) {
    ptf_report_destroy(rep);
    return report_error(st, "report");
  }
  std::cout << take(text);
  if (!out_path.empty()) {
    char* js = nullptr;
    st = ptf_report_json(rep, &js);
    std::ofstream f(out_path);
    if (st != PTF_OK || !f) {
      ptf_report_destroy(rep);
      std::cerr << "ptf_lab: cannot write " << out_path << '\n';
      return kExitError;
    }
    f << take(js) << '\n';
  }
  ptf_report_destroy(rep);
  std::cout << (passed ? "ALL PASS" : "FAILURES") << '\n';
  return passed ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active-learning experiments for univariate polynomial threshold functions"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a learner over a (d, n, alpha) sweep");
  std::string learner = "iterative", d_list = "1", n_list = "256", alpha = "klmz", model = "uniform";
  std::string dir_alpha = "1", backend = "float", out;
  std::uint64_t trials = 1, seed = 1;
  bool random_leading = false;
  run->add_option("--learner", learner, "iterative | batch | sample_search")
      ->check(CLI::IsMember({"iterative", "batch", "sample_search"}));
  run->add_option("--d", d_list, "Degree bound(s), comma list");
  run->add_option("--n", n_list, "Sample size(s), comma list");
  run->add_option("--alpha", alpha, "Batch alpha(s), comma list; 'klmz' = 2/log2 n");
  run->add_option("--model", model, "Root model")->check(CLI::IsMember({"uniform", "dirichlet"}));
  run->add_option("--dirichlet-alpha", dir_alpha, "Dirichlet alpha(s), comma list; 'log2sq' = ceil(log2(n)^2)");
  run->add_option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--backend", backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  run->add_option("--out", out, "CSV path; the aggregate goes to <out>.json");
  run->add_flag("--random-leading", random_leading, "Random sign of the leading coefficient");

  // verify-lower-bounds
  auto* vlb = app.add_subcommand("verify-lower-bounds", "Build and verify non-inferability witnesses");
  std::string grid_path, fixtures_dir, vlb_out;
  vlb->add_option("--grid", grid_path, "JSON grid file (defaults to the built-in grid)")->check(CLI::ExistingFile);
  vlb->add_option("--fixtures", fixtures_dir, "Directory to write witness JSON into");
  vlb->add_option("--out", vlb_out, "Report JSON path");

  // compare-entropy
  auto* ce = app.add_subcommand("compare-entropy", "Check sample_search aggregates against entropy floors");
  std::vector<std::string> agg_paths;
  std::string ce_out;
  ce->add_option("aggregates", agg_paths, "Aggregate JSON files written by run")->required()->check(CLI::ExistingFile);
  ce->add_option("--out", ce_out, "Report JSON path");

  // print-bounds
  auto* pb = app.add_subcommand("print-bounds", "Tabulate the iterative learner's query bound");
  std::string pb_d = "1,2,3,4,5,6", pb_n = "256,4096,65536";
  pb->add_option("--d", pb_d, "Degree(s), comma list");
  pb->add_option("--n", pb_n, "Sample size(s), comma list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*run) {
      const auto ds = split_numbers<int>(d_list, "--d");
      const auto ns = split_numbers<std::uint64_t>(n_list, "--n");
      nlohmann::json cfg = {{"learner", learner}, {"d", ds},         {"n", ns},
                            {"alpha", split(alpha)}, {"model", model}, {"dirichlet_alpha", split(dir_alpha)},
                            {"trials", trials},  {"seed", seed},     {"backend", backend},
                            {"random_leading", random_leading},      {"out", out}};
      ptf_experiment* exp = nullptr;
      int st = ptf_experiment_create(cfg.dump().c_str(), &exp);
      if (st != PTF_OK) return report_error(st, "config");
      st = ptf_experiment_run(exp, 0);
      char* agg = nullptr;
      int passed = 0;
      if (st == PTF_OK) st = ptf_experiment_write(exp);
      if (st == PTF_OK) st = ptf_experiment_aggregate_json(exp, &agg);
      if (st == PTF_OK) st = ptf_experiment_passed(exp, &passed);
      ptf_experiment_destroy(exp);
      if (st != PTF_OK) return report_error(st, "run");

      const auto j = nlohmann::json::parse(take(agg));
      std::printf("%-4s %-8s %-10s %-7s %-7s %-12s %-10s %-10s\n", "d", "n", "alpha", "trials", "failed",
                  "mean_queries", "stderr", "mean_rounds");
      for (const auto& c : j.at("cells")) {
        const std::string a = c.at("alpha").is_null() ? "-" : std::to_string(c.at("alpha").get<double>());
        if (c.at("queries").is_null()) {
          std::printf("%-4d %-8llu %-10s %-7llu %-7llu %-12s\n", c.at("d").get<int>(),
                      static_cast<unsigned long long>(c.at("n").get<std::uint64_t>()), a.c_str(),
                      static_cast<unsigned long long>(c.at("trials").get<std::uint64_t>()),
                      static_cast<unsigned long long>(c.at("failed").get<std::uint64_t>()), "invalid");
          continue;
        }
        std::printf("%-4d %-8llu %-10s %-7llu %-7llu %-12.3f %-10.3f %-10.3f\n", c.at("d").get<int>(),
                    static_cast<unsigned long long>(c.at("n").get<std::uint64_t>()), a.c_str(),
                    static_cast<unsigned long long>(c.at("trials").get<std::uint64_t>()),
                    static_cast<unsigned long long>(c.at("failed").get<std::uint64_t>()),
                    c.at("queries").at("mean").get<double>(), c.at("queries").at("stderr").get<double>(),
                    c.at("rounds").at("mean").get<double>());
      }
      std::cout << (passed ? "ALL PASS" : "FAILURES") << '\n';
      return passed ? 0 : kExitFail;
    }

    if (*vlb) {
      nlohmann::json grid = nlohmann::json::object();
      if (!grid_path.empty()) {
        std::ifstream f(grid_path);
        grid = nlohmann::json::parse(f);
      }
      if (!fixtures_dir.empty()) grid["fixtures_dir"] = fixtures_dir;
      ptf_report* rep = nullptr;
      const int st = ptf_verify_lower_bounds(grid.dump().c_str(), &rep);
      if (st != PTF_OK) return report_error(st, "verify-lower-bounds");
      return print_report(rep, vlb_out);
    }

    if (*ce) {
      std::vector<const char*> paths;
      for (const auto& p : agg_paths) paths.push_back(p.c_str());
      ptf_report* rep = nullptr;
      const int st = ptf_compare_entropy(paths.data(), paths.size(), &rep);
      if (st != PTF_OK) return report_error(st, "compare-entropy");
      return print_report(rep, ce_out);
    }

    if (*pb) {
      const auto ds = split_numbers<int>(pb_d, "--d");
      const auto ns = split_numbers<std::uint64_t>(pb_n, "--n");
      char* table = nullptr;
      const int st = ptf_print_bounds(ds.data(), ds.size(), ns.data(), ns.size(), &table);
      if (st != PTF_OK) return report_error(st, "print-bounds");
      std::cout << take(table);
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "ptf_lab: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "ptf_lab: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
